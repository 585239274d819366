#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfhj/plane.hpp"

namespace mfhj::cli {

/// Flat, insertion-ordered record. Key order is the column order of CSV output.
using Record = nlohmann::ordered_json;

enum class Format { json, csv };

/// Parameters shared by all point evaluations. Each command reads the
/// subset it needs and echoes exactly that subset into its record.
struct PointArgs {
    double x = 0.0;
    double t = 0.0;
    double beta_h = 0.0;
    int n = 0;
    int k_max = 4;
    double step = 1e-3;
    Side branch = Side::plus;
    std::optional<std::uint64_t> seed;
    int samples = 0;
    std::optional<double> t_lo;
    std::optional<double> t_hi;
};

/// Commands that can be evaluated at one point: "cw exact", "cw limit",
/// "cw shock", "cw critical-line", "cw identities", "sk rs", "sk caustic",
/// "sk finite".
bool is_point_command(const std::string& command);

/// True for commands whose record does not depend on x.
bool ignores_x(const std::string& command);

/// Writes command, version and echoed inputs into `out`, then the results
/// and `converged: true`. If evaluation throws, `out` keeps whatever was
/// written before the throw.
void evaluate_point(const std::string& command, const PointArgs& args, Record& out);

/// Marks a partial record as failed.
void mark_failed(Record& record, const std::string& message);

struct SweepSpec {
    std::string command;  // a point command
    double x_min = 0.0, x_max = 0.0;
    int n_x = 1;
    double t_min = 0.0, t_max = 0.0;
    int n_t = 1;
};

void validate(const SweepSpec& spec);

/// n points from lo to hi inclusive; a single point sits at lo.
std::vector<double> grid_axis(double lo, double hi, int n);

/// Rows ordered t-major then x. Rows are evaluated concurrently (except for
/// sk finite, which is already parallel inside) and failures are recorded
/// per row with `converged: false`.
std::vector<Record> run_sweep(const SweepSpec& spec, const PointArgs& base);

/// Convergence study: model is "cw-action", "cw-velocity" or "sk-identities".
/// The record holds the fitted slope and a "rows" array.
void evaluate_convergence(const std::string& model, const PointArgs& args,
                          std::span<const int> n_list, Record& out);

/// Floats with 17 significant digits, as in CSV output.
std::string format_double(double v);

/// Header from the union of keys (first-seen order), one line per record.
/// Array-valued "rows" fields are expanded into one line per element, with
/// the record's scalar fields repeated.
std::string to_csv(std::span<const Record> records);

std::string to_json(const Record& record);
std::string to_json(std::span<const Record> records);

} // namespace mfhj::cli
