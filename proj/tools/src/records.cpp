#include "records.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <thread>

#include "mfhj/convergence.hpp"
#include "mfhj/cw_exact.hpp"
#include "mfhj/errors.hpp"
#include "mfhj/hj_limit.hpp"
#include "mfhj/sk_finite.hpp"
#include "mfhj/sk_rs.hpp"
#include "mfhj/version.hpp"

namespace mfhj::cli {
namespace {

void header(Record& r, const std::string& command) {
    r["command"] = command;
    r["version"] = version();
}

std::uint64_t require_seed(const PointArgs& a) {
    require(a.seed.has_value(), "--seed is required for finite-N SK commands");
    return *a.seed;
}

void put_estimate(Record& r, const std::string& key, const sk::Estimate& e) {
    r[key] = e.value;
    r[key + "_err"] = e.std_error;
}

void cw_exact(const PointArgs& a, Record& r) {
    r["x"] = a.x;
    r["t"] = a.t;
    r["n"] = a.n;
    const auto f = cw::exact_fields({a.x, a.t}, a.n, a.k_max);
    r["phi"] = f.phi;
    r["u"] = f.u;
    r["potential"] = f.potential;
    for (int k = 1; k <= a.k_max; ++k) r["moment_" + std::to_string(k)] = f.moment(k);
}

void cw_limit(const PointArgs& a, Record& r) {
    r["x"] = a.x;
    r["t"] = a.t;
    r["branch"] = to_string(a.branch);
    const auto s = hj::lax_action({a.x, a.t}, a.branch);
    r["y_star"] = s.y_star;
    r["phi"] = s.phi;
    r["u"] = s.u;
    r["on_shock"] = s.on_shock;
    r["solution_branch"] = hj::to_string(s.branch);
}

void cw_shock(const PointArgs& a, Record& r) {
    r["t"] = a.t;
    const auto j = hj::shock_jump(a.t);
    r["u_minus"] = j.u_minus;
    r["u_plus"] = j.u_plus;
    r["m_star"] = hj::spontaneous_magnetization(a.t);
}

void cw_critical_line(const PointArgs& a, Record& r) {
    r["t"] = a.t;
    r["x_c"] = hj::critical_line(a.t);
}

void cw_identities(const PointArgs& a, Record& r) {
    r["x"] = a.x;
    r["t"] = a.t;
    r["n"] = a.n;
    r["step"] = a.step;
    const PlanePoint p{a.x, a.t};
    const auto c = cw::conservation_residuals(p, a.n);
    r["r1"] = c.r1;
    r["r2"] = c.r2;
    r["r3"] = c.r3;
    const auto f = cw::exact_fields(p, a.n);
    r["potential"] = f.potential;
    r["n_potential"] = a.n * f.potential;
    // Central differences in t need t >= step; below that the PDE residuals are not defined.
    if (a.t >= a.step) {
        r["hj_residual"] = cw::hj_residual(p, a.n, a.step);
        r["continuity_residual"] = cw::continuity_residual(p, a.n, a.step);
    } else {
        r["hj_residual"] = nullptr;
        r["continuity_residual"] = nullptr;
    }
}

void sk_inputs(const PointArgs& a, Record& r) {
    r["x"] = a.x;
    r["t"] = a.t;
    r["beta_h"] = a.beta_h;
}

void sk_rs(const PointArgs& a, Record& r) {
    sk_inputs(a, r);
    const auto s = sk::rs_action({a.x, a.t, a.beta_h});
    r["q_bar"] = s.q_bar;
    r["u"] = s.u();
    r["y_star"] = s.y_star;
    r["phi_rs"] = s.phi_rs;
    if (s.pressure)
        r["pressure"] = *s.pressure;
    else
        r["pressure"] = nullptr;
    r["caustic_margin"] = s.caustic_margin;
    r["residual"] = s.residual;
}

void sk_caustic(const PointArgs& a, Record& r) {
    sk_inputs(a, r);
    const sk::SkParams p{a.x, a.t, a.beta_h};
    r["q_bar"] = sk::solve_qbar(p);
    r["margin"] = sk::caustic_margin(p);
    if (a.t_lo || a.t_hi) {
        require(a.t_lo && a.t_hi, "--t-lo and --t-hi must be given together");
        r["t_lo"] = *a.t_lo;
        r["t_hi"] = *a.t_hi;
        const auto root = sk::caustic_root(a.x, a.beta_h, *a.t_lo, *a.t_hi);
        if (root)
            r["root"] = *root;
        else
            r["root"] = nullptr;
    }
}

void sk_finite(const PointArgs& a, Record& r) {
    sk_inputs(a, r);
    r["n"] = a.n;
    r["samples"] = a.samples;
    const auto seed = require_seed(a);
    r["seed"] = seed;
    const auto m = sk::quenched_overlap_moments({a.x, a.t, a.beta_h}, a.n, a.samples, seed);
    put_estimate(r, "q1", m.q1);
    put_estimate(r, "q2", m.q2);
    put_estimate(r, "p1", m.p1);
    put_estimate(r, "p2", m.p2);
    put_estimate(r, "p3", m.p3);
    put_estimate(r, "p4", m.p4);
    put_estimate(r, "v_n", m.v_n);
}

using Evaluator = void (*)(const PointArgs&, Record&);

const std::map<std::string, Evaluator>& evaluators() {
    static const std::map<std::string, Evaluator> table = {
        {"cw exact", cw_exact},     {"cw limit", cw_limit},
        {"cw shock", cw_shock},     {"cw critical-line", cw_critical_line},
        {"cw identities", cw_identities}, {"sk rs", sk_rs},
        {"sk caustic", sk_caustic}, {"sk finite", sk_finite}};
    return table;
}

std::string csv_cell(const Record& v) {
    switch (v.type()) {
    case Record::value_t::null: return "";
    case Record::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case Record::value_t::number_integer: return std::to_string(v.get<std::int64_t>());
    case Record::value_t::number_unsigned: return std::to_string(v.get<std::uint64_t>());
    case Record::value_t::number_float: return format_double(v.get<double>());
    case Record::value_t::string: {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    }
    default: return v.dump();
    }
}

// One CSV line per record, or per element of its "rows" array.
std::vector<Record> flatten(std::span<const Record> records) {
    std::vector<Record> lines;
    for (const auto& r : records) {
        const auto rows = r.find("rows");
        if (rows == r.end() || !rows->is_array() || rows->empty()) {
            Record line = Record::object();
            for (const auto& [k, v] : r.items())
                if (!v.is_structured()) line[k] = v;
            lines.push_back(std::move(line));
            continue;
        }
        for (const auto& row : *rows) {
            Record line = Record::object();
            for (const auto& [k, v] : r.items())
                if (!v.is_structured()) line[k] = v;
            for (const auto& [k, v] : row.items()) line[k] = v;
            lines.push_back(std::move(line));
        }
    }
    return lines;
}

} // namespace

bool is_point_command(const std::string& command) {
    return evaluators().contains(command);
}

bool ignores_x(const std::string& command) {
    return command == "cw shock" || command == "cw critical-line";
}

void evaluate_point(const std::string& command, const PointArgs& args, Record& out) {
    const auto it = evaluators().find(command);
    require(it != evaluators().end(), "unknown command '" + command + "'");
    header(out, command);
    it->second(args, out);
    out["converged"] = true;
}

void mark_failed(Record& record, const std::string& message) {
    record["converged"] = false;
    record["error"] = message;
}

void validate(const SweepSpec& s) {
    require(is_point_command(s.command), "unknown sweep quantity '" + s.command + "'");
    require(s.n_x >= 1 && s.n_t >= 1, "grid sizes must be at least 1");
    require(std::isfinite(s.x_min) && std::isfinite(s.x_max) && std::isfinite(s.t_min) &&
                std::isfinite(s.t_max),
            "sweep ranges must be finite");
    require(s.x_min <= s.x_max && s.t_min <= s.t_max, "sweep ranges must be ordered");
    require(s.t_min >= 0.0, "t range must be non-negative");
}

std::vector<double> grid_axis(double lo, double hi, int n) {
    std::vector<double> axis(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        axis[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    if (n > 1) axis.back() = hi;
    return axis;
}

std::vector<Record> run_sweep(const SweepSpec& spec, const PointArgs& base) {
    validate(spec);
    const auto xs = ignores_x(spec.command) ? std::vector<double>{spec.x_min}
                                            : grid_axis(spec.x_min, spec.x_max, spec.n_x);
    const auto ts = grid_axis(spec.t_min, spec.t_max, spec.n_t);

    std::vector<PointArgs> points;
    for (double t : ts)
        for (double x : xs) {
            PointArgs a = base;
            a.x = x;
            a.t = t;
            points.push_back(a);
        }

    std::vector<Record> rows(points.size(), Record::object());
    auto eval_row = [&](std::size_t i) {
        try {
            evaluate_point(spec.command, points[i], rows[i]);
        } catch (const std::exception& e) {
            mark_failed(rows[i], e.what());
        }
    };

    const bool serial = spec.command == "sk finite";
    const unsigned workers =
        serial ? 1u : std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                      static_cast<unsigned>(points.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) eval_row(i);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return rows;
}

void evaluate_convergence(const std::string& model, const PointArgs& a,
                          std::span<const int> n_list, Record& out) {
    header(out, "convergence");
    out["model"] = model;
    ConvergenceReport report;
    if (model == "cw-action" || model == "cw-velocity") {
        out["x"] = a.x;
        out["t"] = a.t;
        report = model == "cw-action" ? cw_action_convergence({a.x, a.t}, n_list)
                                      : cw_velocity_convergence({a.x, a.t}, n_list);
    } else if (model == "sk-identities") {
        out["x"] = a.x;
        out["t"] = a.t;
        out["beta_h"] = a.beta_h;
        out["samples"] = a.samples;
        const auto seed = require_seed(a);
        out["seed"] = seed;
        report = sk_identity_convergence({a.x, a.t, a.beta_h}, n_list, a.samples, seed);
    } else {
        throw DomainError("unknown convergence model '" + model + "'");
    }
    out["slope"] = report.slope;
    Record rows = Record::array();
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const auto& row = report.rows[k];
        Record r;
        r["n"] = row.n;
        r["value"] = row.value;
        r["reference"] = row.reference;
        r["error"] = row.error;
        r["std_error"] = row.std_error;
        if (k == 0)
            r["ratio"] = nullptr;
        else
            r["ratio"] = report.ratios[k - 1];
        rows.push_back(std::move(r));
    }
    out["rows"] = std::move(rows);
    out["converged"] = true;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(std::span<const Record> records) {
    const auto lines = flatten(records);
    std::vector<std::string> columns;
    // Columns of successful lines come first so a failed first row does not reorder them.
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& line : lines) {
            const bool ok = line.value("converged", false);
            if ((pass == 0) != ok) continue;
            for (const auto& [k, v] : line.items())
                if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
        }

    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
    out += '\n';
    for (const auto& line : lines) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            const auto it = line.find(columns[c]);
            if (it != line.end()) out += csv_cell(*it);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Record& record) { return record.dump(2) + "\n"; }

std::string to_json(std::span<const Record> records) {
    Record array = Record::array();
    for (const auto& r : records) array.push_back(r);
    return array.dump(2) + "\n";
}

} // namespace mfhj::cli
