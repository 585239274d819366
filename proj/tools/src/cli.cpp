#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "mfhj/errors.hpp"
#include "mfhj/version.hpp"
#include "records.hpp"

namespace mfhj::cli {
namespace {

struct Options {
    PointArgs point;
    std::string branch = "plus";
    std::string format = "json";
    std::string out_path;
    std::optional<double> t_lo, t_hi;
    std::optional<std::uint64_t> seed;

    std::string model;
    std::string quantity;
    SweepSpec sweep;
    std::vector<int> n_list;
};

void add_output(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out_path, "Write output to this file instead of stdout");
}

void add_x(CLI::App* cmd, Options& o, bool required = true) {
    cmd->add_option("--x", o.point.x, "Field coordinate x")->required(required);
}

void add_t(CLI::App* cmd, Options& o, bool required = true) {
    cmd->add_option("--t", o.point.t, "Interaction coordinate t >= 0")->required(required);
}

void add_n(CLI::App* cmd, Options& o, bool required = true) {
    cmd->add_option("--n", o.point.n, "System size")->required(required);
}

void add_beta_h(CLI::App* cmd, Options& o) {
    cmd->add_option("--beta-h", o.point.beta_h, "External field term beta*h")->capture_default_str();
}

void add_branch(CLI::App* cmd, Options& o) {
    cmd->add_option("--branch", o.branch, "Branch on the shock line x = 0, t > 1")
        ->check(CLI::IsMember({"plus", "minus"}))
        ->capture_default_str();
}

void add_finite(CLI::App* cmd, Options& o, bool seed_required) {
    cmd->add_option("--samples", o.point.samples, "Number of disorder samples")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Disorder seed")->required(seed_required);
}

std::string render(const std::vector<Record>& records, bool as_array, const std::string& format) {
    if (format == "csv") return to_csv(records);
    return as_array ? to_json(std::span<const Record>(records)) : to_json(records.front());
}

bool emit(const std::string& text, const Options& o, std::ostream& out, std::ostream& err) {
    if (o.out_path.empty()) {
        out << text;
        out.flush();
        return true;
    }
    std::ofstream file(o.out_path, std::ios::binary);
    file << text;
    if (!file) {
        err << "mfhj: cannot write '" << o.out_path << "'\n";
        return false;
    }
    return true;
}

std::string sweep_command(const std::string& model, const std::string& quantity) {
    if (model == "cw") {
        require(!quantity.empty(), "--quantity is required for the cw model");
        return "cw " + quantity;
    }
    if (model == "sk-rs") return "sk " + (quantity.empty() ? std::string("rs") : quantity);
    require(quantity.empty() || quantity == "finite", "sk-finite sweeps only support --quantity finite");
    return "sk finite";
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    o.point.samples = 1000;
    o.sweep.n_x = 1;
    o.sweep.n_t = 1;

    CLI::App app{"Mean-field spin glasses as Hamilton-Jacobi problems", "mfhj"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    auto* cw = app.add_subcommand("cw", "Curie-Weiss model")->require_subcommand(1);
    auto* cw_exact = cw->add_subcommand("exact", "Exact finite-N action, velocity and moments");
    add_x(cw_exact, o);
    add_t(cw_exact, o);
    add_n(cw_exact, o);
    cw_exact->add_option("--k-max", o.point.k_max, "Highest moment reported")->capture_default_str();
    auto* cw_limit = cw->add_subcommand("limit", "Lax-Oleinik solution of the limit problem");
    add_x(cw_limit, o);
    add_t(cw_limit, o);
    add_branch(cw_limit, o);
    auto* cw_shock = cw->add_subcommand("shock", "One-sided velocities across the shock");
    add_t(cw_shock, o);
    auto* cw_critical = cw->add_subcommand("critical-line", "Fold boundary x_c(t)");
    add_t(cw_critical, o);
    auto* cw_identities = cw->add_subcommand("identities", "Conservation and PDE residuals");
    add_x(cw_identities, o);
    add_t(cw_identities, o);
    add_n(cw_identities, o);
    cw_identities->add_option("--step", o.point.step, "Finite-difference step")->capture_default_str();

    auto* sk = app.add_subcommand("sk", "Sherrington-Kirkpatrick model")->require_subcommand(1);
    auto* sk_rs = sk->add_subcommand("rs", "Replica-symmetric solution");
    add_x(sk_rs, o);
    add_t(sk_rs, o);
    add_beta_h(sk_rs, o);
    auto* sk_caustic = sk->add_subcommand("caustic", "Caustic margin, optionally its root in t");
    add_x(sk_caustic, o);
    add_t(sk_caustic, o);
    add_beta_h(sk_caustic, o);
    sk_caustic->add_option("--t-lo", o.t_lo, "Lower end of the root search in t");
    sk_caustic->add_option("--t-hi", o.t_hi, "Upper end of the root search in t");
    auto* sk_finite = sk->add_subcommand("finite", "Quenched overlap moments by exact enumeration");
    add_x(sk_finite, o);
    add_t(sk_finite, o);
    add_beta_h(sk_finite, o);
    add_n(sk_finite, o);
    add_finite(sk_finite, o, true);

    std::vector<CLI::App*> point_commands = {cw_exact, cw_limit,  cw_shock,   cw_critical,
                                             cw_identities, sk_rs, sk_caustic, sk_finite};
    for (auto* cmd : point_commands) add_output(cmd, o);

    auto* sweep = app.add_subcommand("sweep", "Evaluate a quantity on a rectangular (x, t) grid");
    sweep->add_option("--model", o.model, "Model")
        ->required()
        ->check(CLI::IsMember({"cw", "sk-rs", "sk-finite"}));
    sweep->add_option("--quantity", o.quantity,
                      "cw: exact|limit|shock|critical-line|identities; sk-rs: rs|caustic");
    sweep->add_option("--x-min", o.sweep.x_min)->capture_default_str();
    sweep->add_option("--x-max", o.sweep.x_max)->capture_default_str();
    sweep->add_option("--n-x", o.sweep.n_x)->capture_default_str();
    sweep->add_option("--t-min", o.sweep.t_min)->capture_default_str();
    sweep->add_option("--t-max", o.sweep.t_max)->capture_default_str();
    sweep->add_option("--n-t", o.sweep.n_t)->capture_default_str();
    add_n(sweep, o, false);
    add_beta_h(sweep, o);
    add_branch(sweep, o);
    add_finite(sweep, o, false);
    sweep->add_option("--k-max", o.point.k_max)->capture_default_str();
    sweep->add_option("--step", o.point.step)->capture_default_str();
    add_output(sweep, o);

    auto* conv = app.add_subcommand("convergence", "Finite-N error against the limit, with slope");
    conv->add_option("--model", o.model, "Study")
        ->required()
        ->check(CLI::IsMember({"cw-action", "cw-velocity", "sk-identities"}));
    add_x(conv, o, false);
    add_t(conv, o, false);
    add_beta_h(conv, o);
    conv->add_option("--n-list", o.n_list, "Comma-separated system sizes")->required()->delimiter(',');
    add_finite(conv, o, false);
    add_output(conv, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* leaf = &app;
        while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
        out << leaf->help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << version() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "mfhj: " << e.what() << '\n';
        return kExitValidation;
    }

    o.point.branch = o.branch == "minus" ? Side::minus : Side::plus;
    o.point.seed = o.seed;
    o.point.t_lo = o.t_lo;
    o.point.t_hi = o.t_hi;

    std::vector<Record> records;
    bool as_array = false;
    int code = kExitOk;
    try {
        if (sweep->parsed()) {
            o.sweep.command = sweep_command(o.model, o.quantity);
            validate(o.sweep);
            require(o.sweep.command != "sk finite" || o.seed.has_value(),
                    "--seed is required for finite-N SK commands");
            records = run_sweep(o.sweep, o.point);
            as_array = true;
            const bool all_ok = std::all_of(records.begin(), records.end(), [](const Record& r) {
                return r.value("converged", false);
            });
            if (!all_ok) code = kExitNotConverged;
        } else {
            records.emplace_back(Record::object());
            try {
                if (conv->parsed()) {
                    evaluate_convergence(o.model, o.point, o.n_list, records.back());
                } else {
                    auto* parent = cw->parsed() ? cw : sk;
                    const auto leaf = parent->get_subcommands().front();
                    evaluate_point(parent->get_name() + " " + leaf->get_name(), o.point, records.back());
                }
            } catch (const ConvergenceError& e) {
                mark_failed(records.back(), e.what());
                err << "mfhj: " << e.what() << '\n';
                code = kExitNotConverged;
            }
        }
    } catch (const std::invalid_argument& e) {
        err << "mfhj: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "mfhj: " << e.what() << '\n';
        return 1;
    }

    if (!emit(render(records, as_array, o.format), o, out, err)) return kExitValidation;
    return code;
}

} // namespace mfhj::cli
