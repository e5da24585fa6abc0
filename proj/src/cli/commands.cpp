#include "fracmc/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "fracmc/analytic.hpp"
#include "fracmc/cli/output.hpp"
#include "fracmc/errors.hpp"
#include "fracmc/mc_integration.hpp"
#include "fracmc/solver.hpp"
#include "fracmc/special_functions.hpp"

#ifndef FRACMC_VERSION
#define FRACMC_VERSION "0.0.0"
#endif

namespace fracmc::cli {
namespace {

using json = nlohmann::ordered_json;

/// Validation failure naming the offending flag.
class UsageError : public InvalidArgument {
public:
    UsageError(const std::string& field, const std::string& message)
        : InvalidArgument(field + ": " + message) {}
};

struct NamedRhs {
    const char* description;
    std::function<Rhs(double beta)> make;
};

const std::map<std::string, NamedRhs>& rhs_catalog() {
    static const std::map<std::string, NamedRhs> catalog = {
        {"zero", {"f = 0", [](double) { return Rhs([](double, double) { return 0.0; }); }}},
        {"y", {"f = y", [](double) { return Rhs([](double, double y) { return y; }); }}},
        {"-y", {"f = -y", [](double) { return Rhs([](double, double y) { return -y; }); }}},
        {"x^beta",
         {"f = x^beta",
          [](double beta) { return Rhs([beta](double x, double) { return std::pow(x, beta); }); }}},
        {"y(1-y)",
         {"f = y (1 - y)",
          [](double) { return Rhs([](double, double y) { return y * (1.0 - y); }); }}},
    };
    return catalog;
}

struct OutputOptions {
    std::string format = "csv";
    std::string path;
};

struct SolveOptions {
    std::string problem = "power-law";
    std::string rhs;
    double alpha = 1.0;
    double beta = 0.0;
    double y0 = 0.0;
    bool y0_given = false;
    std::size_t steps = 100;
    std::optional<std::size_t> per_cell;
    std::optional<std::size_t> per_node;
    std::uint64_t seed = 1;
    std::string sampler = "uniform";
    std::string method = "mc";
    double from = 0.0;
    double to = 1.0;
    OutputOptions output;
};

struct ConvergenceOptions {
    std::string sweep = "samples";
    std::vector<std::size_t> values;
    std::size_t replicates = 1;
};

struct PiOptions {
    std::size_t n = 0;
    std::uint64_t seed = 1;
    OutputOptions output;
};

struct MlOptions {
    double alpha = 1.0;
    std::vector<double> xs;
    double tol = 1e-12;
    std::size_t max_terms = 500;
    OutputOptions output;
};

/// A fully validated solve request.
struct Problem {
    Ivp ivp;
    std::optional<Benchmark> benchmark;
    std::string label;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.path, "Write output to PATH instead of stdout");
}

void add_solve_flags(CLI::App* cmd, SolveOptions& opts) {
    cmd->add_option("--problem", opts.problem, "Benchmark problem: power-law | mittag-leffler")
        ->capture_default_str();
    cmd->add_option("--rhs", opts.rhs, "Custom right-hand side: zero | y | -y | x^beta | y(1-y)");
    cmd->add_option("--alpha", opts.alpha, "Fractional order in (0, 1]")->capture_default_str();
    cmd->add_option("--beta", opts.beta, "Exponent of the power-law right-hand side")
        ->capture_default_str();
    cmd->add_option("--y0", opts.y0, "Initial value for a custom right-hand side");
    cmd->add_option("--L", opts.steps, "Number of grid steps")->capture_default_str();
    auto* cell = cmd->add_option("--samples-per-cell", opts.per_cell,
                                 "Node n draws k*n samples (default 10)");
    auto* node = cmd->add_option("--samples-per-node", opts.per_node,
                                 "Every node draws N samples");
    cell->excludes(node);
    cmd->add_option("--seed", opts.seed, "Master seed")->capture_default_str();
    cmd->add_option("--sampler", opts.sampler, "Sampling density")
        ->check(CLI::IsMember({"uniform", "powerlaw"}))
        ->capture_default_str();
    cmd->add_option("--method", opts.method, "Solver")
        ->check(CLI::IsMember({"mc", "deterministic"}))
        ->capture_default_str();
    cmd->add_option("--from", opts.from, "Left endpoint a")->capture_default_str();
    cmd->add_option("--to", opts.to, "Right endpoint b")->capture_default_str();
    add_output_flags(cmd, opts.output);
}

SampleBudget budget_of(const SolveOptions& opts) {
    if (opts.per_node) {
        return SampleBudget::per_node(*opts.per_node);
    }
    return SampleBudget::per_cell(opts.per_cell.value_or(10));
}

Problem validate(const SolveOptions& opts) {
    if (!(opts.alpha > 0.0 && opts.alpha <= 1.0)) {
        throw UsageError("--alpha", "must lie in (0, 1]");
    }
    if (!std::isfinite(opts.beta) || opts.beta < 0.0) {
        throw UsageError("--beta", "must be finite and >= 0");
    }
    if (opts.steps < 1) {
        throw UsageError("--L", "must be >= 1");
    }
    if (budget_of(opts).count < 1) {
        throw UsageError(opts.per_node ? "--samples-per-node" : "--samples-per-cell",
                         "must be >= 1");
    }
    if (!std::isfinite(opts.from) || !std::isfinite(opts.to) || !(opts.from < opts.to)) {
        throw UsageError("--to", "requires finite --from < --to");
    }

    if (!opts.rhs.empty()) {
        const auto& catalog = rhs_catalog();
        const auto it = catalog.find(opts.rhs);
        if (it == catalog.end()) {
            throw UsageError("--rhs", "unknown right-hand side '" + opts.rhs + "'");
        }
        if (!std::isfinite(opts.y0)) {
            throw UsageError("--y0", "must be finite");
        }
        return {Ivp{it->second.make(opts.beta), FracOrder(opts.alpha), opts.from, opts.to, opts.y0},
                std::nullopt, "custom:" + opts.rhs};
    }

    if (opts.y0_given) {
        throw UsageError("--y0", "only valid with --rhs; benchmarks fix their initial value");
    }
    if (opts.from != 0.0) {
        throw UsageError("--from", "benchmark problems start at 0");
    }
    const auto names = benchmark_names();
    if (std::find(names.begin(), names.end(), opts.problem) == names.end()) {
        throw UsageError("--problem", "unknown benchmark '" + opts.problem + "'");
    }
    Benchmark bench = make_benchmark(opts.problem, opts.alpha, opts.beta, opts.to);
    return {bench.ivp(), bench, std::string(bench.name())};
}

McOptions mc_options(const SolveOptions& opts) {
    McOptions mc;
    mc.budget = budget_of(opts);
    mc.seed = opts.seed;
    mc.sampler = opts.sampler == "powerlaw" ? Sampler::power_law(opts.alpha) : Sampler::uniform();
    return mc;
}

SolutionSeries run_solver(const Problem& problem, const Grid& grid, const SolveOptions& opts) {
    if (opts.method == "deterministic") {
        return solve_deterministic(problem.ivp, grid);
    }
    return solve_mc(problem.ivp, grid, mc_options(opts));
}

json solve_meta(const Problem& problem, const SolveOptions& opts) {
    const SampleBudget budget = budget_of(opts);
    json meta;
    meta["version"] = version();
    meta["problem"] = problem.label;
    meta["method"] = opts.method;
    meta["alpha"] = opts.alpha;
    meta["beta"] = opts.beta;
    meta["from"] = problem.ivp.a;
    meta["to"] = problem.ivp.b;
    meta["y0"] = problem.ivp.y_a;
    meta["L"] = opts.steps;
    meta["seed"] = opts.seed;
    if (opts.method == "deterministic") {
        meta["cell_rule"] = "left-node";
    } else {
        meta["sampler"] = opts.sampler;
        meta["samples_convention"] = to_string(budget.convention);
        meta["samples"] = budget.count;
        meta["variance"] = opts.sampler == "powerlaw" ? "sample" : "printed";
        meta["rng"] = "xoshiro256**/splitmix64-substream-per-node";
    }
    return meta;
}

void emit(const OutputOptions& output, const std::string& text, std::ostream& out) {
    if (output.path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(output.path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open output file '" + output.path + "'");
    }
    file << text;
    if (!file.flush()) {
        throw std::runtime_error("failed writing output file '" + output.path + "'");
    }
}

void cmd_solve(const SolveOptions& opts, std::ostream& out) {
    const Problem problem = validate(opts);
    const Grid grid(problem.ivp.a, problem.ivp.b, opts.steps);
    const SolutionSeries series = run_solver(problem, grid, opts);

    std::vector<SolveRow> rows;
    rows.reserve(series.nodes.size());
    for (std::size_t n = 0; n < series.nodes.size(); ++n) {
        const SolutionNode& node = series.nodes[n];
        SolveRow row{n, node.x, node.y, node.std_error, std::nullopt, std::nullopt};
        if (problem.benchmark) {
            row.exact = problem.benchmark->exact(node.x);
            row.abs_error = std::abs(node.y - *row.exact);
        }
        rows.push_back(row);
    }

    std::ostringstream text;
    if (opts.output.format == "json") {
        write_solve_json(text, rows, solve_meta(problem, opts));
    } else {
        write_solve_csv(text, rows);
    }
    emit(opts.output, text.str(), out);
}

double median(std::vector<double> values) {
    if (values.empty()) {
        return 0.0;
    }
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                     values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) {
        return upper;
    }
    return 0.5 * (upper + *std::max_element(values.begin(),
                                            values.begin() + static_cast<std::ptrdiff_t>(mid)));
}

// Per sweep point: max_abs_err is the median over replicates of each run's
// largest nodal error; median_stderr pools std_error over nodes 1..L of
// every replicate. Replicate r runs with seed + r.
void cmd_convergence(const SolveOptions& base, const ConvergenceOptions& conv,
                     std::ostream& out) {
    if (conv.values.empty()) {
        throw UsageError("--values", "sweep list must not be empty");
    }
    if (conv.replicates < 1) {
        throw UsageError("--replicates", "must be >= 1");
    }
    if (!base.rhs.empty()) {
        throw UsageError("--rhs", "convergence needs a benchmark with a known solution");
    }
    const bool sweep_l = conv.sweep == "L";

    std::vector<std::vector<std::string>> table;
    json rows = json::array();
    for (const std::size_t value : conv.values) {
        if (value < 1) {
            throw UsageError("--values", "sweep entries must be >= 1");
        }
        SolveOptions opts = base;
        if (sweep_l) {
            opts.steps = value;
        } else if (opts.per_node) {
            opts.per_node = value;
        } else {
            opts.per_cell = value;
        }
        const Problem problem = validate(opts);
        const Grid grid(problem.ivp.a, problem.ivp.b, opts.steps);

        std::vector<double> max_errors;
        std::vector<double> stderrs;
        for (std::size_t r = 0; r < conv.replicates; ++r) {
            opts.seed = base.seed + r;
            const SolutionSeries series = run_solver(problem, grid, opts);
            double worst = 0.0;
            for (std::size_t n = 1; n < series.nodes.size(); ++n) {
                const SolutionNode& node = series.nodes[n];
                worst = std::max(worst, std::abs(node.y - problem.benchmark->exact(node.x)));
                stderrs.push_back(node.std_error);
            }
            max_errors.push_back(worst);
        }
        const double max_abs_err = median(max_errors);
        const double median_stderr = median(stderrs);
        table.push_back({std::to_string(value), format_number(max_abs_err),
                         format_number(median_stderr)});
        json row;
        row[sweep_l ? "L" : "N"] = value;
        row["max_abs_err"] = max_abs_err;
        row["median_stderr"] = median_stderr;
        rows.push_back(std::move(row));
    }

    std::ostringstream text;
    if (base.output.format == "json") {
        const Problem problem = validate(base);
        json doc;
        json meta = solve_meta(problem, base);
        meta["sweep"] = conv.sweep;
        meta["replicates"] = conv.replicates;
        doc["meta"] = std::move(meta);
        doc["rows"] = std::move(rows);
        text << doc.dump(2) << '\n';
    } else {
        write_csv_table(text, {sweep_l ? "L" : "N", "max_abs_err", "median_stderr"}, table);
    }
    emit(base.output, text.str(), out);
}

void cmd_pi(const PiOptions& opts, std::ostream& out) {
    if (opts.n < 1) {
        throw UsageError("--n", "must be >= 1");
    }
    Rng rng(opts.seed);
    const PiEstimate pi = estimate_pi(opts.n, rng);
    std::ostringstream text;
    if (opts.output.format == "json") {
        json doc;
        doc["meta"] = {{"version", version()}, {"seed", opts.seed}, {"rng", "xoshiro256**"}};
        doc["n"] = opts.n;
        doc["hits"] = pi.hits;
        doc["estimate"] = pi.estimate.value;
        doc["stderr"] = pi.estimate.std_error;
        text << doc.dump(2) << '\n';
    } else {
        write_csv_table(text, {"n", "hits", "estimate", "stderr"},
                        {{std::to_string(opts.n), std::to_string(pi.hits),
                          format_number(pi.estimate.value),
                          format_number(pi.estimate.std_error)}});
    }
    emit(opts.output, text.str(), out);
}

void cmd_ml(const MlOptions& opts, std::ostream& out) {
    MittagLefflerParams params;
    params.tol = opts.tol;
    params.max_terms = opts.max_terms;
    std::vector<std::vector<std::string>> table;
    json rows = json::array();
    for (const double x : opts.xs) {
        const double value = mittag_leffler(opts.alpha, x, params);
        table.push_back({format_number(x), format_number(value)});
        rows.push_back({{"x", x}, {"value", value}});
    }
    std::ostringstream text;
    if (opts.output.format == "json") {
        json doc;
        doc["meta"] = {{"version", version()},
                       {"alpha", opts.alpha},
                       {"tol", opts.tol},
                       {"max_terms", opts.max_terms}};
        doc["rows"] = std::move(rows);
        text << doc.dump(2) << '\n';
    } else {
        write_csv_table(text, {"x", "value"}, table);
    }
    emit(opts.output, text.str(), out);
}

}  // namespace

std::string version() {
    return FRACMC_VERSION;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo solver for Caputo fractional initial-value problems", "fracmc"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    PiOptions pi_opts;
    auto* pi = app.add_subcommand("pi", "Hit-or-miss estimate of pi");
    pi->add_option("--n", pi_opts.n, "Number of random points")->required();
    pi->add_option("--seed", pi_opts.seed, "Seed")->capture_default_str();
    add_output_flags(pi, pi_opts.output);

    SolveOptions solve_opts;
    auto* solve = app.add_subcommand("solve", "Solve a benchmark or catalog problem");
    add_solve_flags(solve, solve_opts);

    SolveOptions conv_base;
    ConvergenceOptions conv_opts;
    auto* conv = app.add_subcommand("convergence", "Sweep sample budget or grid size");
    add_solve_flags(conv, conv_base);
    conv->add_option("--sweep", conv_opts.sweep, "What to sweep: samples | L")
        ->check(CLI::IsMember({"samples", "L"}))
        ->capture_default_str();
    conv->add_option("--values", conv_opts.values, "Comma-separated sweep values")
        ->delimiter(',')
        ->required();
    conv->add_option("--replicates", conv_opts.replicates, "Independent seeds per point")
        ->capture_default_str();

    MlOptions ml_opts;
    auto* ml = app.add_subcommand("ml", "Evaluate the Mittag-Leffler series");
    ml->add_option("--alpha", ml_opts.alpha, "Order (> 0)")->required();
    ml->add_option("--x", ml_opts.xs, "Argument(s), comma-separated")->delimiter(',')->required();
    ml->add_option("--tol", ml_opts.tol, "Relative truncation tolerance")->capture_default_str();
    ml->add_option("--max-terms", ml_opts.max_terms, "Series term cap")->capture_default_str();
    add_output_flags(ml, ml_opts.output);

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("fracmc");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitSuccess;
    } catch (const CLI::CallForVersion&) {
        out << version() << '\n';
        return kExitSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (pi->parsed()) {
            cmd_pi(pi_opts, out);
        } else if (solve->parsed()) {
            solve_opts.y0_given = solve->count("--y0") > 0;
            cmd_solve(solve_opts, out);
        } else if (conv->parsed()) {
            conv_base.y0_given = conv->count("--y0") > 0;
            cmd_convergence(conv_base, conv_opts, out);
        } else if (ml->parsed()) {
            cmd_ml(ml_opts, out);
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitSuccess;
}

}  // namespace fracmc::cli
