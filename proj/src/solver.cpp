#include "fracmc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracmc/errors.hpp"
#include "fracmc/special_functions.hpp"

namespace fracmc {
namespace {

void check_grid(const Ivp& ivp, const Grid& grid) {
    ivp.validate();
    if (grid.a() != ivp.a || grid.b() != ivp.b) {
        throw InvalidArgument("solver: grid does not span the problem domain");
    }
}

double checked_rhs(const Ivp& ivp, double x, double y, std::size_t node) {
    const double f = ivp.rhs(x, y);
    if (!std::isfinite(f)) {
        throw SolverNodeError("solver: right-hand side is not finite at node " +
                                  std::to_string(node) + " (x = " + std::to_string(x) +
                                  ", y = " + std::to_string(y) + ")",
                              node);
    }
    return f;
}

double guarded_draw(Rng& rng, const Sampler& sampler, double a, double x, double min_gap) {
    auto draw = [&] {
        return sampler.kind == SamplerKind::PowerLaw ? draw_powerlaw(rng, a, x, sampler.alpha)
                                                     : draw_uniform(rng, a, x);
    };
    double u = draw();
    if (x - u < min_gap) {
        u = draw();
        if (x - u < min_gap) {
            u = x - min_gap;
        }
    }
    return u;
}

}  // namespace

void Ivp::validate() const {
    if (!rhs) {
        throw InvalidArgument("ivp: right-hand side is empty");
    }
    if (!alpha.in_unit_range()) {
        throw InvalidArgument("ivp: alpha must lie in (0, 1]");
    }
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw InvalidArgument("ivp: domain requires finite a < b");
    }
    if (!std::isfinite(y_a)) {
        throw InvalidArgument("ivp: initial value must be finite");
    }
}

Grid::Grid(double a, double b, std::size_t steps) : a_(a), b_(b), steps_(steps) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw InvalidArgument("grid: requires finite a < b");
    }
    if (steps == 0) {
        throw InvalidArgument("grid: step count L must be >= 1");
    }
    h_ = (b - a) / static_cast<double>(steps);
}

double Grid::node(std::size_t n) const noexcept {
    return n >= steps_ ? b_ : a_ + static_cast<double>(n) * h_;
}

std::string to_string(SampleBudget::Convention convention) {
    return convention == SampleBudget::Convention::PerCell ? "per-cell" : "per-node";
}

double eval_discretized(std::span<const SolutionNode> computed, const Grid& grid, double u) {
    const std::size_t n = computed.size();
    if (n == 0) {
        throw InvalidArgument("eval_discretized: no nodes computed");
    }
    const double upper = grid.node(n);
    if (!(u >= grid.a() && u < upper)) {
        throw InvalidArgument("eval_discretized: u = " + std::to_string(u) +
                              " outside [a, x_n)");
    }
    auto m = static_cast<std::size_t>(std::floor((u - grid.a()) / grid.h()));
    m = std::min(m, n - 1);
    // Repair off-by-one from rounding in (u - a) / h.
    if (m + 1 < n && u >= grid.node(m + 1)) {
        ++m;
    } else if (m > 0 && u < grid.node(m)) {
        --m;
    }
    return computed[m].y;
}

SolutionNode solve_mc_node(const Ivp& ivp, const Grid& grid,
                           std::span<const SolutionNode> prior, const McOptions& options) {
    const std::size_t n = prior.size();
    if (n == 0 || n > grid.steps()) {
        throw InvalidArgument("solve_mc_node: node index out of range");
    }
    const double alpha = ivp.alpha.value();
    const double x_n = grid.node(n);
    const double width = x_n - ivp.a;
    const std::size_t samples = options.budget.samples_at(n);
    if (samples == 0) {
        throw InvalidArgument("solve_mc_node: sample budget must be >= 1");
    }
    const double min_gap = kSingularityGapFraction * grid.h();
    const bool power_law = options.sampler.kind == SamplerKind::PowerLaw;
    const double kernel_exponent = power_law ? alpha - options.sampler.alpha : alpha - 1.0;

    Rng rng = Rng::substream(options.seed, n);
    MomentAccumulator moments;
    for (std::size_t i = 0; i < samples; ++i) {
        const double u = guarded_draw(rng, options.sampler, ivp.a, x_n, min_gap);
        const double f = checked_rhs(ivp, u, eval_discretized(prior, grid, u), n);
        const double g = kernel_exponent == 0.0 ? f : std::pow(x_n - u, kernel_exponent) * f;
        if (!std::isfinite(g)) {
            throw SolverNodeError("solver: kernel-weighted sample overflowed at node " +
                                      std::to_string(n),
                                  n);
        }
        moments.add(g);
    }

    const McEstimate integral =
        power_law ? make_estimate(std::pow(width, options.sampler.alpha) / options.sampler.alpha,
                                  moments, VarianceFormula::Sample)
                  : make_estimate(width, moments, options.variance);
    const McEstimate scaled = integral.scaled(1.0 / gamma(alpha));
    return {x_n, ivp.y_a + scaled.value, scaled.std_error, samples};
}

SolutionSeries solve_mc(const Ivp& ivp, const Grid& grid, const McOptions& options) {
    check_grid(ivp, grid);
    if (options.budget.count == 0) {
        throw InvalidArgument("solve_mc: sample budget must be >= 1");
    }
    SolutionSeries series;
    series.meta = {"mc",        options.seed,     grid.steps(),        options.budget,
                   options.sampler, options.variance, ivp.alpha.value()};
    series.nodes.reserve(grid.steps() + 1);
    series.nodes.push_back({ivp.a, ivp.y_a, 0.0, 0});
    for (std::size_t n = 1; n <= grid.steps(); ++n) {
        series.nodes.push_back(solve_mc_node(ivp, grid, series.nodes, options));
    }
    return series;
}

SolutionSeries solve_deterministic(const Ivp& ivp, const Grid& grid, CellRule rule) {
    check_grid(ivp, grid);
    const std::size_t steps = grid.steps();
    const double alpha = ivp.alpha.value();
    const double h = grid.h();
    const double inv_gamma = 1.0 / gamma(alpha);

    // Kernel mass of a cell whose far edge is k steps from the evaluation node.
    std::vector<double> weights(steps + 1, 0.0);
    for (std::size_t k = 1; k <= steps; ++k) {
        weights[k] = kernel_cell_weight(static_cast<double>(k) * h,
                                        static_cast<double>(k - 1) * h, alpha);
    }

    SolutionSeries series;
    series.meta.method = "deterministic";
    series.meta.steps = steps;
    series.meta.alpha = alpha;
    series.nodes.reserve(steps + 1);
    series.nodes.push_back({ivp.a, ivp.y_a, 0.0, 0});

    const double offset = rule == CellRule::Midpoint ? 0.5 * h : 0.0;
    std::vector<double> f_cells;
    f_cells.reserve(steps);
    for (std::size_t n = 1; n <= steps; ++n) {
        const std::size_t m_new = n - 1;
        f_cells.push_back(
            checked_rhs(ivp, grid.node(m_new) + offset, series.nodes[m_new].y, n));
        double sum = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            sum += weights[n - m] * f_cells[m];
        }
        series.nodes.push_back({grid.node(n), ivp.y_a + inv_gamma * sum, 0.0, 0});
    }
    return series;
}

std::vector<ErrorRow> solution_error(const SolutionSeries& series,
                                     const std::function<double(double)>& exact) {
    std::vector<ErrorRow> rows;
    rows.reserve(series.nodes.size());
    for (std::size_t n = 0; n < series.nodes.size(); ++n) {
        const SolutionNode& node = series.nodes[n];
        ErrorRow row;
        row.x = node.x;
        row.abs_error = std::abs(node.y - exact(node.x));
        if (n == 0 || row.abs_error == 0.0) {
            row.studentized = 0.0;
        } else if (node.std_error > 0.0) {
            row.studentized = row.abs_error / node.std_error;
        } else {
            row.studentized = std::numeric_limits<double>::infinity();
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace fracmc
