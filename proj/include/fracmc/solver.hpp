#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fracmc/frac_ops.hpp"
#include "fracmc/mc_integration.hpp"
#include "fracmc/sampling.hpp"

namespace fracmc {

/// Right-hand side f(x, y) of  D^alpha y = f(x, y).
using Rhs = std::function<double(double x, double y)>;

/// Caputo initial-value problem  D^alpha y = rhs(x, y), y(a) = y_a on [a, b].
struct Ivp {
    Rhs rhs;
    FracOrder alpha;
    double a = 0.0;
    double b = 1.0;
    double y_a = 0.0;

    /// Throws InvalidArgument unless 0 < alpha <= 1, a < b and y_a is finite.
    void validate() const;
};

/// Uniform grid x_n = a + n h, n = 0..L, with x_L == b exactly.
class Grid {
public:
    /// Throws InvalidArgument for a >= b or steps == 0.
    Grid(double a, double b, std::size_t steps);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    std::size_t steps() const noexcept { return steps_; }
    double h() const noexcept { return h_; }
    double node(std::size_t n) const noexcept;

private:
    double a_;
    double b_;
    std::size_t steps_;
    double h_;
};

/// Samples spent on node n. PerCell(k) gives node n k * n samples, so every
/// cell of [a, x_n) receives k on average; PerNode(N) gives N to every node.
struct SampleBudget {
    enum class Convention { PerNode, PerCell };

    Convention convention = Convention::PerCell;
    std::size_t count = 10;

    static SampleBudget per_cell(std::size_t k) { return {Convention::PerCell, k}; }
    static SampleBudget per_node(std::size_t n) { return {Convention::PerNode, n}; }

    std::size_t samples_at(std::size_t node) const noexcept {
        return convention == Convention::PerCell ? count * node : count;
    }
};

std::string to_string(SampleBudget::Convention convention);

struct SolutionNode {
    double x = 0.0;
    double y = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

struct SolutionMeta {
    std::string method;  ///< "mc" or "deterministic"
    std::uint64_t seed = 0;
    std::size_t steps = 0;
    SampleBudget budget;
    Sampler sampler;
    VarianceFormula variance = VarianceFormula::Printed;
    double alpha = 1.0;
};

struct SolutionSeries {
    std::vector<SolutionNode> nodes;  ///< L + 1 entries; nodes[0] = (a, y_a, 0)
    SolutionMeta meta;
};

/// Piecewise-constant left-value interpolant y^L(u) = y_m for x_m <= u < x_{m+1},
/// built from the nodes computed so far. With n = computed.size() the valid
/// range is [a, x_n); the last cell [x_{n-1}, x_n) maps to y_{n-1}.
/// Throws InvalidArgument outside that range or when nothing is computed yet.
double eval_discretized(std::span<const SolutionNode> computed, const Grid& grid, double u);

struct McOptions {
    SampleBudget budget = SampleBudget::per_cell(10);
    Sampler sampler = Sampler::uniform();
    std::uint64_t seed = 0;
    /// Variance convention for the uniform sampler; PowerLaw always uses Sample.
    VarianceFormula variance = VarianceFormula::Printed;
};

/// Samples closer to the upper endpoint than this fraction of h are redrawn
/// once and then clamped to x_n - gap.
inline constexpr double kSingularityGapFraction = 1e-12;

/// Computes node n = prior.size() of the Monte Carlo recurrence
///
///     y_n = y_a + 1/Gamma(alpha) int_a^{x_n} (x_n - u)^(alpha - 1) f(u, y^L(u)) du
///
/// with the integral estimated from the node's own substream
/// Rng::substream(seed, n). The result depends only on (seed, prior).
SolutionNode solve_mc_node(const Ivp& ivp, const Grid& grid,
                           std::span<const SolutionNode> prior, const McOptions& options);

/// Monte Carlo solution on every grid node, in increasing order.
/// Throws InvalidArgument for an invalid problem or a grid that does not span
/// [ivp.a, ivp.b]; SolverNodeError when the right-hand side is not finite.
SolutionSeries solve_mc(const Ivp& ivp, const Grid& grid, const McOptions& options = {});

/// Abscissa at which the deterministic solver samples f within a cell.
enum class CellRule {
    LeftNode,  ///< f(x_m, y_m); at alpha = 1 the left-rectangle Volterra iteration
    Midpoint,  ///< f(x_m + h/2, y_m)
};

/// Variance-free oracle on the same recurrence: each cell contributes
/// f(xi_m, y_m) [(x_n - x_m)^alpha - (x_n - x_{m+1})^alpha] / (alpha Gamma(alpha)).
SolutionSeries solve_deterministic(const Ivp& ivp, const Grid& grid,
                                   CellRule rule = CellRule::LeftNode);

struct ErrorRow {
    double x = 0.0;
    double abs_error = 0.0;
    /// abs_error / std_error; 0 at node 0 and wherever abs_error is 0,
    /// +infinity for a nonzero error with zero std_error.
    double studentized = 0.0;
};

std::vector<ErrorRow> solution_error(const SolutionSeries& series,
                                     const std::function<double(double)>& exact);

}  // namespace fracmc
