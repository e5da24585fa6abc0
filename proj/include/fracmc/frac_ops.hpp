#pragma once

#include <cstddef>
#include <functional>
#include <variant>

#include "fracmc/mc_integration.hpp"
#include "fracmc/sampling.hpp"

namespace fracmc {

/// Fractional order alpha > 0 with integer companion n = floor(alpha) + 1.
/// The operators below accept only 0 < alpha <= 1 (so n = 1, or n = 2 at alpha = 1).
class FracOrder {
public:
    /// Throws InvalidArgument for non-finite or non-positive alpha.
    explicit FracOrder(double alpha);

    double value() const noexcept { return alpha_; }
    int n() const noexcept { return n_; }

    /// True when 0 < alpha <= 1.
    bool in_unit_range() const noexcept { return alpha_ <= 1.0; }

private:
    double alpha_;
    int n_;
};

/// Exact kernel mass  int (x - u)^(alpha - 1) du  over a cell whose far and
/// near edges sit at distances `far` > `near` >= 0 from x:
/// (far^alpha - near^alpha) / alpha, evaluated without cancellation.
double kernel_cell_weight(double far, double near, double alpha);

/// Product midpoint rule on `cells` equal subintervals: the kernel is
/// integrated exactly per cell and f is sampled at the cell midpoint.
struct Deterministic {
    std::size_t cells = 1000;
};

/// Monte Carlo path. Uniform uses mean-value integration of the kernel-weighted
/// integrand; PowerLaw(beta) draws from the density proportional to
/// (x - u)^(beta - 1) and weights each sample by the remaining kernel factor,
/// which is exactly 1 when beta equals the operator order.
struct MonteCarlo {
    std::size_t samples = 1000;
    Sampler sampler;
    std::reference_wrapper<Rng> rng;
};

using QuadratureMethod = std::variant<Deterministic, MonteCarlo>;

/// Left Riemann-Liouville integral
///     J^alpha f(x) = 1/Gamma(alpha) int_a^x (x - u)^(alpha - 1) f(u) du.
/// The deterministic path reports zero variance and n_samples = cells.
///
/// Throws InvalidArgument for a >= x, alpha outside (0, 1] or a zero
/// cell/sample count; NonFiniteError if f returns NaN or infinity.
McEstimate rl_integral(const Integrand& f, double a, double x, FracOrder alpha,
                       const QuadratureMethod& method);

/// Left Caputo derivative of order 0 < alpha < 1, computed as J^(1-alpha) f'
/// from the caller-supplied classical derivative f'. With a PowerLaw sampler,
/// an exponent of 1 - alpha matches the kernel.
McEstimate caputo_derivative(const Integrand& f_prime, double a, double x, FracOrder alpha,
                             const QuadratureMethod& method);

/// Riemann-Liouville derivative recovered from the Caputo one (n = 1):
///     caputo_value + f(a) (x - a)^(-alpha) / Gamma(1 - alpha).
/// Throws InvalidArgument for x <= a or alpha outside (0, 1).
double rl_from_caputo(double caputo_value, double f_at_a, double a, double x, FracOrder alpha);

}  // namespace fracmc
