#include "fracmc/frac_ops.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fracmc/errors.hpp"
#include "fracmc/special_functions.hpp"

namespace fracmc {
namespace {

void require_interval(double a, double x, const char* who) {
    if (!std::isfinite(a) || !std::isfinite(x) || !(a < x)) {
        throw InvalidArgument(std::string(who) + ": interval requires finite a < x");
    }
}

void require_open_unit_order(FracOrder alpha, const char* who) {
    if (!(alpha.value() < 1.0)) {
        throw InvalidArgument(std::string(who) + ": order must lie in (0, 1)");
    }
}

// Cell weights on a grid of unit spacing: unit[k - 1] is the kernel mass of
// the cell whose far edge is k steps from x. On spacing h every weight scales
// by h^alpha. Nested operators (a Caputo derivative inside an RL integral)
// alternate between two orders, so a few entries are kept per thread.
std::shared_ptr<const std::vector<double>> unit_cell_weights(double alpha, std::size_t cells) {
    thread_local std::map<std::pair<std::uint64_t, std::size_t>,
                          std::shared_ptr<const std::vector<double>>>
        cache;
    const auto key = std::make_pair(std::bit_cast<std::uint64_t>(alpha), cells);
    if (auto it = cache.find(key); it != cache.end()) {
        return it->second;
    }
    if (cache.size() >= 8) {
        cache.clear();
    }
    auto unit = std::make_shared<std::vector<double>>(cells);
    for (std::size_t k = 1; k <= cells; ++k) {
        (*unit)[k - 1] =
            kernel_cell_weight(static_cast<double>(k), static_cast<double>(k - 1), alpha);
    }
    cache.emplace(key, unit);
    return unit;
}

McEstimate product_midpoint(const Integrand& f, double a, double x, double alpha,
                            std::size_t cells) {
    if (cells == 0) {
        throw InvalidArgument("rl_integral: cell count must be >= 1");
    }
    const double h = (x - a) / static_cast<double>(cells);
    // Held by value: a nested call may evict this entry from the cache.
    const auto unit_holder = unit_cell_weights(alpha, cells);
    const std::vector<double>& unit = *unit_holder;
    double sum = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
        const double mid = a + (static_cast<double>(j) + 0.5) * h;
        const double fm = f(mid);
        if (!std::isfinite(fm)) {
            throw NonFiniteError("rl_integral: integrand is not finite at u = " +
                                     std::to_string(mid),
                                 mid);
        }
        sum += unit[cells - j - 1] * fm;
    }
    McEstimate est;
    est.value = std::pow(h, alpha) * sum / gamma(alpha);
    est.n_samples = cells;
    return est;
}

McEstimate monte_carlo(const Integrand& f, double a, double x, double alpha,
                       const MonteCarlo& mc) {
    if (mc.sampler.kind == SamplerKind::PowerLaw) {
        const double beta = mc.sampler.alpha;
        const double residual = alpha - beta;
        auto weighted = [&](double u) {
            return residual == 0.0 ? f(u) : std::pow(x - u, residual) * f(u);
        };
        return mc_integrate_weighted(weighted, a, x, beta, mc.samples, mc.rng.get())
            .scaled(1.0 / gamma(alpha));
    }
    auto kernel_weighted = [&](double u) { return std::pow(x - u, alpha - 1.0) * f(u); };
    return mc_integrate(kernel_weighted, a, x, mc.samples, mc.rng.get())
        .scaled(1.0 / gamma(alpha));
}

}  // namespace

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0)) {
        throw InvalidArgument("fractional order must be positive and finite");
    }
    n_ = static_cast<int>(std::floor(alpha)) + 1;
}

double kernel_cell_weight(double far, double near, double alpha) {
    if (alpha == 1.0) {
        return far - near;
    }
    if (near <= 0.0) {
        return std::pow(far, alpha) / alpha;
    }
    // far^a - near^a = near^a (exp(a log(1 + (far - near)/near)) - 1)
    return std::pow(near, alpha) * std::expm1(alpha * std::log1p((far - near) / near)) / alpha;
}

McEstimate rl_integral(const Integrand& f, double a, double x, FracOrder alpha,
                       const QuadratureMethod& method) {
    require_interval(a, x, "rl_integral");
    if (!alpha.in_unit_range()) {
        throw InvalidArgument("rl_integral: order must lie in (0, 1]");
    }
    if (const auto* det = std::get_if<Deterministic>(&method)) {
        return product_midpoint(f, a, x, alpha.value(), det->cells);
    }
    return monte_carlo(f, a, x, alpha.value(), std::get<MonteCarlo>(method));
}

McEstimate caputo_derivative(const Integrand& f_prime, double a, double x, FracOrder alpha,
                             const QuadratureMethod& method) {
    require_open_unit_order(alpha, "caputo_derivative");
    return rl_integral(f_prime, a, x, FracOrder(1.0 - alpha.value()), method);
}

double rl_from_caputo(double caputo_value, double f_at_a, double a, double x, FracOrder alpha) {
    require_interval(a, x, "rl_from_caputo");
    require_open_unit_order(alpha, "rl_from_caputo");
    return caputo_value +
           f_at_a * std::pow(x - a, -alpha.value()) / gamma(1.0 - alpha.value());
}

}  // namespace fracmc
