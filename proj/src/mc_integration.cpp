#include "fracmc/mc_integration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracmc {
namespace {

void check_finite(double value, double where, const char* who) {
    if (!std::isfinite(value)) {
        throw NonFiniteError(std::string(who) + ": integrand is not finite at u = " +
                                 std::to_string(where),
                             where);
    }
}

}  // namespace

McEstimate McEstimate::scaled(double c) const {
    return {value * c, variance * c * c, std_error * std::abs(c), n_samples};
}

McEstimate make_estimate(double prefactor, const MomentAccumulator& moments,
                         VarianceFormula formula) {
    const auto n = static_cast<double>(moments.count());
    const double mean = moments.sum() / n;
    const double mean_sq = moments.sum_sq() / n;

    McEstimate est;
    est.n_samples = moments.count();
    est.value = prefactor * mean;
    double variance = 0.0;
    switch (formula) {
        case VarianceFormula::Printed:
            variance = prefactor * mean_sq - est.value * est.value;
            break;
        case VarianceFormula::Sample:
            variance = prefactor * prefactor * (mean_sq - mean * mean);
            break;
    }
    est.variance = std::max(variance, 0.0);
    est.std_error = std::sqrt(est.variance) / std::sqrt(n);
    return est;
}

McEstimate mc_integrate(const Integrand& f, double a, double b, std::size_t n, Rng& rng,
                        VarianceFormula formula) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw InvalidArgument("mc_integrate: interval requires finite a < b");
    }
    if (n == 0) {
        throw InvalidArgument("mc_integrate: n must be >= 1");
    }
    MomentAccumulator moments;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = draw_uniform(rng, a, b);
        const double fu = f(u);
        check_finite(fu, u, "mc_integrate");
        moments.add(fu);
    }
    return make_estimate(b - a, moments, formula);
}

McEstimate mc_integrate_weighted(const Integrand& g, double a, double x, double alpha,
                                 std::size_t n, Rng& rng) {
    if (!std::isfinite(a) || !std::isfinite(x) || !(a < x)) {
        throw InvalidArgument("mc_integrate_weighted: interval requires finite a < x");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw InvalidArgument("mc_integrate_weighted: alpha must lie in (0, 1]");
    }
    if (n == 0) {
        throw InvalidArgument("mc_integrate_weighted: n must be >= 1");
    }
    MomentAccumulator moments;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = draw_powerlaw(rng, a, x, alpha);
        const double gu = g(u);
        check_finite(gu, u, "mc_integrate_weighted");
        moments.add(gu);
    }
    return make_estimate(std::pow(x - a, alpha) / alpha, moments, VarianceFormula::Sample);
}

}  // namespace fracmc
