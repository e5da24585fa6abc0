#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>

#include "fracmc/errors.hpp"
#include "fracmc/sampling.hpp"

namespace fracmc {

/// Result of a Monte Carlo estimator. std_error == sqrt(variance / n_samples).
struct McEstimate {
    double value = 0.0;
    double variance = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;

    /// Rescales by a constant factor: value * c, variance * c^2.
    McEstimate scaled(double c) const;
};

/// How the per-sample variance is formed from the sample moments, for an
/// estimate  I = s * <f>  with prefactor s (the interval width for
/// mean-value integration).
///
///   Printed: s * <f^2> - (s * <f>)^2
///   Sample:  s^2 * (<f^2> - <f>^2)
///
/// The two agree when s == 1. Printed is the classical textbook expression
/// and is the default for mean-value integration; on intervals wider than 1
/// it can go negative (it is clamped to zero), so Sample is the right choice
/// there. Importance-sampled estimators always use Sample.
enum class VarianceFormula { Printed, Sample };

/// Streaming first and second moments of an integrand sample.
class MomentAccumulator {
public:
    void add(double f) {
        ++count_;
        sum_ += f;
        sum_sq_ += f * f;
    }

    /// Combines two disjoint batches. Merging in a fixed order keeps
    /// results reproducible.
    void merge(const MomentAccumulator& other) {
        count_ += other.count_;
        sum_ += other.sum_;
        sum_sq_ += other.sum_sq_;
    }

    std::size_t count() const noexcept { return count_; }
    double sum() const noexcept { return sum_; }
    double sum_sq() const noexcept { return sum_sq_; }

private:
    std::size_t count_ = 0;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
};

/// Builds  value = prefactor * mean  and its variance per `formula`.
/// Negative variances from rounding (or from the Printed expression) clamp to 0.
McEstimate make_estimate(double prefactor, const MomentAccumulator& moments,
                         VarianceFormula formula);

using Integrand = std::function<double(double)>;

/// Mean-value estimate of the integral of f over [a, b) from n uniform draws.
/// Throws InvalidArgument for a >= b or n == 0, NonFiniteError if f returns
/// NaN or infinity.
McEstimate mc_integrate(const Integrand& f, double a, double b, std::size_t n, Rng& rng,
                        VarianceFormula formula = VarianceFormula::Printed);

/// Importance-sampled estimate of  int_a^x (x - u)^(alpha - 1) g(u) du  with
/// draws from the matching power-law density; the estimate is
/// (x - a)^alpha / (alpha n) * sum g(u_i). Constant g gives zero variance.
/// Throws InvalidArgument for a >= x, alpha outside (0, 1] or n == 0.
McEstimate mc_integrate_weighted(const Integrand& g, double a, double x, double alpha,
                                 std::size_t n, Rng& rng);

template <typename T>
concept UnitIntervalSource = requires(T& source) {
    { source.uniform01() } -> std::convertible_to<double>;
};

struct PiEstimate {
    McEstimate estimate;
    std::size_t hits = 0;
};

/// Hit-or-miss estimate of pi from n points uniform in [-1, 1]^2:
/// 4 * hits / n with binomial standard error 4 sqrt(p (1 - p) / n).
template <UnitIntervalSource Source>
PiEstimate estimate_pi(std::size_t n, Source& source) {
    if (n == 0) {
        throw InvalidArgument("estimate_pi: n must be >= 1");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double px = 2.0 * static_cast<double>(source.uniform01()) - 1.0;
        const double py = 2.0 * static_cast<double>(source.uniform01()) - 1.0;
        if (px * px + py * py <= 1.0) {
            ++hits;
        }
    }
    const double count = static_cast<double>(n);
    const double p = static_cast<double>(hits) / count;
    PiEstimate out;
    out.hits = hits;
    out.estimate.value = 4.0 * p;
    out.estimate.variance = 16.0 * p * (1.0 - p);
    out.estimate.std_error = std::sqrt(out.estimate.variance / count);
    out.estimate.n_samples = n;
    return out;
}

}  // namespace fracmc
