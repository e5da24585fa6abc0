#include "fracmc/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fracmc/errors.hpp"

namespace fracmc {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

// Valid for x >= 0.5.
double lanczos_gamma(double x) {
    const double z = x - 1.0;
    double series = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
        series += kLanczosCoeffs[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    // Split the power so t^(z+0.5) does not overflow before exp(-t) shrinks it.
    const double half_pow = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half_pow * (half_pow * std::exp(-t)) * series;
}

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double term) {
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            carry += (sum - t) + term;
        } else {
            carry += (term - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

}  // namespace

double gamma(double x) {
    if (std::isnan(x)) {
        return x;
    }
    if (x <= 0.0 && x == std::floor(x)) {
        throw PoleError("gamma: pole at non-positive integer " + std::to_string(x));
    }
    if (x >= 1.0 && x <= 21.0 && x == std::floor(x)) {
        double factorial = 1.0;  // exact in double up to 20!
        for (double k = 2.0; k < x; k += 1.0) {
            factorial *= k;
        }
        return factorial;
    }
    if (x < 0.5) {
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
    }
    return lanczos_gamma(x);
}

double mittag_leffler(double alpha, double x, const MittagLefflerParams& params) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw InvalidArgument("mittag_leffler: alpha must be positive and finite");
    }
    if (!(params.tol > 0.0) || params.max_terms < 1) {
        throw InvalidArgument("mittag_leffler: tol must be > 0 and max_terms >= 1");
    }
    if (!std::isfinite(x)) {
        throw InvalidArgument("mittag_leffler: x must be finite");
    }
    if (x == 0.0) {
        return 1.0;
    }

    const double log_abs_x = std::log(std::abs(x));
    const bool alternating = x < 0.0;

    auto term = [&](std::size_t k) {
        const double ak = alpha * static_cast<double>(k);
        double magnitude;
        if (ak + 1.0 <= 170.0) {
            magnitude = std::exp(ak * log_abs_x) / gamma(ak + 1.0);
        } else {
            magnitude = std::exp(ak * log_abs_x - std::lgamma(ak + 1.0));
        }
        return (alternating && (k % 2 == 1)) ? -magnitude : magnitude;
    };

    CompensatedSum acc;
    acc.add(1.0);
    for (std::size_t k = 1; k < params.max_terms; ++k) {
        const double next = term(k);
        if (!std::isfinite(next)) {
            throw ConvergenceError("mittag_leffler: series term overflowed");
        }
        const double partial = acc.value();
        if (std::abs(next) < params.tol * std::abs(partial)) {
            return partial;
        }
        acc.add(next);
    }
    throw ConvergenceError("mittag_leffler: no convergence within " +
                           std::to_string(params.max_terms) + " terms");
}

}  // namespace fracmc
