#include "fracmc/analytic.hpp"

#include <array>
#include <cmath>

#include "fracmc/errors.hpp"
#include "fracmc/special_functions.hpp"

namespace fracmc {
namespace {

constexpr std::array<std::string_view, 2> kNames = {"power-law", "mittag-leffler"};

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw InvalidArgument("benchmark: alpha must lie in (0, 1]");
    }
}

}  // namespace

double exact_power_law(double alpha, double beta, double x) {
    require_alpha(alpha);
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw InvalidArgument("exact_power_law: beta must be finite and >= 0");
    }
    if (!(x >= 0.0)) {
        throw InvalidArgument("exact_power_law: x must be >= 0");
    }
    return std::pow(x, alpha + beta) / gamma(alpha + beta + 1.0);
}

double exact_mittag_leffler(double alpha, double x) {
    return mittag_leffler(alpha, x);
}

Benchmark::Benchmark(Kind kind, double alpha, double beta, double b)
    : kind_(kind), alpha_(alpha), beta_(beta), b_(b) {
    require_alpha(alpha);
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw InvalidArgument("benchmark: beta must be finite and >= 0");
    }
    if (!(b > 0.0) || !std::isfinite(b)) {
        throw InvalidArgument("benchmark: right endpoint must be finite and > 0");
    }
}

Benchmark Benchmark::power_law(double alpha, double beta, double b) {
    return {Kind::PowerLaw, alpha, beta, b};
}

Benchmark Benchmark::mittag_leffler(double alpha, double b) {
    return {Kind::MittagLeffler, alpha, 0.0, b};
}

std::string_view Benchmark::name() const noexcept {
    return kind_ == Kind::PowerLaw ? kNames[0] : kNames[1];
}

double Benchmark::initial_value() const noexcept {
    return kind_ == Kind::PowerLaw ? 0.0 : 1.0;
}

Rhs Benchmark::rhs() const {
    if (kind_ == Kind::PowerLaw) {
        return [beta = beta_](double x, double) { return std::pow(x, beta); };
    }
    return [](double, double y) { return y; };
}

double Benchmark::exact(double x) const {
    return kind_ == Kind::PowerLaw ? exact_power_law(alpha_, beta_, x)
                                   : exact_mittag_leffler(alpha_, x);
}

Ivp Benchmark::ivp() const {
    return Ivp{rhs(), FracOrder(alpha_), a(), b_, initial_value()};
}

std::span<const std::string_view> benchmark_names() {
    return kNames;
}

Benchmark make_benchmark(std::string_view name, double alpha, double beta, double b) {
    if (name == kNames[0]) {
        return Benchmark::power_law(alpha, beta, b);
    }
    if (name == kNames[1]) {
        return Benchmark::mittag_leffler(alpha, b);
    }
    throw InvalidArgument("unknown benchmark '" + std::string(name) + "'");
}

}  // namespace fracmc
