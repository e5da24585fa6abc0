#pragma once

#include <span>
#include <string>
#include <string_view>

#include "fracmc/solver.hpp"

namespace fracmc {

/// Solution of D^alpha y = x^beta, y(0) = 0:  x^(alpha + beta) / Gamma(alpha + beta + 1).
/// Throws InvalidArgument for alpha outside (0, 1], beta < 0 or x < 0.
double exact_power_law(double alpha, double beta, double x);

/// Solution of D^alpha y = y, y(0) = 1: the Mittag-Leffler series in x.
double exact_mittag_leffler(double alpha, double x);

/// A benchmark problem on [0, b] with a closed-form solution.
class Benchmark {
public:
    enum class Kind { PowerLaw, MittagLeffler };

    /// D^alpha y = x^beta, y(0) = 0.
    static Benchmark power_law(double alpha, double beta, double b = 1.0);
    /// D^alpha y = y, y(0) = 1.
    static Benchmark mittag_leffler(double alpha, double b = 1.0);

    Kind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept;
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double a() const noexcept { return 0.0; }
    double b() const noexcept { return b_; }
    double initial_value() const noexcept;

    Rhs rhs() const;
    double exact(double x) const;
    Ivp ivp() const;

private:
    Benchmark(Kind kind, double alpha, double beta, double b);

    Kind kind_;
    double alpha_;
    double beta_;
    double b_;
};

/// Registry names accepted by make_benchmark: "power-law", "mittag-leffler".
std::span<const std::string_view> benchmark_names();

/// Throws InvalidArgument for an unknown name or invalid parameters.
/// beta is ignored by mittag-leffler.
Benchmark make_benchmark(std::string_view name, double alpha, double beta, double b = 1.0);

}  // namespace fracmc
