#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fracmc/errors.hpp"
#include "fracmc/mc_integration.hpp"

using namespace fracmc;

namespace {

// Always lands on the origin of [-1, 1]^2.
struct CenterSource {
    double uniform01() { return 0.5; }
};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

TEST_CASE("constant integrand") {
    Rng rng(3);
    const McEstimate unit = mc_integrate([](double) { return 2.5; }, 0.0, 1.0, 100, rng);
    CHECK(unit.value == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(unit.variance == 0.0);
    CHECK(unit.std_error == 0.0);
    CHECK(unit.n_samples == 100);

    const McEstimate wide = mc_integrate([](double) { return 2.5; }, 1.0, 4.0, 100, rng);
    CHECK(wide.value == doctest::Approx(7.5).epsilon(1e-14));
}

TEST_CASE("f(x) = x on [0, 1]") {
    Rng rng(42);
    const McEstimate est = mc_integrate([](double x) { return x; }, 0.0, 1.0, 100000, rng);
    CHECK(est.std_error > 0.0);
    CHECK(std::abs(est.value - 0.5) <= 3.0 * est.std_error);
    CHECK(est.std_error == doctest::Approx(std::sqrt(est.variance / 100000.0)));
}

TEST_CASE("f(x) = x^2 on [0, 2] under each variance convention") {
    auto square = [](double x) { return x * x; };
    Rng rng(42);
    const McEstimate sample =
        mc_integrate(square, 0.0, 2.0, 100000, rng, VarianceFormula::Sample);
    CHECK(sample.std_error > 0.0);
    CHECK(std::abs(sample.value - 8.0 / 3.0) <= 3.0 * sample.std_error);

    // The printed expression 2 <f^2> - (2 <f>)^2 is negative here (about
    // 6.4 - 7.1) and clamps to zero.
    Rng again(42);
    const McEstimate printed = mc_integrate(square, 0.0, 2.0, 100000, again);
    CHECK(printed.value == sample.value);
    CHECK(printed.variance == 0.0);
}

TEST_CASE("variance conventions agree on unit-width intervals") {
    MomentAccumulator m;
    for (double f : {0.1, 0.7, 1.3, 2.2}) {
        m.add(f);
    }
    const McEstimate p = make_estimate(1.0, m, VarianceFormula::Printed);
    const McEstimate s = make_estimate(1.0, m, VarianceFormula::Sample);
    CHECK(p.variance == doctest::Approx(s.variance).epsilon(1e-14));
    // Printed: s <f^2> - (s <f>)^2 with s = 0.5
    const McEstimate half = make_estimate(0.5, m, VarianceFormula::Printed);
    const double mean = (0.1 + 0.7 + 1.3 + 2.2) / 4.0;
    const double mean_sq = (0.01 + 0.49 + 1.69 + 4.84) / 4.0;
    CHECK(half.variance == doctest::Approx(0.5 * mean_sq - 0.25 * mean * mean));
}

TEST_CASE("accumulator merge equals sequential accumulation for batch boundaries") {
    MomentAccumulator all;
    MomentAccumulator left;
    MomentAccumulator right;
    for (int i = 0; i < 8; ++i) {
        const double f = 0.25 * i;  // exactly representable sums
        all.add(f);
        (i < 5 ? left : right).add(f);
    }
    left.merge(right);
    CHECK(left.count() == all.count());
    CHECK(left.sum() == all.sum());
    CHECK(left.sum_sq() == all.sum_sq());
}

TEST_CASE("weighted estimator") {
    SUBCASE("g = 1 integrates the kernel exactly with zero variance") {
        Rng rng(9);
        for (double alpha : {0.25, 0.5, 1.0}) {
            const McEstimate est =
                mc_integrate_weighted([](double) { return 1.0; }, 0.5, 2.0, alpha, 50, rng);
            CHECK(est.value == doctest::Approx(std::pow(1.5, alpha) / alpha).epsilon(1e-14));
            CHECK(est.variance == 0.0);
        }
    }
    SUBCASE("alpha = 1 reduces to ordinary integration") {
        Rng rng(42);
        const McEstimate est =
            mc_integrate_weighted([](double u) { return u; }, 0.0, 1.0, 1.0, 100000, rng);
        CHECK(std::abs(est.value - 0.5) <= 3.0 * est.std_error);
    }
    SUBCASE("alpha = 0.5, g(u) = u gives 4/3") {
        Rng rng(42);
        const McEstimate est =
            mc_integrate_weighted([](double u) { return u; }, 0.0, 1.0, 0.5, 100000, rng);
        CHECK(est.std_error > 0.0);
        CHECK(std::abs(est.value - 4.0 / 3.0) <= 3.0 * est.std_error);
    }
}

TEST_CASE("importance sampling removes the variance of a pure kernel integral") {
    const double alpha = 0.5;
    Rng uniform_rng(1);
    const McEstimate uniform = mc_integrate(
        [&](double u) { return std::pow(1.0 - u, alpha - 1.0); }, 0.0, 1.0, 1000, uniform_rng);
    Rng weighted_rng(1);
    const McEstimate weighted =
        mc_integrate_weighted([](double) { return 1.0; }, 0.0, 1.0, alpha, 1000, weighted_rng);
    CHECK(uniform.variance > 0.0);
    CHECK(weighted.variance == 0.0);
}

TEST_CASE("non-finite integrand aborts") {
    Rng rng(1);
    CHECK_THROWS_AS(mc_integrate([](double) { return std::nan(""); }, 0.0, 1.0, 10, rng),
                    NonFiniteError);
    CHECK_THROWS_AS(mc_integrate_weighted([](double) { return HUGE_VAL; }, 0.0, 1.0, 0.5, 10, rng),
                    NonFiniteError);
}

TEST_CASE("integration precondition errors") {
    Rng rng(1);
    auto f = [](double x) { return x; };
    CHECK_THROWS_AS(mc_integrate(f, 1.0, 0.0, 10, rng), InvalidArgument);
    CHECK_THROWS_AS(mc_integrate(f, 0.0, 1.0, 0, rng), InvalidArgument);
    CHECK_THROWS_AS(mc_integrate_weighted(f, 0.0, 1.0, 1.5, 10, rng), InvalidArgument);
    CHECK_THROWS_AS(mc_integrate_weighted(f, 0.0, 0.0, 0.5, 10, rng), InvalidArgument);
}

TEST_CASE("pi estimator") {
    SUBCASE("every point at the origin is a hit") {
        CenterSource source;
        const PiEstimate pi = estimate_pi(37, source);
        CHECK(pi.hits == 37);
        CHECK(pi.estimate.value == 4.0);
        CHECK(pi.estimate.std_error == 0.0);
    }
    SUBCASE("n = 1 is a single Bernoulli trial") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng rng(seed);
            const double v = estimate_pi(1, rng).estimate.value;
            CHECK((v == 0.0 || v == 4.0));
        }
    }
    SUBCASE("one million points cover pi") {
        Rng rng(2718);
        const PiEstimate pi = estimate_pi(1000000, rng);
        CHECK(std::abs(pi.estimate.value - std::numbers::pi) <= 3.0 * pi.estimate.std_error);
        const double p = static_cast<double>(pi.hits) / 1e6;
        CHECK(pi.estimate.std_error == doctest::Approx(4.0 * std::sqrt(p * (1 - p) / 1e6)));
    }
    SUBCASE("n = 0 rejected") {
        Rng rng(1);
        CHECK_THROWS_AS(estimate_pi(0, rng), InvalidArgument);
    }
}

TEST_CASE("two-sigma coverage over 200 seeds") {
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(1000 + seed);
        const McEstimate est =
            mc_integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 2000, rng);
        if (std::abs(est.value - (std::exp(1.0) - 1.0)) <= 2.0 * est.std_error) {
            ++covered;
        }
    }
    CHECK(static_cast<double>(covered) / 200.0 >= 0.90);
}

TEST_CASE("quadrupling n halves the median standard error") {
    auto median_se = [](std::size_t n) {
        std::vector<double> ses;
        for (std::uint64_t seed = 0; seed < 51; ++seed) {
            Rng rng(seed);
            ses.push_back(mc_integrate([](double x) { return x * x; }, 0.0, 1.0, n, rng).std_error);
        }
        return median(ses);
    };
    const double ratio = median_se(4000) / median_se(1000);
    CHECK(ratio == doctest::Approx(0.5).epsilon(0.2));
}
