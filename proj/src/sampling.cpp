#include "fracmc/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "fracmc/errors.hpp"

namespace fracmc {
namespace {

void require_interval(double lo, double hi, const char* who) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw InvalidArgument(std::string(who) + ": interval requires finite lower < upper");
    }
}

void require_count(std::size_t count, const char* who) {
    if (count == 0) {
        throw InvalidArgument(std::string(who) + ": count must be >= 1");
    }
}

void require_powerlaw_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw InvalidArgument(std::string(who) + ": power-law exponent must lie in (0, 1]");
    }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) {
        word = splitmix64(x);
        x += 0x9E3779B97F4A7C15ULL;
    }
}

Rng Rng::substream(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(splitmix64(master_seed + 0x9E3779B97F4A7C15ULL * (index + 1)));
}

std::string_view to_string(SamplerKind kind) noexcept {
    switch (kind) {
        case SamplerKind::Uniform: return "uniform";
        case SamplerKind::PowerLaw: return "powerlaw";
    }
    return "unknown";
}

Sampler Sampler::power_law(double alpha) {
    require_powerlaw_alpha(alpha, "Sampler::power_law");
    return {SamplerKind::PowerLaw, alpha};
}

double draw_uniform(Rng& rng, double a, double b) {
    const double u = a + (b - a) * rng.uniform01();
    return u < b ? u : std::nextafter(b, a);
}

double draw_powerlaw(Rng& rng, double a, double x, double alpha) {
    const double v = rng.uniform01();
    const double u = x - (x - a) * std::pow(1.0 - v, 1.0 / alpha);
    if (u >= x) {
        return std::nextafter(x, a);
    }
    return std::max(u, a);
}

std::vector<double> sample_uniform(Rng& rng, double a, double b, std::size_t count) {
    require_interval(a, b, "sample_uniform");
    require_count(count, "sample_uniform");
    std::vector<double> out(count);
    std::generate(out.begin(), out.end(), [&] { return draw_uniform(rng, a, b); });
    return out;
}

std::vector<double> sample_powerlaw(Rng& rng, double a, double x, double alpha,
                                    std::size_t count) {
    require_interval(a, x, "sample_powerlaw");
    require_powerlaw_alpha(alpha, "sample_powerlaw");
    require_count(count, "sample_powerlaw");
    std::vector<double> out(count);
    std::generate(out.begin(), out.end(), [&] { return draw_powerlaw(rng, a, x, alpha); });
    return out;
}

}  // namespace fracmc
