#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace fracmc {

/// Seeded xoshiro256** generator (Blackman and Vigna) with a portable
/// conversion to doubles in [0, 1). The 256-bit state is filled from the seed
/// with successive splitmix64 outputs, so every seed, including 0, is valid.
///
/// Substreams: the stream for index i under master seed s is seeded with
/// splitmix64(s + 0x9E3779B97F4A7C15 * (i + 1)). The solver uses one
/// substream per grid node.
///
/// Satisfies UniformRandomBitGenerator.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed);

    static Rng substream(std::uint64_t master_seed, std::uint64_t index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    result_type operator()() noexcept { return next_u64(); }

    /// Top 53 bits of one draw, scaled to [0, 1).
    double uniform01() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

enum class SamplerKind { Uniform, PowerLaw };

std::string_view to_string(SamplerKind kind) noexcept;

/// Sampling distribution for kernel integrals over [a, x).
/// PowerLaw draws from p(u) = alpha (x - u)^(alpha - 1) / (x - a)^alpha.
struct Sampler {
    SamplerKind kind = SamplerKind::Uniform;
    double alpha = 1.0;  ///< exponent parameter; only meaningful for PowerLaw

    static Sampler uniform() { return {}; }
    /// Throws InvalidArgument unless 0 < alpha <= 1.
    static Sampler power_law(double alpha);
};

/// One draw from [a, b). Never returns b.
double draw_uniform(Rng& rng, double a, double b);

/// One inverse-CDF draw u = x - (x - a) (1 - v)^(1/alpha) on [a, x). Never returns x.
double draw_powerlaw(Rng& rng, double a, double x, double alpha);

/// Throws InvalidArgument if a >= b or count == 0.
std::vector<double> sample_uniform(Rng& rng, double a, double b, std::size_t count);

/// Throws InvalidArgument if a >= x, alpha outside (0, 1], or count == 0.
std::vector<double> sample_powerlaw(Rng& rng, double a, double x, double alpha,
                                    std::size_t count);

}  // namespace fracmc
