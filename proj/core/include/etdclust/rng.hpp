#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace etdclust {

/// Purpose tags separating the random streams of one master seed.
enum class RngStream : std::uint64_t {
    matern_nu = 1,
    matern_beta,
    scenario_l,
    scenario_r,
    outlier_choice,
    sparse_choice,
    sparse_subset,
    noise,
    contam_r,
    contam_window,
    contam_intercept,
    contam_slope,
    contam_eps,
    contam_shift,
    generic,
};

/// Counter-based random generator. Every stream is addressed by
/// (seed, stream tag, index a, index b), so draws are reproducible
/// independently of evaluation order and thread count.
///
/// The generator is a splitmix64 walk from a mixed key; statistical
/// quality is adequate for simulation noise and subset sampling.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, RngStream stream, std::uint64_t a = 0, std::uint64_t b = 0)
        : state_(derive_key(seed, static_cast<std::uint64_t>(stream), a, b)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    /// Uniform on [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// Integer uniform on [0, n). Uses rejection to avoid modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    /// Standard normal via Box-Muller; pairs are cached.
    double next_normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        // u1 in (0,1] so the log is finite
        const double u1 = 1.0 - next_double();
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        cached_ = radius * std::sin(angle);
        has_cached_ = true;
        return radius * std::cos(angle);
    }

    /// Stateless key derivation, also used for per-cell experiment seeds.
    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t tag,
                                    std::uint64_t a, std::uint64_t b) {
        std::uint64_t h = mix(seed + 0x9e3779b97f4a7c15ull);
        h = mix(h ^ (tag + 0xbf58476d1ce4e5b9ull));
        h = mix(h ^ (a + 0x94d049bb133111ebull));
        h = mix(h ^ (b + 0x2545f4914f6cdd1dull));
        return h;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace etdclust
