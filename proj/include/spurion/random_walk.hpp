#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "spurion/time_series.hpp"

namespace spurion {

/// Deterministic standard-normal stream.
///
/// Engine is std::mt19937_64 (algorithm fixed by the C++ standard, so
/// sequences are identical on every platform). Deviates come from the
/// trigonometric Box-Muller transform; each refill consumes exactly two
/// engine outputs, mapped to uniforms as (x >> 11) * 2^-53, and returns the
/// cosine variate first, then the cached sine variate.
class GaussianGenerator {
  public:
    explicit GaussianGenerator(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform01();  // in (0, 1]; keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = kTwoPi * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    /// Raw engine output, exposed for test vectors.
    std::uint64_t raw() { return eng_(); }

  private:
    static constexpr double kTwoPi = 6.283185307179586476925286766559;
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 eng_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

/// Parameters of a Gaussian random walk y_t = y_{t-1} + e_t,
/// e_t ~ N(mu, sigma^2), y_0 given.
struct RandomWalkSpec {
    Eigen::Index T = 2;
    double mu = 0.0;
    double sigma = 1.0;
    double y0 = 0.0;
    std::uint64_t seed = 0;
};

/// Generates the walk; identical spec gives identical output everywhere.
TimeSeries generate_random_walk(const RandomWalkSpec& spec, int start_index = 0,
                                const std::string& label = "random_walk");

/// SplitMix64 mix of (master_seed, trial_index): reproducible per-trial
/// seeds independent of execution order.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

}  // namespace spurion
