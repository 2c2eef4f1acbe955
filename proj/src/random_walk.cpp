#include "spurion/random_walk.hpp"

namespace spurion {

TimeSeries generate_random_walk(const RandomWalkSpec& spec, int start_index,
                                const std::string& label) {
    if (spec.T < 2) throw_usage("generate_random_walk: T must be >= 2");
    if (spec.sigma < 0.0) throw_usage("generate_random_walk: sigma must be >= 0");
    GaussianGenerator gen(spec.seed);
    Eigen::VectorXd v(spec.T);
    v[0] = spec.y0;
    for (Eigen::Index t = 1; t < spec.T; ++t)
        v[t] = v[t - 1] + spec.mu + spec.sigma * gen.next();
    TimeSeries s = TimeSeries::make(label, start_index, std::move(v));
    s.provenance = "simulated: mu=" + std::to_string(spec.mu) + " sigma=" +
                   std::to_string(spec.sigma) + " seed=" + std::to_string(spec.seed);
    return s;
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    // SplitMix64 finalizer over master + (index+1) * golden-ratio increment.
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (trial_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace spurion
