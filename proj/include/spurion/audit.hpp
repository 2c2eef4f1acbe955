#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spurion/johansen.hpp"
#include "spurion/random_walk.hpp"
#include "spurion/time_series.hpp"
#include "spurion/unit_root.hpp"

namespace spurion {

/// Wilson score interval for a binomial proportion.
struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};

WilsonInterval wilson_ci95(std::int64_t successes, std::int64_t trials);

struct TrialRecord {
    std::uint64_t seed = 0;
    double trace = 0.0;  ///< r = 0 trace statistic
    double p = 1.0;
    bool rejected = false;
};

/// Outcome of a Monte Carlo run: how often the configured test rejected.
struct AuditReport {
    std::string target_label;
    std::int64_t n_trials = 0;
    RandomWalkSpec walk;  ///< per-trial template; seed field unused
    VecmSpec test;
    double level = 0.05;
    std::int64_t rejections = 0;
    double false_positive_rate = 0.0;
    WilsonInterval wilson95;
    std::vector<TrialRecord> per_trial;
    std::int64_t screen_failures = 0;  ///< walks resampled after failing the I(1) screen
    std::uint64_t master_seed = 0;
    bool target_screen_overridden = false;
};

/// Pairs the target with freshly generated walks and counts how often the
/// trace test rejects rank 0. Each generated walk must itself pass the I(1)
/// screen (ADF single-mean and trend non-rejection at `level`); failures are
/// resampled and counted. The target must pass the same screen unless
/// `override_target_screen` is set, which is recorded in the report.
///
/// Trials use derive_trial_seed(master_seed, i) sub-streams, are independent
/// of execution order, and may run on `threads` workers (0 = hardware).
AuditReport spurious_audit(const TimeSeries& target, const RandomWalkSpec& walk,
                           std::int64_t n_trials, const VecmSpec& test, double level,
                           std::uint64_t master_seed, bool override_target_screen = false,
                           int threads = 0);

enum class Dgp {
    IndependentWalks,   ///< two walks with the template's mu/sigma
    DriftedWalks,       ///< alias of IndependentWalks kept for config clarity
    CointegratedPair,   ///< x a driftless walk, y = beta*x + AR(phi) noise
    StationaryAR,       ///< single AR(phi) series, tested with ADF
};

/// Parameters for size_power_experiment. For CointegratedPair the counted
/// event is "rank 1 selected"; for StationaryAR it is ADF rejection at
/// `level`; otherwise it is rejection of rank 0.
struct ExperimentConfig {
    Dgp dgp = Dgp::IndependentWalks;
    Eigen::Index T = 150;
    double mu = 0.0;
    double sigma = 1.0;
    double beta = 2.0;   ///< CointegratedPair
    double phi = 0.5;    ///< AR coefficient
    VecmSpec test;       ///< Johansen DGPs
    DeterministicSpec adf_spec = DeterministicSpec::SingleMean;
    int adf_lags = 0;
    double level = 0.05;
};

AuditReport size_power_experiment(const ExperimentConfig& cfg, std::int64_t n_trials,
                                  std::uint64_t master_seed, int threads = 0);

}  // namespace spurion
