#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spurion/audit.hpp"
#include "spurion/config.hpp"
#include "spurion/johansen.hpp"
#include "spurion/registry.hpp"
#include "spurion/time_series.hpp"
#include "spurion/unit_root.hpp"

namespace spurion {

inline constexpr const char* kEngineVersion = "spurion 1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Everything a pipeline run needs; built from a config file and/or CLI
/// flags, echoed verbatim into every report.
struct AnalysisConfig {
    std::vector<std::string> datasets;  ///< registry labels
    bool log = false;                   ///< natural-log transform first
    std::optional<int> window_from;
    std::optional<int> window_to;

    int adf_lags = 1;
    bool auto_lags = false;  ///< pick lags by criterion up to max_lag
    int max_lag = 4;
    Criterion criterion = Criterion::AIC;
    int pp_bandwidth = 1;
    bool auto_bandwidth = false;  ///< floor(4*(T/100)^(2/9))

    VecmSpec vecm;
    bool auto_lag_p = false;  ///< AIC over VAR(1..5)
    double level = 0.05;
    bool force = false;  ///< proceed past a failed I(1) screen (recorded)

    std::int64_t n_trials = 1000;
    double walk_mu = -0.2;
    double walk_sigma = 0.7;
    double walk_y0 = 0.0;
    std::uint64_t seed = 0;
    int threads = 0;

    static AnalysisConfig from_config(const KeyValueConfig& kv);
    nlohmann::json echo() const;
};

/// Per-series unit-root screening: ADF and PP in all three deterministic
/// cases, on the levels and on the first differences.
struct SeriesStationarity {
    std::string label;
    std::string unit;
    int start_index = 0;
    Eigen::Index length = 0;
    std::vector<UnitRootResult> levels;       ///< ADF zm/sm/tr then PP zm/sm/tr
    std::vector<UnitRootResult> differences;  ///< same order
    bool consistent_with_i1 = false;
    std::string verdict;
};

struct PipelineReport {
    AnalysisConfig config;
    std::vector<SeriesStationarity> stationarity;
    std::optional<JohansenResult> johansen;
    std::optional<UnitRootResult> residual_adf;
    std::vector<std::string> notes;
};

/// Loads a labeled dataset and applies the configured transform chain.
TimeSeries load_configured_series(const DatasetRegistry& reg, const AnalysisConfig& cfg,
                                  const std::string& label);

/// The screening step: both tests, all three cases, levels and differences.
/// The series is consistent with I(1) iff no level combination rejects at
/// cfg.level and every difference combination rejects.
PipelineReport run_stationarity(const DatasetRegistry& reg, const AnalysisConfig& cfg);

/// Full workflow: screening, then the trace test (refused with
/// ErrorKind::Refusal when a verdict fails and cfg.force is unset), then an
/// ADF check on the cointegrating residual when rank >= 1.
PipelineReport run_cointegration(const DatasetRegistry& reg, const AnalysisConfig& cfg);

/// Monte Carlo audit of the first configured dataset as the target.
AuditReport run_audit(const DatasetRegistry& reg, const AnalysisConfig& cfg);

nlohmann::json to_json(const UnitRootResult& r);
nlohmann::json to_json(const JohansenResult& r);
nlohmann::json to_json(const AuditReport& r, bool include_trials = true);
nlohmann::json to_json(const PipelineReport& r);

/// Wraps a payload in the versioned report envelope. `generated_at` is the
/// one field excluded from determinism comparisons.
nlohmann::json report_envelope(nlohmann::json payload, const std::string& kind);

void write_json(const nlohmann::json& j, const std::string& path);

}  // namespace spurion
