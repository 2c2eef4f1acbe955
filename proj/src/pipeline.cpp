#include "spurion/pipeline.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>

namespace spurion {

namespace {

Criterion parse_criterion(const std::string& s) {
    if (s == "aic" || s == "AIC") return Criterion::AIC;
    if (s == "bic" || s == "BIC") return Criterion::BIC;
    throw_usage("unknown criterion '" + s + "' (aic or bic)");
}

JohansenDet parse_det(const std::string& s) {
    if (s == "noint") return JohansenDet::NoIntercept;
    if (s == "const") return JohansenDet::UnrestrictedConstant;
    throw_usage("unknown deterministic case '" + s + "' (noint or const)");
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

constexpr DeterministicSpec kSpecs[3] = {DeterministicSpec::ZeroMean,
                                         DeterministicSpec::SingleMean,
                                         DeterministicSpec::Trend};

std::vector<UnitRootResult> test_battery(const TimeSeries& s, const AnalysisConfig& cfg) {
    std::vector<UnitRootResult> out;
    const int bw = cfg.auto_bandwidth ? default_bandwidth(s.values.size()) : cfg.pp_bandwidth;
    for (const auto spec : kSpecs) {
        const int lags = cfg.auto_lags ? select_lag(s, spec, cfg.max_lag, cfg.criterion)
                                       : cfg.adf_lags;
        out.push_back(adf_test(s, spec, lags));
    }
    for (const auto spec : kSpecs) out.push_back(pp_test(s, spec, bw));
    return out;
}

SeriesStationarity screen_series(const TimeSeries& s, const AnalysisConfig& cfg) {
    SeriesStationarity out;
    out.label = s.label;
    out.unit = s.unit;
    out.start_index = s.start_index;
    out.length = s.values.size();
    out.levels = test_battery(s, cfg);
    out.differences = test_battery(first_difference(s), cfg);

    bool level_rejects = false;
    std::string reject_detail;
    for (const auto& r : out.levels) {
        if (r.p_value < cfg.level) {
            level_rejects = true;
            reject_detail = std::string(r.test == UnitRootTest::ADF ? "ADF" : "PP") + " " +
                            to_string(r.spec);
        }
    }
    bool all_diff_reject = true;
    for (const auto& r : out.differences)
        if (!(r.p_value < cfg.level)) all_diff_reject = false;

    out.consistent_with_i1 = !level_rejects && all_diff_reject;
    if (level_rejects)
        out.verdict = "not I(1): levels reject the unit root under " + reject_detail;
    else if (!all_diff_reject)
        out.verdict = "inconclusive: first differences do not reject everywhere";
    else
        out.verdict = "consistent with I(1)";
    return out;
}

}  // namespace

AnalysisConfig AnalysisConfig::from_config(const KeyValueConfig& kv) {
    AnalysisConfig cfg;
    for (const auto& key : {"series.a", "series.b", "series.c", "series.d"}) {
        if (kv.has(key)) cfg.datasets.push_back(kv.get(key));
    }
    cfg.log = kv.get("series.transform", "none") == "log";
    if (kv.has("window.from")) cfg.window_from = kv.get_int("window.from", 0);
    if (kv.has("window.to")) cfg.window_to = kv.get_int("window.to", 0);

    const std::string lags = kv.get("unitroot.lags", "1");
    if (lags == "auto") {
        cfg.auto_lags = true;
    } else {
        cfg.adf_lags = kv.get_int("unitroot.lags", 1);
    }
    cfg.max_lag = kv.get_int("unitroot.max_lag", 4);
    cfg.criterion = parse_criterion(kv.get("unitroot.criterion", "aic"));
    const std::string bw = kv.get("unitroot.pp_bandwidth", "1");
    if (bw == "auto") {
        cfg.auto_bandwidth = true;
    } else {
        cfg.pp_bandwidth = kv.get_int("unitroot.pp_bandwidth", 1);
    }

    const std::string lag_p = kv.get("johansen.lag_p", "1");
    if (lag_p == "auto") {
        cfg.auto_lag_p = true;
    } else {
        cfg.vecm.lag_p = kv.get_int("johansen.lag_p", 1);
    }
    cfg.vecm.det = parse_det(kv.get("johansen.det", "const"));
    cfg.level = kv.get_double("johansen.level", 0.05);
    cfg.force = kv.get("johansen.force", "false") == "true";

    cfg.n_trials = kv.get_int("audit.n_trials", 1000);
    cfg.walk_mu = kv.get_double("audit.mu", -0.2);
    cfg.walk_sigma = kv.get_double("audit.sigma", 0.7);
    cfg.walk_y0 = kv.get_double("audit.y0", 0.0);
    if (kv.has("audit.seed")) {
        const std::string s = kv.get("audit.seed");
        std::uint64_t out = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw_usage("config key 'audit.seed': expected unsigned integer, got '" + s + "'");
        cfg.seed = out;
    }
    cfg.threads = kv.get_int("audit.threads", 0);
    return cfg;
}

nlohmann::json AnalysisConfig::echo() const {
    nlohmann::json j;
    j["datasets"] = datasets;
    j["log"] = log;
    if (window_from) j["window_from"] = *window_from;
    if (window_to) j["window_to"] = *window_to;
    j["adf_lags"] = auto_lags ? nlohmann::json("auto") : nlohmann::json(adf_lags);
    j["max_lag"] = max_lag;
    j["criterion"] = criterion == Criterion::AIC ? "aic" : "bic";
    j["pp_bandwidth"] = auto_bandwidth ? nlohmann::json("auto") : nlohmann::json(pp_bandwidth);
    j["lag_p"] = auto_lag_p ? nlohmann::json("auto") : nlohmann::json(vecm.lag_p);
    j["det"] = to_string(vecm.det);
    j["level"] = level;
    j["force"] = force;
    j["n_trials"] = n_trials;
    j["walk_mu"] = walk_mu;
    j["walk_sigma"] = walk_sigma;
    j["walk_y0"] = walk_y0;
    j["seed"] = seed;
    return j;
}

TimeSeries load_configured_series(const DatasetRegistry& reg, const AnalysisConfig& cfg,
                                  const std::string& label) {
    TimeSeries s = reg.load(label);
    if (cfg.log) s = log_transform(s);
    if (cfg.window_from || cfg.window_to) {
        const int from = cfg.window_from.value_or(s.start_index);
        const int to = cfg.window_to.value_or(s.end_index());
        s = restrict_window(s, from, to);
    }
    return s;
}

PipelineReport run_stationarity(const DatasetRegistry& reg, const AnalysisConfig& cfg) {
    if (cfg.datasets.empty()) throw_usage("run_stationarity: no datasets configured");
    PipelineReport rep;
    rep.config = cfg;
    for (const auto& label : cfg.datasets) {
        const TimeSeries s = load_configured_series(reg, cfg, label);
        rep.stationarity.push_back(screen_series(s, cfg));
    }
    return rep;
}

PipelineReport run_cointegration(const DatasetRegistry& reg, const AnalysisConfig& cfg) {
    if (cfg.datasets.size() < 2)
        throw_usage("run_cointegration: need at least two datasets");
    PipelineReport rep = run_stationarity(reg, cfg);

    std::vector<std::string> failing;
    for (const auto& st : rep.stationarity)
        if (!st.consistent_with_i1) failing.push_back(st.label + " (" + st.verdict + ")");
    if (!failing.empty()) {
        std::string all;
        for (const auto& f : failing) all += (all.empty() ? "" : "; ") + f;
        if (!cfg.force)
            throw_refusal("I(1) screen failed: " + all + " -- rerun with --force to override");
        rep.notes.push_back("I(1) screen overridden by --force: " + all);
    }

    std::vector<TimeSeries> series;
    for (const auto& label : cfg.datasets)
        series.push_back(load_configured_series(reg, cfg, label));
    // Trim to the common window before testing.
    int lo = series[0].start_index, hi = series[0].end_index();
    for (const auto& s : series) {
        lo = std::max(lo, s.start_index);
        hi = std::min(hi, s.end_index());
    }
    if (lo > hi) throw_usage("run_cointegration: series do not overlap");
    for (auto& s : series) s = restrict_window(s, lo, hi);

    VecmSpec spec = cfg.vecm;
    if (cfg.auto_lag_p) {
        spec.lag_p = select_var_order(series, spec.det, 5);
        rep.notes.push_back("lag_p selected by AIC over VAR(1..5): " + std::to_string(spec.lag_p));
    }

    rep.johansen = johansen_trace_test(series, spec, cfg.level, I1Screen::AssertedByCaller);
    if (rep.johansen->selected_rank >= 1 && series.size() == 2) {
        const TimeSeries z = cointegrating_residual(series[0], series[1], *rep.johansen);
        const int lags = cfg.auto_lags
                             ? select_lag(z, DeterministicSpec::SingleMean, cfg.max_lag, cfg.criterion)
                             : cfg.adf_lags;
        rep.residual_adf = adf_test(z, DeterministicSpec::SingleMean, lags);
    }
    return rep;
}

AuditReport run_audit(const DatasetRegistry& reg, const AnalysisConfig& cfg) {
    if (cfg.datasets.empty()) throw_usage("run_audit: no target dataset configured");
    const TimeSeries target = load_configured_series(reg, cfg, cfg.datasets.front());
    RandomWalkSpec walk;
    walk.T = target.values.size();
    walk.mu = cfg.walk_mu;
    walk.sigma = cfg.walk_sigma;
    walk.y0 = cfg.walk_y0;
    return spurious_audit(target, walk, cfg.n_trials, cfg.vecm, cfg.level, cfg.seed, cfg.force,
                          cfg.threads);
}

nlohmann::json to_json(const UnitRootResult& r) {
    nlohmann::json j;
    j["test"] = r.test == UnitRootTest::ADF ? "adf" : "pp";
    j["spec"] = to_string(r.spec);
    j[r.test == UnitRootTest::ADF ? "lags" : "bandwidth"] = r.lags;
    j["rho"] = r.rho_stat;
    j["tau"] = r.degenerate ? nlohmann::json() : nlohmann::json(r.tau_stat);
    j["p_value"] = r.p_value;
    j["nobs_effective"] = r.nobs_effective;
    if (r.degenerate) j["degenerate"] = true;
    if (r.p_clamped) j["p_clamped"] = true;
    return j;
}

nlohmann::json to_json(const JohansenResult& r) {
    nlohmann::json j;
    j["eigenvalues"] = std::vector<double>(r.eigenvalues.data(),
                                           r.eigenvalues.data() + r.eigenvalues.size());
    nlohmann::json trace = nlohmann::json::array();
    for (Eigen::Index i = 0; i < r.trace_stats.size(); ++i) {
        trace.push_back({{"rank_leq", i},
                         {"trace", r.trace_stats[i]},
                         {"p_value", r.p_values[i]}});
    }
    j["trace_tests"] = trace;
    j["selected_rank"] = r.selected_rank;
    j["t_eff"] = r.t_eff;
    j["lag_p"] = r.spec.lag_p;
    j["det"] = to_string(r.spec.det);
    j["level"] = r.level;
    nlohmann::json beta = nlohmann::json::array();
    nlohmann::json alpha = nlohmann::json::array();
    for (Eigen::Index c = 0; c < r.beta.cols(); ++c) {
        beta.push_back(std::vector<double>(r.beta.col(c).data(),
                                           r.beta.col(c).data() + r.beta.rows()));
        alpha.push_back(std::vector<double>(r.alpha.col(c).data(),
                                            r.alpha.col(c).data() + r.alpha.rows()));
    }
    j["beta"] = beta;
    j["alpha"] = alpha;
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    return j;
}

nlohmann::json to_json(const AuditReport& r, bool include_trials) {
    nlohmann::json j;
    j["target"] = r.target_label;
    j["n_trials"] = r.n_trials;
    j["walk"] = {{"T", r.walk.T}, {"mu", r.walk.mu}, {"sigma", r.walk.sigma}, {"y0", r.walk.y0}};
    j["test"] = {{"lag_p", r.test.lag_p}, {"det", to_string(r.test.det)}};
    j["level"] = r.level;
    j["rejections"] = r.rejections;
    j["false_positive_rate"] = r.false_positive_rate;
    j["wilson_ci95"] = {r.wilson95.low, r.wilson95.high};
    j["screen_failures"] = r.screen_failures;
    j["master_seed"] = r.master_seed;
    j["target_screen_overridden"] = r.target_screen_overridden;
    if (include_trials) {
        nlohmann::json trials = nlohmann::json::array();
        for (const auto& t : r.per_trial) {
            trials.push_back({{"seed", t.seed},
                              {"trace", t.trace},
                              {"p", t.p},
                              {"rejected", t.rejected}});
        }
        j["per_trial"] = trials;
    }
    return j;
}

nlohmann::json to_json(const PipelineReport& r) {
    nlohmann::json j;
    j["config"] = r.config.echo();
    nlohmann::json st = nlohmann::json::array();
    for (const auto& s : r.stationarity) {
        nlohmann::json e;
        e["label"] = s.label;
        e["unit"] = s.unit;
        e["start_index"] = s.start_index;
        e["length"] = s.length;
        nlohmann::json lv = nlohmann::json::array();
        for (const auto& u : s.levels) lv.push_back(to_json(u));
        nlohmann::json df = nlohmann::json::array();
        for (const auto& u : s.differences) df.push_back(to_json(u));
        e["levels"] = lv;
        e["differences"] = df;
        e["consistent_with_i1"] = s.consistent_with_i1;
        e["verdict"] = s.verdict;
        st.push_back(e);
    }
    j["stationarity"] = st;
    if (r.johansen) j["johansen"] = to_json(*r.johansen);
    if (r.residual_adf) j["residual_adf"] = to_json(*r.residual_adf);
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

nlohmann::json report_envelope(nlohmann::json payload, const std::string& kind) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["engine"] = kEngineVersion;
    j["kind"] = kind;
    j["generated_at"] = iso_timestamp();
    j["report"] = std::move(payload);
    return j;
}

void write_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw_usage("cannot write output file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace spurion
