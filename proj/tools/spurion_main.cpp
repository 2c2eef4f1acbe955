// spurion: unit-root and cointegration testing, plus the Monte Carlo
// spurious-cointegration audit, over year-indexed CSV datasets.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "spurion/pipeline.hpp"
#include "spurion/plot.hpp"

namespace {

using namespace spurion;

struct CommonOpts {
    std::string data_dir;
    std::string config_path;
    std::string out_path;
    std::vector<std::string> series;
    std::string window;
    bool log = false;
    double level = 0.05;
    bool force = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_series = true) {
    cmd->add_option("--data-dir", o.data_dir, "dataset registry directory (or $SPURION_DATA_DIR)");
    cmd->add_option("--config", o.config_path, "INI config file");
    cmd->add_option("--out", o.out_path, "output path (default: stdout)");
    if (with_series)
        cmd->add_option("--series", o.series, "dataset labels")->delimiter(',');
    cmd->add_option("--window", o.window, "index window FROM:TO");
    cmd->add_flag("--log", o.log, "apply natural-log transform");
    cmd->add_option("--level", o.level, "significance level (0.10, 0.05 or 0.01)")
        ->check(CLI::IsMember({0.10, 0.05, 0.01}));
    cmd->add_flag("--force", o.force, "override the I(1) methodological gate (recorded)");
    cmd->add_option_function<std::uint64_t>(
           "--seed", [&o](const std::uint64_t& v) { o.seed = v; o.seed_set = true; },
           "master seed for simulation/audit");
}

AnalysisConfig build_config(const CommonOpts& o) {
    AnalysisConfig cfg;
    if (!o.config_path.empty())
        cfg = AnalysisConfig::from_config(KeyValueConfig::parse_file(o.config_path));
    if (!o.series.empty()) cfg.datasets = o.series;
    if (o.log) cfg.log = true;
    if (!o.window.empty()) {
        const auto colon = o.window.find(':');
        if (colon == std::string::npos)
            throw_usage("--window expects FROM:TO, got '" + o.window + "'");
        cfg.window_from = std::stoi(o.window.substr(0, colon));
        cfg.window_to = std::stoi(o.window.substr(colon + 1));
    }
    cfg.level = o.level;
    if (o.force) cfg.force = true;
    if (o.seed_set) cfg.seed = o.seed;
    return cfg;
}

void emit(const nlohmann::json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_json(j, out_path);
        std::cerr << "wrote " << out_path << "\n";
    }
}

int dispatch(int argc, char** argv) {
    CLI::App app{"spurion - time-series stationarity and cointegration toolkit"};
    app.require_subcommand(1);

    CommonOpts st_o, co_o, au_o, pl_o, rg_o;

    auto* st = app.add_subcommand("stationarity", "ADF and PP screening of configured series");
    add_common(st, st_o);
    std::string st_lags = "1";
    int st_maxlag = 4;
    std::string st_bw = "1";
    st->add_option("--lags", st_lags, "ADF lags, or 'auto'");
    st->add_option("--max-lag", st_maxlag, "maximum lag for auto selection");
    st->add_option("--pp-bandwidth", st_bw, "PP kernel bandwidth, or 'auto'");

    auto* co = app.add_subcommand("coint", "Johansen trace test behind the I(1) gate");
    add_common(co, co_o);
    std::string co_lagp = "1";
    std::string co_det = "const";
    std::string co_lags = "1";
    co->add_option("--lag-p", co_lagp, "VAR order p, or 'auto'");
    co->add_option("--det", co_det, "deterministic case: noint or const")
        ->check(CLI::IsMember({"noint", "const"}));
    co->add_option("--lags", co_lags, "ADF lags for the screen, or 'auto'");

    auto* au = app.add_subcommand("audit", "Monte Carlo spurious-cointegration audit");
    add_common(au, au_o);
    std::int64_t au_trials = 1000;
    double au_mu = -0.2, au_sigma = 0.7, au_y0 = 0.0;
    std::string au_lagp = "1";
    std::string au_det = "noint";
    int au_threads = 0;
    bool au_no_trials = false;
    au->add_option("--trials", au_trials, "number of trials");
    au->add_option("--mu", au_mu, "walk drift per step");
    au->add_option("--sigma", au_sigma, "walk innovation standard deviation");
    au->add_option("--y0", au_y0, "walk starting value");
    au->add_option("--lag-p", au_lagp, "VAR order p for the trace test");
    au->add_option("--det", au_det, "deterministic case: noint or const")
        ->check(CLI::IsMember({"noint", "const"}));
    au->add_option("--threads", au_threads, "worker threads (0 = hardware)");
    au->add_flag("--summary-only", au_no_trials, "omit the per-trial table from the report");

    auto* si = app.add_subcommand("simulate", "generate a seeded Gaussian random walk CSV");
    std::int64_t si_T = 100;
    double si_mu = 0.0, si_sigma = 1.0, si_y0 = 0.0;
    std::uint64_t si_seed = 0;
    int si_start = 1900;
    std::string si_out;
    si->add_option("--length", si_T, "number of observations")->required();
    si->add_option("--mu", si_mu, "drift per step");
    si->add_option("--sigma", si_sigma, "innovation standard deviation");
    si->add_option("--y0", si_y0, "starting value");
    si->add_option("--seed", si_seed, "generator seed")->required();
    si->add_option("--start-year", si_start, "index of the first observation");
    si->add_option("--out", si_out, "output CSV path")->required();

    auto* pl = app.add_subcommand("plot", "dual-axis SVG overlay of 1-4 series (+ CSV sidecar)");
    add_common(pl, pl_o);

    auto* rg = app.add_subcommand("regress", "levels OLS of the first series on the second");
    add_common(rg, rg_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (st->parsed()) {
        AnalysisConfig cfg = build_config(st_o);
        if (st_lags == "auto") cfg.auto_lags = true;
        else cfg.adf_lags = std::stoi(st_lags);
        cfg.max_lag = st_maxlag;
        if (st_bw == "auto") cfg.auto_bandwidth = true;
        else cfg.pp_bandwidth = std::stoi(st_bw);
        const auto reg = DatasetRegistry::resolve(st_o.data_dir);
        const auto rep = run_stationarity(reg, cfg);
        emit(report_envelope(to_json(rep), "stationarity"), st_o.out_path);
        return 0;
    }
    if (co->parsed()) {
        AnalysisConfig cfg = build_config(co_o);
        if (co_lagp == "auto") cfg.auto_lag_p = true;
        else cfg.vecm.lag_p = std::stoi(co_lagp);
        cfg.vecm.det = co_det == "noint" ? JohansenDet::NoIntercept
                                         : JohansenDet::UnrestrictedConstant;
        if (co_lags == "auto") cfg.auto_lags = true;
        else cfg.adf_lags = std::stoi(co_lags);
        const auto reg = DatasetRegistry::resolve(co_o.data_dir);
        const auto rep = run_cointegration(reg, cfg);
        emit(report_envelope(to_json(rep), "cointegration"), co_o.out_path);
        return 0;
    }
    if (au->parsed()) {
        AnalysisConfig cfg = build_config(au_o);
        cfg.n_trials = au_trials;
        cfg.walk_mu = au_mu;
        cfg.walk_sigma = au_sigma;
        cfg.walk_y0 = au_y0;
        cfg.vecm.lag_p = std::stoi(au_lagp);
        cfg.vecm.det = au_det == "noint" ? JohansenDet::NoIntercept
                                         : JohansenDet::UnrestrictedConstant;
        cfg.threads = au_threads;
        const auto reg = DatasetRegistry::resolve(au_o.data_dir);
        const auto rep = run_audit(reg, cfg);
        emit(report_envelope(to_json(rep, !au_no_trials), "audit"), au_o.out_path);
        return 0;
    }
    if (si->parsed()) {
        RandomWalkSpec spec;
        spec.T = si_T;
        spec.mu = si_mu;
        spec.sigma = si_sigma;
        spec.y0 = si_y0;
        spec.seed = si_seed;
        const TimeSeries s = generate_random_walk(spec, si_start, "simulated_walk");
        std::ofstream out(si_out);
        if (!out) throw_usage("cannot write " + si_out);
        out << "year,value\n";
        char buf[64];
        for (Eigen::Index i = 0; i < s.values.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%d,%.17g\n", s.start_index + static_cast<int>(i),
                          s.values[i]);
            out << buf;
        }
        std::cerr << "wrote " << si_out << "\n";
        return 0;
    }
    if (pl->parsed()) {
        AnalysisConfig cfg = build_config(pl_o);
        if (cfg.datasets.empty()) throw_usage("plot: no series configured");
        if (pl_o.out_path.empty()) throw_usage("plot: --out is required");
        const auto reg = DatasetRegistry::resolve(pl_o.data_dir);
        std::vector<TimeSeries> series;
        for (const auto& label : cfg.datasets)
            series.push_back(load_configured_series(reg, cfg, label));
        emit_plot(series, pl_o.out_path);
        std::cerr << "wrote " << pl_o.out_path << "\n";
        return 0;
    }
    if (rg->parsed()) {
        AnalysisConfig cfg = build_config(rg_o);
        if (cfg.datasets.size() != 2) throw_usage("regress: need exactly two series (y, x)");
        const auto reg = DatasetRegistry::resolve(rg_o.data_dir);
        auto [y, x] = align_pair(load_configured_series(reg, cfg, cfg.datasets[0]),
                                 load_configured_series(reg, cfg, cfg.datasets[1]));
        DesignMatrix X;
        X.add("const", Eigen::VectorXd::Ones(x.values.size()));
        X.add(x.label, x.values);
        const OlsResult fit = ols_fit(X, y.values);
        nlohmann::json j;
        j["y"] = y.label;
        j["x"] = x.label;
        j["nobs"] = fit.nobs;
        j["coefficients"] = {{"const", fit.coefficients[0]}, {x.label, fit.coefficients[1]}};
        j["standard_errors"] = {{"const", fit.standard_errors[0]},
                                {x.label, fit.standard_errors[1]}};
        j["r_squared"] = fit.r_squared;
        j["sigma2"] = fit.sigma2;
        if (fit.degenerate) j["degenerate"] = true;
        else {
            j["loglik"] = fit.loglik;
            j["aic"] = fit.aic;
            j["bic"] = fit.bic;
        }
        emit(report_envelope(j, "regress"), rg_o.out_path);
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::Usage: return 1;
            case ErrorKind::Refusal: return 2;
            case ErrorKind::Numeric: return 3;
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
