#include "spurion/unit_root.hpp"

#include <cmath>
#include <limits>

namespace spurion {

namespace {

// Builds the Dickey-Fuller regression for observations t in
// [first_t, T-1] of y (0-based): dy_t on y_{t-1}, dy_{t-1..t-lags} and the
// spec's deterministic terms. first_t must be >= lags + 1.
struct DfRegression {
    DesignMatrix X;
    Eigen::VectorXd dy;
    Eigen::Index level_col = 0;
};

DfRegression build_df_regression(const Eigen::VectorXd& y, DeterministicSpec spec, int lags,
                                 Eigen::Index first_t) {
    const Eigen::Index T = y.size();
    const Eigen::Index n = T - first_t;
    DfRegression reg;
    reg.dy = y.segment(first_t, n) - y.segment(first_t - 1, n);

    if (spec != DeterministicSpec::ZeroMean)
        reg.X.add("const", Eigen::VectorXd::Ones(n));
    if (spec == DeterministicSpec::Trend)
        reg.X.add("trend", Eigen::VectorXd::LinSpaced(n, 1.0, static_cast<double>(n)));

    reg.level_col = reg.X.cols();
    reg.X.add("y_lag1", y.segment(first_t - 1, n));
    for (int j = 1; j <= lags; ++j) {
        reg.X.add("dy_lag" + std::to_string(j),
                  y.segment(first_t - j, n) - y.segment(first_t - j - 1, n));
    }
    return reg;
}

UnitRootResult finish(UnitRootResult r) {
    if (r.degenerate) {
        r.p_value = 1.0;
        return r;
    }
    bool clamped = false;
    r.p_value = df_pvalue(r.tau_stat, r.spec, r.nobs_effective, clamped);
    r.p_clamped = clamped;
    return r;
}

}  // namespace

UnitRootResult adf_test(const TimeSeries& s, DeterministicSpec spec, int lags) {
    const Eigen::Index T = s.values.size();
    if (lags < 0) throw_usage("adf_test: lags must be >= 0");
    if (T < lags + 10)
        throw_usage("adf_test('" + s.label + "'): sample too short (T=" + std::to_string(T) +
                    ", need >= lags + 10)");

    const Eigen::Index first_t = lags + 1;
    DfRegression reg = build_df_regression(s.values, spec, lags, first_t);
    OlsResult fit = ols_fit(reg.X, reg.dy);

    UnitRootResult r;
    r.spec = spec;
    r.lags = lags;
    r.test = UnitRootTest::ADF;
    r.nobs_effective = T - first_t;
    const double coef = fit.coefficients[reg.level_col];
    const double se = fit.standard_errors[reg.level_col];
    r.rho_stat = static_cast<double>(r.nobs_effective) * coef;
    if (fit.degenerate || se <= 0.0 || !std::isfinite(se)) {
        r.degenerate = true;
        r.tau_stat = std::numeric_limits<double>::quiet_NaN();
        return finish(r);
    }
    r.tau_stat = coef / se;
    return finish(r);
}

UnitRootResult pp_test(const TimeSeries& s, DeterministicSpec spec, int bandwidth) {
    const Eigen::Index T = s.values.size();
    if (bandwidth < 0) throw_usage("pp_test: bandwidth must be >= 0");
    if (T < 12) throw_usage("pp_test('" + s.label + "'): sample too short (T >= 12 required)");

    DfRegression reg = build_df_regression(s.values, spec, 0, 1);
    OlsResult fit = ols_fit(reg.X, reg.dy);

    UnitRootResult r;
    r.spec = spec;
    r.lags = bandwidth;
    r.test = UnitRootTest::PP;
    r.nobs_effective = T - 1;
    const double n = static_cast<double>(r.nobs_effective);
    const double coef = fit.coefficients[reg.level_col];
    const double se = fit.standard_errors[reg.level_col];
    if (fit.degenerate || se <= 0.0 || !std::isfinite(se)) {
        r.degenerate = true;
        r.rho_stat = n * coef;
        r.tau_stat = std::numeric_limits<double>::quiet_NaN();
        return finish(r);
    }
    if (bandwidth >= r.nobs_effective)
        throw_usage("pp_test: bandwidth must be < effective sample size");

    const double gamma0 = longrun_variance(fit.residuals, 0);
    const double lambda2 = longrun_variance(fit.residuals, bandwidth);
    const double lambda = std::sqrt(lambda2);
    const double sigma = std::sqrt(fit.sigma2);
    const double tau_ols = coef / se;

    r.tau_stat = tau_ols * std::sqrt(gamma0 / lambda2) -
                 (lambda2 - gamma0) * n * se / (2.0 * lambda * sigma);
    r.rho_stat = n * coef - (lambda2 - gamma0) / 2.0 * (n * n * se * se) / fit.sigma2;
    return finish(r);
}

int select_lag(const TimeSeries& s, DeterministicSpec spec, int max_lag, Criterion criterion) {
    if (max_lag < 0) throw_usage("select_lag: max_lag must be >= 0");
    const Eigen::Index T = s.values.size();
    if (T < max_lag + 10)
        throw_usage("select_lag('" + s.label + "'): sample too short for max_lag=" +
                    std::to_string(max_lag));
    // Common estimation sample: all candidates start at t = max_lag + 1.
    const Eigen::Index first_t = max_lag + 1;
    int best_lag = 0;
    double best_ic = std::numeric_limits<double>::infinity();
    for (int lag = 0; lag <= max_lag; ++lag) {
        DfRegression reg = build_df_regression(s.values, spec, lag, first_t);
        OlsResult fit = ols_fit(reg.X, reg.dy);
        if (fit.degenerate) return lag;  // perfect fit cannot be improved
        const double ic = criterion == Criterion::AIC ? fit.aic : fit.bic;
        if (ic < best_ic) {
            best_ic = ic;
            best_lag = lag;
        }
    }
    return best_lag;
}

}  // namespace spurion
