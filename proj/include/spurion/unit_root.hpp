#pragma once

#include <Eigen/Dense>

#include "spurion/ols.hpp"
#include "spurion/time_series.hpp"

namespace spurion {

/// Deterministic regressors of the test equation: none, intercept, or
/// intercept plus linear trend (the zero-mean / single-mean / trend cases).
enum class DeterministicSpec {
    ZeroMean,
    SingleMean,
    Trend,
};

std::string to_string(DeterministicSpec spec);

enum class UnitRootTest { ADF, PP };

/// One ADF or PP run. The null hypothesis is a unit root; small p-values
/// reject it. tau (the t-ratio on the lagged level) is the statistic the
/// p-value is computed from; rho (nobs times the lagged-level coefficient)
/// is reported as a diagnostic only.
struct UnitRootResult {
    double rho_stat = 0.0;
    double tau_stat = 0.0;
    double p_value = 1.0;
    DeterministicSpec spec = DeterministicSpec::SingleMean;
    int lags = 0;  ///< augmentation lags for ADF; kernel bandwidth for PP
    UnitRootTest test = UnitRootTest::ADF;
    Eigen::Index nobs_effective = 0;
    bool degenerate = false;  ///< zero-residual regression; p_value not meaningful
    bool p_clamped = false;   ///< tau fell outside the tabulated range
};

/// Augmented Dickey-Fuller test: regresses dy_t on y_{t-1}, lagged
/// differences and the spec's deterministic terms. The first lags+1
/// observations are dropped, so nobs_effective = T - lags - 1.
UnitRootResult adf_test(const TimeSeries& s, DeterministicSpec spec, int lags);

/// Phillips-Perron test: lag-0 Dickey-Fuller regression with the
/// nonparametric Newey-West correction applied to rho and tau. With
/// bandwidth 0 the correction vanishes and tau equals the lag-0 ADF tau.
UnitRootResult pp_test(const TimeSeries& s, DeterministicSpec spec, int bandwidth);

/// P-value of the Dickey-Fuller tau distribution, MacKinnon-style response
/// surface. Larger (less negative) tau gives a larger p-value; outside the
/// tabulated range the value is clamped to [1e-4, 0.9999].
double df_pvalue(double tau, DeterministicSpec spec, Eigen::Index nobs);

/// df_pvalue plus the clamp indicator.
double df_pvalue(double tau, DeterministicSpec spec, Eigen::Index nobs, bool& clamped);

enum class Criterion { AIC, BIC };

/// Picks the ADF augmentation lag in [0, max_lag] minimizing the criterion.
/// All candidates are fitted on the common sample implied by max_lag so the
/// criteria are comparable; ties go to the smaller lag.
int select_lag(const TimeSeries& s, DeterministicSpec spec, int max_lag, Criterion criterion);

}  // namespace spurion
