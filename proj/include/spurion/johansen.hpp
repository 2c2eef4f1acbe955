#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "spurion/time_series.hpp"

namespace spurion {

/// Deterministic term of the VECM: none at all (the "noint" model) or an
/// unrestricted constant. Restricted-constant and trend cases are out of
/// scope and deliberately absent.
enum class JohansenDet {
    NoIntercept,
    UnrestrictedConstant,
};

std::string to_string(JohansenDet det);

/// VAR lag order p (the VECM uses p-1 differenced lags) plus the
/// deterministic case.
struct VecmSpec {
    int lag_p = 1;
    JohansenDet det = JohansenDet::UnrestrictedConstant;
};

/// Eigen-solution of the reduced-rank regression problem
/// |lambda * S11 - S10 * S00^-1 * S01| = 0, solved through a symmetrized
/// formulation so the eigenvalues are real and in [0, 1).
struct RrrSolution {
    Eigen::VectorXd eigenvalues;  ///< descending, clamped into [0, 1-1e-12]
    Eigen::MatrixXd vectors;      ///< columns, S11-normalized (v'S11v = 1)
    bool boundary = false;        ///< some eigenvalue was clamped at 1-1e-12
    bool singular = false;        ///< a moment matrix was numerically singular
    double cond_s00 = 0.0;        ///< smallest/largest eigenvalue ratio
    double cond_s11 = 0.0;
};

/// Johansen trace test output. trace_stats[r] = -T_eff * sum_{i>r} ln(1-l_i)
/// tests the null "cointegration rank <= r"; small p-values reject it.
struct JohansenResult {
    Eigen::VectorXd eigenvalues;
    Eigen::VectorXd trace_stats;  ///< r = 0 .. k-1
    Eigen::VectorXd p_values;
    Eigen::MatrixXd beta;   ///< cointegrating vectors (columns), first coefficient 1
    Eigen::MatrixXd alpha;  ///< adjustment coefficients, scaled to match beta
    int selected_rank = 0;  ///< smallest r whose null is not rejected (k if all rejected)
    Eigen::Index t_eff = 0;
    VecmSpec spec;
    double level = 0.05;
    std::vector<std::string> warnings;
};

/// Whether johansen_trace_test runs the I(1) screen itself or trusts the
/// caller's assertion that the inputs passed one.
enum class I1Screen { Run, AssertedByCaller };

/// Concentration step: residuals of dY_t (R0) and Y_{t-1} (R1) after
/// partialling out the lagged differences and deterministic terms. With
/// lag_p = 1 and NoIntercept there is nothing to partial out and the raw
/// dY_t / Y_{t-1} come back unchanged.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> vecm_auxiliary(const std::vector<TimeSeries>& Y,
                                                           const VecmSpec& spec);

RrrSolution solve_rrr_eigen(const Eigen::MatrixXd& R0, const Eigen::MatrixXd& R1);

JohansenResult johansen_trace_test(const std::vector<TimeSeries>& Y, const VecmSpec& spec,
                                   double level, I1Screen screen = I1Screen::Run);

/// P-value of the asymptotic trace distribution for k-r remaining
/// dimensions, by a gamma law matched to the distribution's mean and
/// variance. Monotone decreasing in the statistic.
double trace_pvalue(double trace, int k_minus_r, JohansenDet det);

/// Embedded fallback critical values (5% and 1%) used to cross-check
/// trace_pvalue. level must be 0.05 or 0.01; k_minus_r in [1, 5].
double trace_critical_value(int k_minus_r, JohansenDet det, double level);

/// z_t = beta' Y_t for the leading normalized vector of a rank >= 1 result.
TimeSeries cointegrating_residual(const TimeSeries& y1, const TimeSeries& y2,
                                  const JohansenResult& result);

/// AIC-minimizing VAR order on the level series over p in [1, max_p];
/// ties go to the smaller order.
int select_var_order(const std::vector<TimeSeries>& Y, JohansenDet det, int max_p);

}  // namespace spurion
