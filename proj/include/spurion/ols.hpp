#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "spurion/errors.hpp"

namespace spurion {

/// Regressor matrix with named columns. Columns are added in order; the
/// entries must be finite and rows >= columns at fit time.
struct DesignMatrix {
    Eigen::MatrixXd X;
    std::vector<std::string> names;

    Eigen::Index rows() const { return X.rows(); }
    Eigen::Index cols() const { return X.cols(); }

    void add(const std::string& name, const Eigen::VectorXd& column);
    /// Index of a named column, or -1.
    Eigen::Index column(const std::string& name) const;
};

/// Least-squares fit with the inference quantities the tests need.
///
/// Conventions, fixed so results are reproducible bit-for-bit:
///   sigma2 = RSS / (n - k)
///   loglik = concentrated Gaussian log-likelihood with sigma^2 = RSS / n,
///            i.e. -n/2 * (ln(2*pi) + ln(RSS/n) + 1)
///   aic    = -2*loglik + 2k,  bic = -2*loglik + k*ln(n)
/// R^2 is centered when the design contains a constant column, uncentered
/// otherwise. A fit with RSS ~ 0 sets `degenerate` and leaves
/// loglik/aic/bic at 0 rather than emitting non-finite numbers.
struct OlsResult {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd standard_errors;
    Eigen::VectorXd residuals;
    double r_squared = 0.0;
    double sigma2 = 0.0;
    double loglik = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    Eigen::Index nobs = 0;
    std::vector<std::string> names;
    bool degenerate = false;
};

/// Solves min ||y - X b|| by column-pivoted Householder QR. Throws
/// ErrorKind::Numeric when the smallest diagonal of the triangular factor
/// falls below 1e-10 times the largest (rank deficiency).
OlsResult ols_fit(const DesignMatrix& X, const Eigen::Ref<const Eigen::VectorXd>& y);

struct InformationCriteria {
    double aic = 0.0;
    double bic = 0.0;
    bool degenerate = false;
};

InformationCriteria information_criteria(const OlsResult& fit);

/// Newey-West long-run variance with Bartlett kernel:
///   g0 + 2 * sum_{j=1..bw} (1 - j/(bw+1)) * g_j
/// where g_j is the mean-adjusted lag-j sample autocovariance (1/n scaling).
/// Bandwidth 0 reduces to the plain sample variance g0.
double longrun_variance(const Eigen::Ref<const Eigen::VectorXd>& residuals, int bandwidth);

/// Standard data-driven bandwidth floor(4 * (T/100)^(2/9)).
int default_bandwidth(Eigen::Index nobs);

}  // namespace spurion
