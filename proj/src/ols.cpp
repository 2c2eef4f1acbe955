#include "spurion/ols.hpp"

#include <cmath>
#include <numbers>

namespace spurion {

namespace {

constexpr double kRankTol = 1e-10;

bool is_constant_column(const Eigen::Ref<const Eigen::VectorXd>& c) {
    if (c.size() == 0 || c[0] == 0.0) return false;
    return (c.array() == c[0]).all();
}

}  // namespace

void DesignMatrix::add(const std::string& name, const Eigen::VectorXd& column) {
    if (X.cols() == 0) {
        X.resize(column.size(), 1);
        X.col(0) = column;
    } else {
        if (column.size() != X.rows())
            throw_usage("DesignMatrix::add('" + name + "'): column length " +
                        std::to_string(column.size()) + " != rows " + std::to_string(X.rows()));
        X.conservativeResize(Eigen::NoChange, X.cols() + 1);
        X.col(X.cols() - 1) = column;
    }
    names.push_back(name);
}

Eigen::Index DesignMatrix::column(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<Eigen::Index>(i);
    return -1;
}

OlsResult ols_fit(const DesignMatrix& design, const Eigen::Ref<const Eigen::VectorXd>& y) {
    const Eigen::MatrixXd& X = design.X;
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (k == 0) throw_usage("ols_fit: empty design matrix");
    if (y.size() != n)
        throw_usage("ols_fit: y has " + std::to_string(y.size()) + " rows, X has " +
                    std::to_string(n));
    if (n < k) throw_usage("ols_fit: fewer rows than regressors");
    if (!X.allFinite() || !y.allFinite()) throw_usage("ols_fit: non-finite entries");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    const Eigen::VectorXd rdiag = qr.matrixR().diagonal().head(k).cwiseAbs();
    const double dmax = rdiag.maxCoeff();
    const double dmin = rdiag.minCoeff();
    if (dmax <= 0.0 || dmin < kRankTol * dmax) {
        std::string cols;
        for (const auto& nm : design.names) cols += nm + " ";
        throw_numeric("ols_fit: rank-deficient design (|R| diagonal ratio " +
                      std::to_string(dmax > 0 ? dmin / dmax : 0.0) +
                      " < 1e-10); regressors: " + cols);
    }

    OlsResult out;
    out.names = design.names;
    out.nobs = n;
    out.coefficients = qr.solve(y);
    out.residuals = y - X * out.coefficients;

    const double rss = out.residuals.squaredNorm();
    const double dof = static_cast<double>(n - k);
    out.sigma2 = dof > 0 ? rss / dof : 0.0;

    // (X'X)^{-1} diagonal via the R factor: X'X = P R'R P'.
    const Eigen::MatrixXd R = qr.matrixR().topRows(k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd Rinv = R.inverse();
    const Eigen::VectorXd diag_permuted = (Rinv * Rinv.transpose()).diagonal();
    Eigen::VectorXd xtx_inv_diag(k);
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index j = 0; j < k; ++j) xtx_inv_diag[perm[j]] = diag_permuted[j];
    out.standard_errors = (out.sigma2 * xtx_inv_diag.array()).sqrt().matrix();

    bool has_intercept = false;
    for (Eigen::Index j = 0; j < k; ++j)
        if (is_constant_column(X.col(j))) has_intercept = true;
    const double tss = has_intercept ? (y.array() - y.mean()).matrix().squaredNorm()
                                     : y.squaredNorm();
    out.r_squared = tss > 0.0 ? 1.0 - rss / tss : (rss > 0.0 ? 0.0 : 1.0);

    const double scale = 1.0 + y.squaredNorm() / static_cast<double>(n);
    if (rss <= 1e-22 * static_cast<double>(n) * scale) {
        out.degenerate = true;
        return out;
    }
    const double nd = static_cast<double>(n);
    out.loglik = -0.5 * nd * (std::log(2.0 * std::numbers::pi) + std::log(rss / nd) + 1.0);
    out.aic = -2.0 * out.loglik + 2.0 * static_cast<double>(k);
    out.bic = -2.0 * out.loglik + static_cast<double>(k) * std::log(nd);
    return out;
}

InformationCriteria information_criteria(const OlsResult& fit) {
    return {fit.aic, fit.bic, fit.degenerate};
}

double longrun_variance(const Eigen::Ref<const Eigen::VectorXd>& residuals, int bandwidth) {
    const Eigen::Index n = residuals.size();
    if (n < 1) throw_usage("longrun_variance: empty input");
    if (bandwidth < 0 || bandwidth >= n)
        throw_usage("longrun_variance: bandwidth " + std::to_string(bandwidth) +
                    " out of range [0, " + std::to_string(n - 1) + "]");
    const Eigen::VectorXd e = residuals.array() - residuals.mean();
    const double nd = static_cast<double>(n);
    double v = e.squaredNorm() / nd;
    for (int j = 1; j <= bandwidth; ++j) {
        const double gamma_j = e.tail(n - j).dot(e.head(n - j)) / nd;
        const double w = 1.0 - static_cast<double>(j) / static_cast<double>(bandwidth + 1);
        v += 2.0 * w * gamma_j;
    }
    return v;
}

int default_bandwidth(Eigen::Index nobs) {
    return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(nobs) / 100.0, 2.0 / 9.0)));
}

}  // namespace spurion
