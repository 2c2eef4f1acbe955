#include "spurion/johansen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spurion/unit_root.hpp"

namespace spurion {

namespace {

constexpr double kMomentTol = 1e-12;   // relative cutoff for singular moments
constexpr double kEigenCeil = 1.0 - 1e-12;

// Stacks the aligned series into a T x k matrix and validates alignment.
Eigen::MatrixXd stack_series(const std::vector<TimeSeries>& Y) {
    const auto k = static_cast<Eigen::Index>(Y.size());
    if (k < 2) throw_usage("johansen: need at least 2 series");
    const Eigen::Index T = Y[0].values.size();
    for (const auto& s : Y) {
        if (s.values.size() != T || s.start_index != Y[0].start_index)
            throw_usage("johansen: series are not aligned (use align_pair/restrict_window)");
    }
    Eigen::MatrixXd M(T, k);
    for (Eigen::Index j = 0; j < k; ++j) M.col(j) = Y[j].values;
    return M;
}

// Residuals of each column of A after projecting out the columns of Z.
Eigen::MatrixXd partial_out(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Z) {
    if (Z.cols() == 0) return A;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Z);
    if (qr.rank() < Z.cols()) throw_numeric("johansen: rank-deficient auxiliary regressors");
    return A - Z * qr.solve(A);
}

}  // namespace

std::string to_string(JohansenDet det) {
    return det == JohansenDet::NoIntercept ? "noint" : "const";
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> vecm_auxiliary(const std::vector<TimeSeries>& Y,
                                                           const VecmSpec& spec) {
    if (spec.lag_p < 1) throw_usage("vecm_auxiliary: lag_p must be >= 1");
    const Eigen::MatrixXd levels = stack_series(Y);
    const Eigen::Index T = levels.rows();
    const Eigen::Index k = levels.cols();
    const int p = spec.lag_p;
    if (T < static_cast<Eigen::Index>(k) * p + 10)
        throw_usage("vecm_auxiliary: sample too short (T=" + std::to_string(T) + ", need >= " +
                    std::to_string(k * p + 10) + ")");

    const Eigen::Index n = T - p;  // rows of the estimation sample
    const Eigen::MatrixXd dY = levels.bottomRows(T - 1) - levels.topRows(T - 1);

    Eigen::MatrixXd Z0 = dY.bottomRows(n);               // dY_t, t = p .. T-1
    Eigen::MatrixXd Z1 = levels.middleRows(p - 1, n);    // Y_{t-1}

    const Eigen::Index n_det = spec.det == JohansenDet::UnrestrictedConstant ? 1 : 0;
    Eigen::MatrixXd Z2(n, n_det + static_cast<Eigen::Index>(p - 1) * k);
    if (n_det) Z2.col(0).setOnes();
    for (int j = 1; j < p; ++j)
        Z2.middleCols(n_det + static_cast<Eigen::Index>(j - 1) * k, k) =
            dY.middleRows(p - 1 - j, n);  // dY_{t-j}

    return {partial_out(Z0, Z2), partial_out(Z1, Z2)};
}

RrrSolution solve_rrr_eigen(const Eigen::MatrixXd& R0, const Eigen::MatrixXd& R1) {
    if (R0.rows() != R1.rows() || R0.cols() != R1.cols())
        throw_usage("solve_rrr_eigen: R0 and R1 must have equal shapes");
    const Eigen::Index T = R0.rows();
    const Eigen::Index k = R0.cols();
    if (T <= k) throw_usage("solve_rrr_eigen: too few rows");

    const double Td = static_cast<double>(T);
    const Eigen::MatrixXd S00 = R0.transpose() * R0 / Td;
    const Eigen::MatrixXd S11 = R1.transpose() * R1 / Td;
    const Eigen::MatrixXd S01 = R0.transpose() * R1 / Td;

    RrrSolution sol;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es00(S00);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es11(S11);
    const double d00max = es00.eigenvalues().maxCoeff();
    const double d11max = es11.eigenvalues().maxCoeff();
    if (d00max <= 0.0 || d11max <= 0.0)
        throw_numeric("solve_rrr_eigen: zero moment matrix");
    sol.cond_s00 = es00.eigenvalues().minCoeff() / d00max;
    sol.cond_s11 = es11.eigenvalues().minCoeff() / d11max;

    // Pseudo-inverse of S00 over its numerical range.
    Eigen::VectorXd d00inv = es00.eigenvalues();
    for (Eigen::Index i = 0; i < k; ++i) {
        if (d00inv[i] <= kMomentTol * d00max) {
            d00inv[i] = 0.0;
            sol.singular = true;
        } else {
            d00inv[i] = 1.0 / d00inv[i];
        }
    }
    const Eigen::MatrixXd S00p =
        es00.eigenvectors() * d00inv.asDiagonal() * es00.eigenvectors().transpose();

    // Split S11 into numerical range and null space. Null directions are
    // combinations of the levels with (numerically) zero variance: exact
    // collinearity, i.e. a perfectly cointegrated direction. They are
    // reported at the eigenvalue ceiling instead of breaking the solve.
    std::vector<Eigen::Index> range_idx, null_idx;
    for (Eigen::Index i = 0; i < k; ++i) {
        if (es11.eigenvalues()[i] <= kMomentTol * d11max)
            null_idx.push_back(i);
        else
            range_idx.push_back(i);
    }
    if (!null_idx.empty()) sol.singular = true;

    const auto r_dim = static_cast<Eigen::Index>(range_idx.size());
    Eigen::MatrixXd W(k, r_dim);  // whitener: W' S11 W = I
    for (Eigen::Index j = 0; j < r_dim; ++j)
        W.col(j) = es11.eigenvectors().col(range_idx[j]) / std::sqrt(es11.eigenvalues()[range_idx[j]]);

    const Eigen::MatrixXd M = W.transpose() * S01.transpose() * S00p * S01 * W;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esM(M);

    struct Entry {
        double lambda;
        Eigen::VectorXd vec;
        bool clamped;
    };
    std::vector<Entry> entries;
    entries.reserve(k);
    for (Eigen::Index j = 0; j < r_dim; ++j) {
        double lam = esM.eigenvalues()[j];
        bool clamped = false;
        if (lam < 0.0) {
            clamped = lam < -1e-10;  // tiny negatives are routine rounding
            lam = 0.0;
        }
        if (lam > kEigenCeil) {
            lam = kEigenCeil;
            clamped = true;
        }
        entries.push_back({lam, W * esM.eigenvectors().col(j), clamped});
    }
    for (Eigen::Index idx : null_idx) {
        // Unit-norm null vector; S11-normalization is impossible here.
        entries.push_back({kEigenCeil, es11.eigenvectors().col(idx), true});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.lambda > b.lambda; });

    sol.eigenvalues.resize(k);
    sol.vectors.resize(k, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        sol.eigenvalues[j] = entries[j].lambda;
        sol.vectors.col(j) = entries[j].vec;
        if (entries[j].clamped) sol.boundary = true;
    }
    return sol;
}

JohansenResult johansen_trace_test(const std::vector<TimeSeries>& Y, const VecmSpec& spec,
                                   double level, I1Screen screen) {
    const auto k = static_cast<int>(Y.size());
    if (k > 12) throw_usage("johansen_trace_test: more than 12 series unsupported (table range)");
    const bool level_ok = std::abs(level - 0.10) < 1e-9 || std::abs(level - 0.05) < 1e-9 ||
                          std::abs(level - 0.01) < 1e-9;
    if (!level_ok) throw_usage("johansen_trace_test: level must be 0.10, 0.05 or 0.01");

    JohansenResult res;
    res.spec = spec;
    res.level = level;

    if (screen == I1Screen::Run) {
        for (const auto& s : Y) {
            const auto sm = adf_test(s, DeterministicSpec::SingleMean, 1);
            const auto tr = adf_test(s, DeterministicSpec::Trend, 1);
            if (sm.p_value < level || tr.p_value < level) {
                res.warnings.push_back("I(1) screen not satisfied for '" + s.label +
                                       "' (ADF single_mean p=" + std::to_string(sm.p_value) +
                                       ", trend p=" + std::to_string(tr.p_value) + ")");
            }
        }
    } else {
        res.warnings.push_back("I(1) screen asserted by caller, not re-run");
    }

    auto [R0, R1] = vecm_auxiliary(Y, spec);
    RrrSolution sol = solve_rrr_eigen(R0, R1);
    if (sol.singular)
        res.warnings.push_back("singular moment matrix (cond S11=" + std::to_string(sol.cond_s11) +
                               ", cond S00=" + std::to_string(sol.cond_s00) +
                               "); boundary eigenvalues reported");
    else if (sol.boundary)
        res.warnings.push_back("eigenvalue at boundary, clamped into [0, 1)");

    res.t_eff = Y[0].values.size() - spec.lag_p;
    res.eigenvalues = sol.eigenvalues;

    res.trace_stats.resize(k);
    res.p_values.resize(k);
    const double Td = static_cast<double>(res.t_eff);
    double tail = 0.0;
    for (int r = k - 1; r >= 0; --r) {
        tail += -Td * std::log1p(-sol.eigenvalues[r]);
        res.trace_stats[r] = tail;
    }
    res.selected_rank = k;
    for (int r = 0; r < k; ++r) {
        res.p_values[r] = trace_pvalue(res.trace_stats[r], k - r, spec.det);
        if (res.selected_rank == k && res.p_values[r] >= level) res.selected_rank = r;
    }

    // Report beta with first coefficient normalized to 1 and alpha rescaled
    // so that alpha * beta' is unchanged.
    res.beta = sol.vectors;
    res.alpha = (R0.transpose() * R1 / Td) * sol.vectors;  // S01 * V
    for (int j = 0; j < k; ++j) {
        const double c = res.beta(0, j);
        if (std::abs(c) < 1e-12 * res.beta.col(j).norm()) {
            res.warnings.push_back("beta column " + std::to_string(j) +
                                   " has ~zero first coefficient; left S11-normalized");
            continue;
        }
        res.beta.col(j) /= c;
        res.alpha.col(j) *= c;
    }
    return res;
}

TimeSeries cointegrating_residual(const TimeSeries& y1, const TimeSeries& y2,
                                  const JohansenResult& result) {
    if (result.selected_rank < 1)
        throw_refusal("cointegrating_residual: selected rank is 0, no relation to form");
    if (y1.values.size() != y2.values.size() || y1.start_index != y2.start_index)
        throw_usage("cointegrating_residual: series are not aligned");
    if (result.beta.rows() != 2)
        throw_usage("cointegrating_residual: result is not from a 2-series test");
    const double b0 = result.beta(0, 0);
    const double b1 = result.beta(1, 0);
    Eigen::VectorXd z = b0 * y1.values + b1 * y2.values;
    TimeSeries out = TimeSeries::make("coint_resid(" + y1.label + "," + y2.label + ")",
                                      y1.start_index, std::move(z));
    out.provenance = "derived: beta=(" + std::to_string(b0) + "," + std::to_string(b1) + ")";
    return out;
}

int select_var_order(const std::vector<TimeSeries>& Y, JohansenDet det, int max_p) {
    if (max_p < 1) throw_usage("select_var_order: max_p must be >= 1");
    const Eigen::MatrixXd levels = stack_series(Y);
    const Eigen::Index T = levels.rows();
    const Eigen::Index k = levels.cols();
    if (T < max_p + 10) throw_usage("select_var_order: sample too short");

    // Common estimation sample t = max_p .. T-1 so criteria are comparable.
    const Eigen::Index n = T - max_p;
    int best_p = 1;
    double best_aic = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= max_p; ++p) {
        const Eigen::Index n_det = det == JohansenDet::UnrestrictedConstant ? 1 : 0;
        Eigen::MatrixXd Z(n, n_det + static_cast<Eigen::Index>(p) * k);
        if (n_det) Z.col(0).setOnes();
        for (int j = 1; j <= p; ++j)
            Z.middleCols(n_det + static_cast<Eigen::Index>(j - 1) * k, k) =
                levels.middleRows(max_p - j, n);
        const Eigen::MatrixXd Yt = levels.bottomRows(n);
        const Eigen::MatrixXd E = partial_out(Yt, Z);
        const Eigen::MatrixXd Sigma = E.transpose() * E / static_cast<double>(n);
        const double det = Sigma.determinant();
        if (!(det > 0.0)) continue;  // degenerate residual covariance
        const double n_params = static_cast<double>(Z.cols() * k);
        const double aic = static_cast<double>(n) * std::log(det) + 2.0 * n_params;
        if (aic < best_aic) {
            best_aic = aic;
            best_p = p;
        }
    }
    return best_p;
}

}  // namespace spurion
