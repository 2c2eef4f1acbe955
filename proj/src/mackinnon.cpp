// Dickey-Fuller tau p-values via the MacKinnon response surfaces.
//
// The asymptotic surface is the piecewise cubic-in-tau regression of the
// normal quantile of p (MacKinnon 1994), evaluated as p = Phi(poly(tau)).
// Finite samples shift tau by the difference between the asymptotic and the
// finite-sample 5% critical value from the MacKinnon (2010) response
// surfaces, cv(T) = b0 + b1/T + b2/T^2 + b3/T^3.
//
// The composite surface is materialized once per deterministic case as a
// strictly increasing lookup table on a fine tau grid; p-values interpolate
// linearly in tau and clamp to [1e-4, 0.9999] outside the tabulated range.
#include "spurion/unit_root.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace spurion {

namespace {

struct Surface {
    double tau_star;   // switch between the small-p and large-p polynomials
    double tau_min;    // below: clamp to 1e-4
    double tau_max;    // above: clamp to 0.9999
    std::array<double, 3> small_p;  // ascending powers
    std::array<double, 4> large_p;  // ascending powers
    std::array<double, 4> cv5;      // 5% critical-value response surface
};

// MacKinnon (1994) Table 3/4 coefficients (scaled to plain polynomials) and
// MacKinnon (2010) Table 1 response surfaces, univariate case.
constexpr Surface kZeroMean = {
    -1.04, -19.04, 4.00,
    {0.6344, 1.2378, 0.032496},
    {0.4797, 0.93557, -0.06999, 0.033066},
    {-1.94100, -0.2686, -3.365, 31.223},
};
constexpr Surface kSingleMean = {
    -1.61, -18.83, 2.74,
    {2.1659, 1.4412, 0.038269},
    {1.7339, 0.93202, -0.12745, -0.010368},
    {-2.86154, -2.8903, -4.234, -40.040},
};
constexpr Surface kTrend = {
    -2.89, -16.18, 0.70,
    {3.2512, 1.6047, 0.049588},
    {2.5261, 0.61654, -0.37956, -0.060285},
    {-3.41049, -4.3904, -9.036, -45.374},
};

constexpr double kPFloor = 1e-4;
constexpr double kPCeil = 0.9999;
constexpr double kGridStep = 0.005;

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double raw_pvalue(const Surface& s, double tau) {
    double z;
    if (tau <= s.tau_star) {
        z = s.small_p[0] + s.small_p[1] * tau + s.small_p[2] * tau * tau;
    } else {
        z = s.large_p[0] + s.large_p[1] * tau + s.large_p[2] * tau * tau +
            s.large_p[3] * tau * tau * tau;
    }
    return norm_cdf(z);
}

struct Table {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> p;  // strictly increasing on [lo, hi]
};

Table build_table(const Surface& s) {
    Table t;
    t.lo = s.tau_min;
    t.hi = s.tau_max;
    const auto npts = static_cast<std::size_t>((t.hi - t.lo) / kGridStep) + 2;
    t.p.reserve(npts);
    double prev = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        const double tau = t.lo + static_cast<double>(i) * kGridStep;
        double v = raw_pvalue(s, std::min(tau, t.hi));
        v = std::min(std::max(v, kPFloor), kPCeil);
        if (i > 0 && v <= prev) v = std::min(prev + 1e-12, kPCeil);
        t.p.push_back(v);
        prev = v;
    }
    return t;
}

const Surface& surface_for(DeterministicSpec spec) {
    switch (spec) {
        case DeterministicSpec::ZeroMean: return kZeroMean;
        case DeterministicSpec::SingleMean: return kSingleMean;
        case DeterministicSpec::Trend: return kTrend;
    }
    return kSingleMean;
}

const Table& table_for(DeterministicSpec spec) {
    static const Table zm = build_table(kZeroMean);
    static const Table sm = build_table(kSingleMean);
    static const Table tr = build_table(kTrend);
    switch (spec) {
        case DeterministicSpec::ZeroMean: return zm;
        case DeterministicSpec::SingleMean: return sm;
        case DeterministicSpec::Trend: return tr;
    }
    return sm;
}

// Shift that maps the finite-sample 5% point onto the asymptotic one.
double finite_sample_shift(const Surface& s, double nobs) {
    const double t1 = 1.0 / nobs;
    return -(s.cv5[1] * t1 + s.cv5[2] * t1 * t1 + s.cv5[3] * t1 * t1 * t1);
}

}  // namespace

std::string to_string(DeterministicSpec spec) {
    switch (spec) {
        case DeterministicSpec::ZeroMean: return "zero_mean";
        case DeterministicSpec::SingleMean: return "single_mean";
        case DeterministicSpec::Trend: return "trend";
    }
    return "?";
}

double df_pvalue(double tau, DeterministicSpec spec, Eigen::Index nobs, bool& clamped) {
    if (nobs < 10) throw_usage("df_pvalue: nobs must be >= 10");
    const Surface& s = surface_for(spec);
    const Table& t = table_for(spec);
    const double x = tau + finite_sample_shift(s, static_cast<double>(nobs));
    clamped = false;
    if (x <= t.lo) {
        clamped = true;
        return kPFloor;
    }
    if (x >= t.hi) {
        clamped = true;
        return kPCeil;
    }
    const double pos = (x - t.lo) / kGridStep;
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    const double p = t.p[i] + frac * (t.p[i + 1] - t.p[i]);
    return std::min(std::max(p, kPFloor), kPCeil);
}

double df_pvalue(double tau, DeterministicSpec spec, Eigen::Index nobs) {
    bool clamped = false;
    return df_pvalue(tau, spec, nobs, clamped);
}

}  // namespace spurion
