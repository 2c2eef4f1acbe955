// P-values for the Johansen trace statistic.
//
// The asymptotic null distribution for n = k - r remaining dimensions is
// approximated by a gamma law matched to its mean and variance (the
// moment-matching device of Doornik 1998). The embedded moments were
// calibrated by direct simulation of the limiting Brownian functionals
// (1.2e5 to 1e6 replications per cell at 1000- and 2000-step
// discretizations, Richardson-extrapolated in 1/T); for the
// unrestricted-constant case with n = 1 the limit is exactly chi-square(1)
// and the exact moments (1, 2) are used. The published critical values
// embedded below provide an independent cross-check of the approximation.
#include "spurion/johansen.hpp"

#include <cmath>

namespace spurion {

namespace {

// mean, variance of the asymptotic trace distribution, n = 1..12.
struct Moments {
    double mean;
    double var;
};

constexpr Moments kMomentsNoInt[12] = {
    {1.146983, 2.248083},     {6.112274, 10.708009},    {15.077172, 25.124688},
    {28.057459, 45.893795},   {45.030554, 72.016801},   {66.074961, 105.768263},
    {91.001339, 144.782741},  {119.929328, 188.461109}, {152.931952, 239.471054},
    {190.077982, 298.336180}, {231.026891, 362.124513}, {275.877924, 430.460323},
};

constexpr Moments kMomentsConst[12] = {
    {1.0, 2.0},               {8.317112, 14.554751},    {19.510590, 32.068058},
    {34.673518, 55.616324},   {53.730097, 83.860423},   {76.758154, 118.579809},
    {103.823266, 159.814785}, {134.927320, 206.778829}, {169.888619, 258.027837},
    {208.840292, 319.228843}, {251.703066, 378.749285}, {298.837139, 445.439186},
};

// Fallback critical values, n = 1..5: the standard published asymptotic
// trace points for the two deterministic cases (the n = 1
// unrestricted-constant entries are chi-square(1) quantiles).
constexpr double kCvNoInt5[5] = {4.1296, 12.3212, 24.2761, 40.1749, 60.0627};
constexpr double kCvNoInt1[5] = {6.9406, 16.3640, 29.5147, 46.5716, 67.6367};
constexpr double kCvConst5[5] = {3.8415, 15.4943, 29.7961, 47.8545, 69.8189};
constexpr double kCvConst1[5] = {6.6349, 19.9349, 35.4628, 54.6815, 77.8202};

// Regularized incomplete gamma, lower (P) by series, upper (Q) by the
// Lentz continued fraction.
double gammap_series(double a, double x) {
    double sum = 1.0 / a;
    double term = sum;
    for (int k = 1; k < 1000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gammaq_cf(double a, double x) {
    constexpr double eps = 1e-15;
    constexpr double fpmin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < 1000; ++k) {
        const double an = -static_cast<double>(k) * (static_cast<double>(k) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_upper_q(double a, double x) {
    if (x <= 0.0) return 1.0;
    return x < a + 1.0 ? 1.0 - gammap_series(a, x) : gammaq_cf(a, x);
}

}  // namespace

double trace_pvalue(double trace, int k_minus_r, JohansenDet det) {
    if (k_minus_r < 1 || k_minus_r > 12)
        throw_usage("trace_pvalue: k - r must be in [1, 12], got " + std::to_string(k_minus_r));
    if (!std::isfinite(trace) || trace < -1e-9)
        throw_usage("trace_pvalue: trace statistic must be a nonnegative number");
    const Moments& m = (det == JohansenDet::NoIntercept ? kMomentsNoInt : kMomentsConst)[k_minus_r - 1];
    const double shape = m.mean * m.mean / m.var;
    const double scale = m.var / m.mean;
    return gamma_upper_q(shape, std::max(trace, 0.0) / scale);
}

double trace_critical_value(int k_minus_r, JohansenDet det, double level) {
    if (k_minus_r < 1 || k_minus_r > 5)
        throw_usage("trace_critical_value: k - r must be in [1, 5]");
    const bool five = std::abs(level - 0.05) < 1e-9;
    const bool one = std::abs(level - 0.01) < 1e-9;
    if (!five && !one) throw_usage("trace_critical_value: level must be 0.05 or 0.01");
    if (det == JohansenDet::NoIntercept)
        return (five ? kCvNoInt5 : kCvNoInt1)[k_minus_r - 1];
    return (five ? kCvConst5 : kCvConst1)[k_minus_r - 1];
}

}  // namespace spurion
