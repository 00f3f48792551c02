#include "aiphase/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace aiphase::num {

namespace {
constexpr double series_cut = 1e-2;  // on |gamma| t^2
}

double coshg(double gamma, double t) {
    const double x = gamma * t * t;
    if (std::abs(x) < series_cut)
        return 1.0 + x / 2.0 * (1.0 + x / 12.0 * (1.0 + x / 30.0 * (1.0 + x / 56.0)));
    if (gamma > 0.0) return std::cosh(std::sqrt(gamma) * t);
    return std::cos(std::sqrt(-gamma) * t);
}

double sinhcg(double gamma, double t) {
    const double x = gamma * t * t;
    if (std::abs(x) < series_cut)
        return t * (1.0 + x / 6.0 * (1.0 + x / 20.0 * (1.0 + x / 42.0 * (1.0 + x / 72.0))));
    if (gamma > 0.0) return std::sinh(std::sqrt(gamma) * t) / std::sqrt(gamma);
    return std::sin(std::sqrt(-gamma) * t) / std::sqrt(-gamma);
}

double coshm1g(double gamma, double t) {
    const double x = gamma * t * t;
    if (std::abs(x) < series_cut)
        return t * t / 2.0 * (1.0 + x / 12.0 * (1.0 + x / 30.0 * (1.0 + x / 56.0)));
    return (coshg(gamma, t) - 1.0) / gamma;
}

double sinhcg_m_t(double gamma, double t) {
    const double x = gamma * t * t;
    if (std::abs(x) < series_cut)
        return gamma * t * t * t / 6.0 *
               (1.0 + x / 20.0 * (1.0 + x / 42.0 * (1.0 + x / 72.0)));
    return sinhcg(gamma, t) - t;
}

double coshm1g_m_half_t2(double gamma, double t) {
    const double x = gamma * t * t;
    if (std::abs(x) < series_cut)
        return gamma * t * t * t * t / 24.0 *
               (1.0 + x / 30.0 * (1.0 + x / 56.0 * (1.0 + x / 90.0)));
    return coshm1g(gamma, t) - t * t / 2.0;
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("inverse_normal_cdf: p outside (0,1)");
    // rational approximation (Acklam), |error| < 1.15e-9, then one Halley step
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= phigh) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement on F(x) - p = 0 with F the normal CDF
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

double kronecker_sequence(long i) {
    // frac(1/2 + i/phi), phi the golden ratio
    const double inv_phi = 0.6180339887498949;
    double v = 0.5 + static_cast<double>(i) * inv_phi;
    return v - std::floor(v);
}

}  // namespace aiphase::num
