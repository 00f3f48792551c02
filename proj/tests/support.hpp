// Shared test oracles, independent of the library's evaluation paths.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <random>

namespace testsup {

// brute-force matrix exponential: scaling and squaring + Taylor series
inline Eigen::Matrix2cd taylor_expm(const Eigen::Matrix2cd& a) {
    const double norm = a.cwiseAbs().maxCoeff();
    int squarings = 0;
    Eigen::Matrix2cd b = a;
    while (b.cwiseAbs().maxCoeff() > 0.25) {
        b /= 2.0;
        ++squarings;
    }
    Eigen::Matrix2cd term = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd sum = term;
    for (int n = 1; n < 40; ++n) {
        term = (term * b) / static_cast<double>(n);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18 * (1.0 + norm)) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

// classic RK4 for a scalar second-order system zdot = v, vdot = f(z, t)
inline void rk4_orbit(const std::function<double(double, double)>& accel, double& z,
                      double& v, double t0, double t1, int steps) {
    const double dt = (t1 - t0) / steps;
    for (int i = 0; i < steps; ++i) {
        const double t = t0 + i * dt;
        const double k1z = v, k1v = accel(z, t);
        const double k2z = v + dt / 2 * k1v, k2v = accel(z + dt / 2 * k1z, t + dt / 2);
        const double k3z = v + dt / 2 * k2v, k3v = accel(z + dt / 2 * k2z, t + dt / 2);
        const double k4z = v + dt * k3v, k4v = accel(z + dt * k3z, t + dt);
        z += dt / 6 * (k1z + 2 * k2z + 2 * k3z + k4z);
        v += dt / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
}

// dense fixed-step Simpson rule
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed);
    return gen;
}

inline double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng());
}

// least-squares slope of log|y| vs log|x|
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testsup
