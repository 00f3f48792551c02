#include "aiphase/validators.hpp"

#include "aiphase/numerics.hpp"
#include "aiphase/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace aiphase::validators {

using num::coshg;
using num::coshm1g;
using num::sinhcg;

namespace {

Eigen::Matrix2cd polar_unitary(const Eigen::Matrix2cd& u) {
    // U (U^dag U)^(-1/2)
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(u.adjoint() * u);
    const Eigen::Vector2d ev = es.eigenvalues();
    Eigen::Matrix2cd inv_sqrt = es.eigenvectors() *
                                Eigen::Vector2cd(1.0 / std::sqrt(ev(0)), 1.0 / std::sqrt(ev(1)))
                                    .asDiagonal() *
                                es.eigenvectors().adjoint();
    return u * inv_sqrt;
}

Eigen::Matrix2cd rk4_unitary(const std::function<pauli::PauliVector(double)>& h,
                             Eigen::Matrix2cd u, double a, double b, long steps) {
    const std::complex<double> mi(0.0, -1.0);
    const double dt = (b - a) / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) {
        const double t = a + i * dt;
        const Eigen::Matrix2cd k1 = mi * h(t).to_matrix() * u;
        const Eigen::Matrix2cd k2 = mi * h(t + dt / 2).to_matrix() * (u + dt / 2 * k1);
        const Eigen::Matrix2cd k3 = mi * h(t + dt / 2).to_matrix() * (u + dt / 2 * k2);
        const Eigen::Matrix2cd k4 = mi * h(t + dt).to_matrix() * (u + dt * k3);
        u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
}

double triangle_S(double t, double T) { return t <= T ? t : 2.0 * T - t; }

}  // namespace

PropagationResult propagate_oracle(const std::function<pauli::PauliVector(double)>& h,
                                   double t0, double t1,
                                   std::span<const double> breakpoints, double tol) {
    std::vector<double> edges{t0};
    for (double b : breakpoints)
        if (b > t0 && b < t1) edges.push_back(b);
    edges.push_back(t1);
    std::sort(edges.begin(), edges.end());

    // per-segment base step counts scaled by the local generator norm
    std::vector<long> base(edges.size() - 1);
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        const double len = edges[i + 1] - edges[i];
        double rate = 0.0;
        for (int s = 0; s <= 4; ++s)
            rate = std::max(rate, h(edges[i] + len * s / 4.0).coeff_max_norm());
        base[i] = 8 + static_cast<long>(std::min(1e6, 2.0 * rate * len));
    }

    PropagationResult out;
    Eigen::Matrix2cd prev;
    bool have_prev = false;
    for (long mult = 1; mult <= (1L << 14); mult *= 2) {
        Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
        long steps = 0;
        for (size_t i = 0; i + 1 < edges.size(); ++i) {
            if (edges[i + 1] <= edges[i]) continue;
            u = rk4_unitary(h, u, edges[i], edges[i + 1], base[i] * mult);
            u = polar_unitary(u);
            steps += base[i] * mult;
        }
        if (have_prev) {
            const double diff = (u - prev).cwiseAbs().maxCoeff();
            if (diff <= tol) {
                out.unitary.m = u;
                out.step_count = steps;
                out.error_estimate = diff;
                return out;
            }
            out.error_estimate = diff;
        }
        prev = u;
        have_prev = true;
        out.step_count = steps;
    }
    throw quad::QuadratureError("propagate_oracle: tolerance unreachable",
                                out.error_estimate, tol);
}

double dressed_state_phase(const pulse::PulseSequence& seq,
                           const std::function<double(double)>& delta_fn) {
    // Romberg per smooth segment; independent of the Gauss-panel machinery
    const double tol = quad::default_tolerance();
    auto romberg = [&](double a, double b) {
        auto f = [&](double t) { return delta_fn(t) * std::sin(seq.phi1(t)); };
        constexpr int kmax = 22;
        std::vector<double> row(kmax), prev_row(kmax);
        double h = b - a;
        prev_row[0] = 0.5 * h * (f(a) + f(b));
        long n = 1;
        for (int k = 1; k < kmax; ++k) {
            h *= 0.5;
            n *= 2;
            double s = 0.0;
            for (long i = 1; i < n; i += 2) s += f(a + i * h);
            row[0] = 0.5 * prev_row[0] + h * s;
            double p4 = 4.0;
            for (int j = 1; j <= k; ++j) {
                row[j] = (p4 * row[j - 1] - prev_row[j - 1]) / (p4 - 1.0);
                p4 *= 4.0;
            }
            if (k > 3 && std::abs(row[k] - prev_row[k - 1]) <=
                             std::max(tol * std::abs(row[k]), 1e-16 * std::abs(b - a)))
                return row[k];
            std::swap(row, prev_row);
        }
        return prev_row[kmax - 1];
    };
    const auto& e = seq.edges();
    double total = 0.0;
    for (int i = 0; i < 5; ++i)
        if (e[i + 1] > e[i]) total += romberg(e[i], e[i + 1]);
    return total;
}

PathIntegralBreakdown path_integral_decomposition(const Scenario& sc, double T) {
    PathIntegralBreakdown out;
    const double gm = sc.pot.gamma, g = sc.pot.g;
    const double k = sc.laser.k;
    const double vr = sc.recoil_velocity();
    const double vm = sc.mean_velocity();
    const double m = sc.atom.mass;
    const double T2 = 2.0 * T;

    auto zm = [&](double t) {
        return sc.kin.z0 * coshg(gm, t) + vm * sinhcg(gm, t) - g * coshm1g(gm, t);
    };
    auto vzm = [&](double t) {
        return sc.kin.z0 * gm * sinhcg(gm, t) + vm * coshg(gm, t) - g * sinhcg(gm, t);
    };
    auto zu = [&](double t) { return zm(t) + 0.5 * vr * triangle_S(t, T); };
    auto zl = [&](double t) { return zm(t) - 0.5 * vr * triangle_S(t, T); };

    // laser phase at z = 0: primitive of Delta(t); alpha reconstructed from
    // the residual so an explicitly configured kg_minus_alpha stays exact
    const double alpha_eff = k * g - sc.laser.residual(g);
    auto phiL = [&](double t) { return sc.laser.detuning0 * t + 0.5 * alpha_eff * t * t; };
    const double d2_phiL = phiL(T2) - 2.0 * phiL(T) + phiL(0.0);
    out.laser_term = -d2_phiL - k * (zm(0.0) - zu(T) - zl(T) + zl(T2));

    // L_u - L_l along the mean-path arms; sign-split of +-v_r S/2
    auto dL = [&](double t) {
        const double s = t <= T ? 1.0 : -1.0;
        const double S = triangle_S(t, T);
        return m * vr * (vzm(t) * s - g * S + gm * zm(t) * S);
    };
    // the integrand is piecewise polynomial so the panels are exact; the
    // floor only has to sit above summation rounding noise
    const double scale = m * vr * (std::abs(vm) + g * T2 + 1.0) * T2;
    const std::array<double, 3> edges{0.0, T, T2};
    out.propagation_term =
        quad::integrate_segmented([&](double t) { return dL(t); },
                                  std::span<const double>(edges.data(), edges.size()),
                                  quad::default_tolerance(), 1e-14 * scale)
            .value /
        hbar;

    out.separation_term = -0.5 * k * (zu(T2) - zl(T2));
    out.total = out.laser_term + out.propagation_term + out.separation_term;
    return out;
}

ClassicalArm::ClassicalArm(const Scenario& sc, double z0, double v0,
                           std::vector<double> kick_times, std::vector<double> kick_dv)
    : sc_(sc) {
    if (kick_times.size() != kick_dv.size())
        throw std::invalid_argument("ClassicalArm: kick arrays mismatch");
    times_.push_back(0.0);
    state_.push_back({z0, v0});
    for (size_t i = 0; i < kick_times.size(); ++i) {
        ArmState s = at(kick_times[i]);
        s.v += kick_dv[i];
        times_.push_back(kick_times[i]);
        state_.push_back(s);
    }
}

ArmState ClassicalArm::at(double t) const {
    size_t seg = 0;
    while (seg + 1 < times_.size() && t > times_[seg + 1]) ++seg;
    const double dt = t - times_[seg];
    const double gm = sc_.pot.gamma, g = sc_.pot.g;
    const ArmState& s0 = state_[seg];
    ArmState s;
    s.z = s0.z * coshg(gm, dt) + s0.v * sinhcg(gm, dt) - g * coshm1g(gm, dt);
    s.v = s0.z * gm * sinhcg(gm, dt) + s0.v * coshg(gm, dt) - g * sinhcg(gm, dt);
    return s;
}

FiniteDurationBreakdown finite_duration_decomposition(const pulse::PulseSequence& seq,
                                                      const Scenario& sc) {
    FiniteDurationBreakdown out;
    const double T = seq.T(), T2 = 2.0 * T;
    const double vr = sc.recoil_velocity();
    const double m = sc.atom.mass;
    const double g = sc.pot.g, gm = sc.pot.gamma;
    const double tol = quad::default_tolerance();

    // arms split at t = 0 and exchange at the pi-pulse center
    const ClassicalArm upper(sc, sc.kin.z0, sc.kin.v0 + vr, {T}, {-vr});
    const ClassicalArm lower(sc, sc.kin.z0, sc.kin.v0, {T}, {+vr});
    const ClassicalArm mean(sc, sc.kin.z0, sc.mean_velocity(), {}, {});

    auto V = [&](double z) { return m * g * z - 0.5 * m * gm * z * z; };
    auto dV = [&](double z) { return m * g - m * gm * z; };

    std::vector<double> edges(seq.edges().begin(), seq.edges().end());
    if (std::find(edges.begin(), edges.end(), T) == edges.end()) {
        edges.push_back(T);
        std::sort(edges.begin(), edges.end());
    }
    const std::span<const double> esp(edges.data(), edges.size());

    const double escale = m * (g + std::abs(gm) * 1.0) * vr * T2 * T2 + 1e-300;

    out.accmp = vr / hbar *
                quad::integrate_segmented(
                    [&](double t) {
                        return pulse::sensitivity_primitive(seq, t) * dV(mean.at(t).z);
                    },
                    esp, tol, 1e-16 * escale)
                    .value;
    out.circulation = quad::integrate_segmented(
                          [&](double t) { return V(upper.at(t).z) - V(lower.at(t).z); },
                          esp, tol, 1e-16 * escale)
                          .value /
                      hbar;
    const double dz2T = upper.at(T2).z - lower.at(T2).z;
    out.boundary = m * mean.at(T2).v * dz2T / hbar;
    out.finite_duration = -quad::integrate_segmented(
                              [&](double t) {
                                  const double dv = (upper.at(t).v - lower.at(t).v) -
                                                    vr * std::sin(seq.phi1(t));
                                  return m * mean.at(t).v * dv;
                              },
                              esp, tol, 1e-16 * escale)
                              .value /
                          hbar;
    return out;
}

}  // namespace aiphase::validators
