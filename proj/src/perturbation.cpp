#include "aiphase/perturbation.hpp"

#include "aiphase/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aiphase::perturb {

namespace {

double double_factorial(int n) {
    double f = 1.0;
    for (int v = n; v > 1; v -= 2) f *= v;
    return f;
}

// integrate f over the pulse segmentation up to t
double integrate_prefix(const pulse::PulseSequence& seq,
                        const std::function<double(double)>& f, double t,
                        double abs_floor) {
    const auto& e = seq.edges();
    const double tol = quad::default_tolerance();
    double acc = 0.0;
    for (int i = 0; i < 5 && t > e[i]; ++i) {
        const double b = std::min(t, e[i + 1]);
        if (b <= e[i]) continue;
        acc += quad::integrate(f, e[i], b, tol, abs_floor).value;
    }
    return acc;
}

double potential_scale(const Scenario& sc, const pulse::PulseSequence& seq,
                       const PerturbingPotential& V) {
    if (V.is_zero()) return 0.0;
    double vmax = 0.0;
    for (int i = 0; i <= 64; ++i) {
        const double t = 2.0 * seq.T() * i / 64.0;
        const double z = mean_path_z(sc, t);
        const double zc = std::clamp(z, V.z_min(), V.z_max());
        vmax = std::max(vmax, std::abs(V.value(zc)));
    }
    return vmax;
}

}  // namespace

double mean_path_z(const Scenario& sc, double t) {
    return sc.kin.z0 + sc.mean_velocity() * t - 0.5 * sc.pot.g * t * t;
}

EpsilonPhases epsilon_phases(const pulse::PulseSequence& seq, const Scenario& sc,
                             const PerturbingPotential& V) {
    EpsilonPhases out;
    if (V.is_zero()) return out;
    const double vr = sc.recoil_velocity();
    const double floor = 1e-16 * potential_scale(sc, seq, V) * 2.0 * seq.T();
    out.eps0 = integrate_prefix(
                   seq,
                   [&](double t) {
                       return v_plus_minus(V, mean_path_z(sc, t),
                                           0.5 * vr * pulse::sensitivity_primitive(seq, t))
                           .first;
                   },
                   2.0 * seq.T(), floor) /
               hbar;
    out.eps2 = integrate_prefix(
                   seq,
                   [&](double t) {
                       return v_plus_minus(V, mean_path_z(sc, t),
                                           0.5 * vr * pulse::sensitivity_primitive(seq, t))
                           .second;
                   },
                   2.0 * seq.T(), floor) /
               hbar;
    return out;
}

double epsilon2_prefix_x2(const pulse::PulseSequence& seq, const Scenario& sc,
                          const PerturbingPotential& V, double t) {
    if (V.is_zero()) return 0.0;
    const double vr = sc.recoil_velocity();
    const double floor = 1e-16 * potential_scale(sc, seq, V) * 2.0 * seq.T();
    return 2.0 *
           integrate_prefix(
               seq,
               [&](double u) {
                   return v_plus_minus(V, mean_path_z(sc, u),
                                       0.5 * vr * pulse::sensitivity_primitive(seq, u))
                       .second;
               },
               t, floor) /
           hbar;
}

SeriesResult epsilon2_series(const pulse::PulseSequence& seq, const Scenario& sc,
                             const PerturbingPotential& V, int max_n) {
    if (max_n < 0) throw std::invalid_argument("epsilon2_series: max_n < 0");
    SeriesResult res;
    const double vr = sc.recoil_velocity();
    const int degree = V.polynomial_degree();
    double sum = 0.0;
    for (int n = 0; n <= max_n; ++n) {
        const int d = 2 * n + 1;
        double term = 0.0;
        if (d > V.derivative_cap()) {
            res.truncated_by_cap = true;
        } else if (degree >= 0 && d > degree) {
            term = 0.0;  // polynomial terminated exactly
        } else if (!V.is_zero()) {
            auto f = [&](double t) {
                const double S = pulse::sensitivity_primitive(seq, t);
                return std::pow(S, d) * V.derivative(mean_path_z(sc, t), d);
            };
            double fscale = 0.0;
            for (int i = 0; i <= 32; ++i)
                fscale = std::max(fscale, std::abs(f(2.0 * seq.T() * i / 32.0)));
            const double integral =
                integrate_prefix(seq, f, 2.0 * seq.T(), 1e-13 * fscale * 2.0 * seq.T());
            term = 2.0 / hbar * std::pow(vr, d) / double_factorial(4 * n + 2) * integral;
        }
        sum += term;
        res.terms.push_back(term);
        res.partial_sums.push_back(sum);
    }
    return res;
}

SeparationReport separation_perturbative(const pulse::PulseSequence& seq,
                                         const Scenario& sc,
                                         const PerturbingPotential& V) {
    SeparationReport rep;
    const double T2 = 2.0 * seq.T();
    const double vr = sc.recoil_velocity();
    const double m = sc.atom.mass;
    const double floor = 1e-18;
    rep.dz = vr / m *
             integrate_prefix(
                 seq,
                 [&](double t) {
                     return (T2 - t) * pulse::sensitivity_primitive(seq, t) *
                            V.derivative(mean_path_z(sc, t), 2);
                 },
                 T2, floor);
    rep.dp = vr * integrate_prefix(
                      seq,
                      [&](double t) {
                          return pulse::sensitivity_primitive(seq, t) *
                                 V.derivative(mean_path_z(sc, t), 2);
                      },
                      T2, floor);
    if (std::abs(rep.dp) > 0.0) {
        rep.ratio_time = m * rep.dz / rep.dp;
        rep.ratio_defined = true;
    }
    return rep;
}

SeparationReport compensation_plan(const pulse::PulseSequence& seq, const Scenario& sc,
                                   const PerturbingPotential& V) {
    SeparationReport rep = separation_perturbative(seq, sc, V);
    const double m = sc.atom.mass;
    const double ST = pulse::sensitivity_primitive(seq, seq.T());
    if (std::abs(ST) < 1e-12 * seq.T())
        throw std::runtime_error("compensation_plan: degenerate geometry, S(T) ~ 0");
    // dz(k1) = dz - (2 hbar/m) S(T) k1 ;  dp(k1,k2) = dp - 2 hbar k1 - hbar k2
    rep.kick_pi = m * rep.dz / (2.0 * hbar * ST);
    rep.kick_final = (rep.dp - 2.0 * hbar * rep.kick_pi) / hbar;
    rep.dz_residual = rep.dz - 2.0 * hbar / m * ST * rep.kick_pi;
    rep.dp_residual = rep.dp - 2.0 * hbar * rep.kick_pi - hbar * rep.kick_final;
    return rep;
}

RegimeReport regime_validator(const pulse::PulseSequence& seq, const Scenario& sc,
                              const PerturbingPotential& V) {
    RegimeReport rep;
    rep.coherence_length = std::sqrt(hbar * seq.T() / sc.atom.mass);
    rep.selection_length = sc.recoil_velocity() * sc.kin.tau_select;
    if (V.is_zero()) return rep;

    const int samples = 512;
    double vmax = 0.0, dc = 0.0, ds = 0.0;
    auto clamped = [&](double z) { return std::clamp(z, V.z_min(), V.z_max()); };
    for (int i = 0; i <= samples; ++i) {
        const double t = 2.0 * seq.T() * i / samples;
        const double z = clamped(mean_path_z(sc, t));
        const double v = V.value(z);
        vmax = std::max(vmax, std::abs(v));
        dc = std::max(dc, std::abs(V.value(clamped(z + rep.coherence_length)) - v));
        if (rep.selection_length > 0.0)
            ds = std::max(ds, std::abs(V.value(clamped(z + rep.selection_length)) - v));
    }
    if (vmax > 0.0) {
        rep.ratio_coherence = dc / vmax;
        rep.ratio_selection = ds / vmax;
    }
    rep.ok = rep.ratio_coherence <= 0.1 && rep.ratio_selection <= 0.1;
    return rep;
}

dynamics::PulseCorrection full_hamiltonian_substitution(const pulse::PulseSequence& seq,
                                                        const Scenario& sc,
                                                        const PerturbingPotential& V) {
    const double T = seq.T(), tau = seq.tau();
    const double centers[3] = {tau / 2.0, T, 2.0 * T - tau / 2.0};
    double theta[3], phi2c[3];
    for (int i = 0; i < 3; ++i) {
        theta[i] = 0.5 * tau * dynamics::detuning(sc, centers[i]);
        phi2c[i] = dynamics::phi2_prefix(seq, sc, centers[i]) +
                   epsilon2_prefix_x2(seq, sc, V, centers[i]);
    }
    return dynamics::pulse_correction_product(theta[0], theta[1], theta[2], phi2c[0],
                                              phi2c[1], phi2c[2]);
}

}  // namespace aiphase::perturb
