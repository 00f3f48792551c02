#pragma once

#include "aiphase/pulse.hpp"
#include "aiphase/scenario.hpp"

namespace aiphase::dynamics {

struct TrajectoryPoint {
    double z = 0.0;  // m
    double p = 0.0;  // kg m/s
};

// mean-path z(t), p(t) under V = m g z - m gamma z^2/2 (cosh/sinh branch for
// gamma > 0, trigonometric continuation for gamma < 0)
TrajectoryPoint classical_trajectory(const Scenario& sc, double t);

enum class DetuningMode { exact, expanded };

// Doppler-shifted detuning on the mean path
double detuning(const Scenario& sc, double t, DetuningMode mode = DetuningMode::exact);

// analytic bound on |exact - expanded| (next-order series terms)
double detuning_remainder_bound(const Scenario& sc, double t);

// c-number commutator value c_dd(t, t') = k v_r sqrt(gamma) sinh(sqrt(gamma)(t - t'))
double commutator_cdd(const AtomSpecies& atom, const LaserDrive& laser, double gamma,
                      double t, double tprime);

struct Phi2Psi2 {
    double phi2 = 0.0;
    double psi2 = 0.0;
};

// phi2 by piecewise quadrature (analytic antiderivative of delta on free
// segments, Gauss panels on pulses); psi2 by nested quadrature of
// c_dd sin(phi1) sin(phi1)/8
Phi2Psi2 phi2_psi2_quadrature(const pulse::PulseSequence& seq, const Scenario& sc);

// phi2(t) prefix, same evaluation scheme
double phi2_prefix(const pulse::PulseSequence& seq, const Scenario& sc, double t);

// closed form, terms grouped so the z0 dependence is a separable product
double phi2_closed_form(const pulse::PulseSequence& seq, const Scenario& sc);
// the z0 term of the closed form alone: -(k gamma z0) T^2 (1 - (2pi-4)/pi eta)
double phi2_closed_form_z0_term(const pulse::PulseSequence& seq, const Scenario& sc,
                                double z0);

// closed-form difference of two runs at initial positions z0_a, z0_b on the
// shared evaluation path: every term not involving z0 cancels symbolically,
// leaving the separable z0 products
double phi2_closed_form_difference(const pulse::PulseSequence& seq, const Scenario& sc,
                                   double z0_a, double z0_b);

// differential phase of two clouds separated by d (same initial velocity)
double gradiometer_phase(const pulse::PulseSequence& seq, const Scenario& sc, double d);

double transition_probability(double phi1_total, double phi2);

struct PulseCorrection {
    double delta_phi2 = 0.0;
    double contrast = 1.0;
    bool theta_in_regime = true;  // false once |theta| > 1 somewhere
};

// three-factor SU(2) product with explicit arguments
PulseCorrection pulse_correction_product(double theta0, double thetaT, double theta2T,
                                         double phi2_0, double phi2_T, double phi2_2T);

// scenario-level: theta(t) = tau delta(t)/2 and phi2(t) at the pulse centers
PulseCorrection pulse_correction_exact(const pulse::PulseSequence& seq, const Scenario& sc);

struct VelocityAverage {
    double mean = 0.0;
    double stderr_mean = 0.0;
    double max_abs = 0.0;
    int samples = 0;
};

// deterministic low-discrepancy average of delta_phi2 over a Gaussian
// initial-velocity distribution
VelocityAverage velocity_averaged_correction(const pulse::PulseSequence& seq,
                                             const Scenario& sc, int samples);

struct Separation {
    double dz_exact = 0.0;    // v_r * int sin(phi1) cosh(sqrt(g)(2T-t)) dt
    double dp_exact = 0.0;    // m v_r sqrt(g) * int sin(phi1) sinh(sqrt(g)(2T-t)) dt
    double dz_leading = 0.0;  // v_r gamma T^3 (1 - (2pi-4)/pi eta)
    double dp_leading = 0.0;  // m v_r gamma T^2 (1 - (2pi-4)/pi eta)
};

Separation separation_quadratic(const pulse::PulseSequence& seq, const Scenario& sc);

struct Compensation {
    double delta_k_over_k = 0.0;  // pi-pulse wavenumber change
    double dz_before = 0.0, dp_before = 0.0;
    double dz_after = 0.0, dp_after = 0.0;
};

// single-kick gradient compensation, delta v_r / v_r = -gamma T^2;
// residuals re-evaluated in the gamma-linear model
Compensation compensation_quadratic(const pulse::PulseSequence& seq, const Scenario& sc);

}  // namespace aiphase::dynamics
