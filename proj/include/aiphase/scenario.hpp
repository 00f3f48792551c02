#pragma once

#include "aiphase/constants.hpp"

#include <optional>
#include <stdexcept>

namespace aiphase {

struct AtomSpecies {
    double mass = 0.0;  // kg
};

struct LaserDrive {
    double k = 0.0;          // 1/m, sum of Raman wavenumbers
    double alpha = 0.0;      // rad/s^2, chirp rate
    double detuning0 = 0.0;  // rad/s, Delta(0)
    // optional explicit residual k*g - alpha; avoids catastrophic cancellation
    // when alpha is tuned close to k*g
    std::optional<double> kg_minus_alpha;

    double residual(double g) const {
        return kg_minus_alpha ? *kg_minus_alpha : k * g - alpha;
    }
};

struct InitialKinematics {
    double z0 = 0.0;         // m
    double v0 = 0.0;         // m/s
    double sigma_v = 0.0;    // m/s, velocity spread from the selection pulse
    double tau_select = 0.0; // s
};

struct QuadraticPotential {
    double g = 0.0;      // m/s^2
    double gamma = 0.0;  // 1/s^2
};

struct PhaseBreakdown {
    double phi1_total = 0.0;  // rad
    double phi2 = 0.0;        // rad
    double psi2 = 0.0;        // rad
    double delta_phi2 = 0.0;  // rad
    double eps2_x2 = 0.0;     // rad, 2*eps2
    double contrast = 0.0;
    double p21 = 0.0;
};

struct Scenario {
    AtomSpecies atom;
    LaserDrive laser;
    InitialKinematics kin;
    QuadraticPotential pot;

    double recoil_velocity() const {
        if (atom.mass <= 0.0) throw std::invalid_argument("scenario: mass must be > 0");
        return hbar * laser.k / atom.mass;
    }
    // mean-path velocity v_m = v0 + v_r/2
    double mean_velocity() const { return kin.v0 + 0.5 * recoil_velocity(); }
    double velocity_spread() const {
        if (kin.sigma_v > 0.0) return kin.sigma_v;
        if (kin.tau_select > 0.0) return 1.0 / (laser.k * kin.tau_select);
        return 0.0;
    }
};

}  // namespace aiphase
