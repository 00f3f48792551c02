#pragma once

#include "aiphase/dynamics.hpp"
#include "aiphase/potential.hpp"
#include "aiphase/pulse.hpp"
#include "aiphase/scenario.hpp"

#include <vector>

namespace aiphase::perturb {

// All perturbative integrals run on the gamma = 0 mean path
// z_m(t) = z0 + v_m t - g t^2/2 (frame falling with constant acceleration g).
double mean_path_z(const Scenario& sc, double t);

struct EpsilonPhases {
    double eps0 = 0.0;  // global phase, (1/hbar) int V+ dt
    double eps2 = 0.0;  // (1/hbar) int V- dt; observable shift is 2*eps2
};

EpsilonPhases epsilon_phases(const pulse::PulseSequence& seq, const Scenario& sc,
                             const PerturbingPotential& V);

// 2*eps2(t) prefix for the full-Hamiltonian substitution
double epsilon2_prefix_x2(const pulse::PulseSequence& seq, const Scenario& sc,
                          const PerturbingPotential& V, double t);

struct SeriesResult {
    std::vector<double> partial_sums;  // partial sums of 2*eps2 through n = 0..max_n
    std::vector<double> terms;
    bool truncated_by_cap = false;  // derivative order hit the tabulated cap
};

// odd-derivative series, term n = (2/hbar) v_r^(2n+1)/(4n+2)!! int S^(2n+1) d^(2n+1)V
SeriesResult epsilon2_series(const pulse::PulseSequence& seq, const Scenario& sc,
                             const PerturbingPotential& V, int max_n);

struct SeparationReport {
    double dz = 0.0;          // m
    double dp = 0.0;          // kg m/s
    double ratio_time = 0.0;  // m*dz/dp, s
    bool ratio_defined = false;
    double kick_pi = 0.0;     // 1/m
    double kick_final = 0.0;  // 1/m
    double dz_residual = 0.0;
    double dp_residual = 0.0;
};

SeparationReport separation_perturbative(const pulse::PulseSequence& seq,
                                         const Scenario& sc,
                                         const PerturbingPotential& V);

// two-kick plan: pi-pulse kick zeroes dz, final-pulse kick completes dp
SeparationReport compensation_plan(const pulse::PulseSequence& seq, const Scenario& sc,
                                   const PerturbingPotential& V);

struct RegimeReport {
    double coherence_length = 0.0;  // sqrt(hbar T / m)
    double selection_length = 0.0;  // v_r * tau_select
    double ratio_coherence = 0.0;   // max |dV| over the coherence length / max |V|
    double ratio_selection = 0.0;
    bool ok = true;  // both ratios <= 0.1
};

RegimeReport regime_validator(const pulse::PulseSequence& seq, const Scenario& sc,
                              const PerturbingPotential& V);

// pulse correction with phi2(t) -> phi2(t) + 2 eps2(t) at the pulse centers
dynamics::PulseCorrection full_hamiltonian_substitution(const pulse::PulseSequence& seq,
                                                        const Scenario& sc,
                                                        const PerturbingPotential& V);

}  // namespace aiphase::perturb
