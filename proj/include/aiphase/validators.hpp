#pragma once

#include "aiphase/pauli.hpp"
#include "aiphase/pulse.hpp"
#include "aiphase/scenario.hpp"

#include <functional>
#include <span>

namespace aiphase::validators {

struct PropagationResult {
    pauli::Unitary2 unitary;
    long step_count = 0;
    double error_estimate = 0.0;  // from step halving
};

// reference solver for i dU/dt = h(t) U, h = H/hbar hermitian; classic RK4
// with per-segment step doubling and a polar unitarity correction per segment
PropagationResult propagate_oracle(const std::function<pauli::PauliVector(double)>& h,
                                   double t0, double t1,
                                   std::span<const double> breakpoints, double tol);

// integral of (E+ - E-)/hbar = int delta(t) sin(phi1) dt by an independent
// method (Romberg), for cross-checking the phi2 quadrature
double dressed_state_phase(const pulse::PulseSequence& seq,
                           const std::function<double(double)>& delta_fn);

struct PathIntegralBreakdown {
    double laser_term = 0.0;
    double propagation_term = 0.0;
    double separation_term = 0.0;
    double total = 0.0;  // sum of the three
};

// path-integral comparator in the eta -> 0 limit: arm paths translated onto
// the mean path (momentum offsets +-hbar k/2, pi-pulse exchange), quadratic
// potential only
PathIntegralBreakdown path_integral_decomposition(const Scenario& sc, double T);

struct FiniteDurationBreakdown {
    double accmp = 0.0;        // (v_r/hbar) int S dV(z_m)
    double circulation = 0.0;  // (1/hbar) closed-path potential circulation
    double boundary = 0.0;     // p_m(2T) [z_u(2T) - z_l(2T)] / hbar
    double finite_duration = 0.0;  // -(1/hbar) int p_m delta_v
    double sum() const { return circulation + boundary + finite_duration; }
};

// three-term split of the potential part of phi2 with true kicked arms
// (kicks at the pulse centers)
FiniteDurationBreakdown finite_duration_decomposition(const pulse::PulseSequence& seq,
                                                      const Scenario& sc);

// classical arm trajectories under the quadratic potential with velocity
// kicks; shared by the comparators
struct ArmState {
    double z = 0.0, v = 0.0;
};
class ClassicalArm {
public:
    // kick_times/kick_dv applied in order when propagating past each time
    ClassicalArm(const Scenario& sc, double z0, double v0, std::vector<double> kick_times,
                 std::vector<double> kick_dv);
    ArmState at(double t) const;

private:
    const Scenario sc_;
    std::vector<double> times_;   // segment starts
    std::vector<ArmState> state_; // state at each segment start
};

}  // namespace aiphase::validators
