#pragma once

namespace aiphase::num {

// Kernels of the gradient-potential trajectories, analytic in gamma:
// cosh(sqrt(g) t) continues to cos(sqrt(-g) t) for g < 0, and the reduced
// forms below are evaluated by series near gamma*t^2 = 0 to avoid
// cancellation.

// cosh(sqrt(gamma) t)
double coshg(double gamma, double t);

// sinh(sqrt(gamma) t) / sqrt(gamma)   -> t as gamma -> 0
double sinhcg(double gamma, double t);

// (cosh(sqrt(gamma) t) - 1) / gamma   -> t^2/2 as gamma -> 0
double coshm1g(double gamma, double t);

// sinhcg(gamma, t) - t                -> gamma t^3/6
double sinhcg_m_t(double gamma, double t);

// coshm1g(gamma, t) - t^2/2           -> gamma t^4/24
double coshm1g_m_half_t2(double gamma, double t);

// Inverse of the standard normal CDF (Wichura-style rational approximation
// polished with one Halley step on erfc). Used for deterministic
// low-discrepancy Gaussian sampling.
double inverse_normal_cdf(double p);

// i-th element of the additive golden-ratio sequence on (0,1)
double kronecker_sequence(long i);

}  // namespace aiphase::num
