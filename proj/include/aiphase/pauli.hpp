#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace aiphase::pauli {

using complexd = std::complex<double>;

// Coefficient form of a 2x2 operator, A = a0 I + ax s1 + ay s2 + az s3.
// This representation is canonical; dense matrices are a view of it.
struct PauliVector {
    complexd a0{0.0, 0.0}, ax{0.0, 0.0}, ay{0.0, 0.0}, az{0.0, 0.0};

    static PauliVector from_matrix(const Eigen::Matrix2cd& m);
    Eigen::Matrix2cd to_matrix() const;

    // hermitian iff all four coefficients are real
    bool is_hermitian(double tol = 1e-12) const;
    // anti-hermitian iff all four coefficients are purely imaginary
    bool is_antihermitian(double tol = 1e-12) const;

    double coeff_max_norm() const;
    double vector_norm_real() const;  // |(Re ax, Re ay, Re az)|

    PauliVector& operator+=(const PauliVector& o);
    friend PauliVector operator+(PauliVector a, const PauliVector& b) { return a += b; }
    friend PauliVector operator*(complexd s, const PauliVector& v) {
        return {s * v.a0, s * v.ax, s * v.ay, s * v.az};
    }
};

// [A, B] = 2i (a x b) . sigma; identity parts drop out
PauliVector commutator(const PauliVector& a, const PauliVector& b);

struct Unitary2 {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    double unitarity_defect() const;  // ||U*U - I||_max
    double det_defect() const;        // | |det| - 1 |
};

// exp(i (a0 I + n . sigma)) for a real-coefficient generator;
// n = 0 handled without division. Non-real coefficients are rejected.
Unitary2 exp_pauli(const PauliVector& generator);

// r with exp(i n.sigma) exp(i m.sigma) = exp(i (r0 I + r.sigma)), principal
// branch (|r| in [0, pi]). Identity coefficients add.
PauliVector compose_rotations(const PauliVector& n, const PauliVector& m);

// exp(i theta s_i) s_j exp(-i theta s_i) for i != j
PauliVector conjugate_sigma(double theta, int i, int j);

// First Magnus terms for i dU/dt = h(t) U with h = H/hbar hermitian
// (real-coefficient PauliVector). Returns {M1, ..., M_order}; each term is
// anti-hermitian. The nested commutator integrals reduce to prefix
// quantities integrated alongside; steps per smooth segment double until the
// coefficients move by less than tol in max norm.
std::vector<PauliVector> magnus_terms(const std::function<PauliVector(double)>& h_over_hbar,
                                      double t0, double t1,
                                      std::span<const double> breakpoints, int order,
                                      double tol = 1e-11);

}  // namespace aiphase::pauli
