#include "aiphase/pauli.hpp"

#include "aiphase/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aiphase::pauli {

namespace {
const complexd I{0.0, 1.0};

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

void require_real(const PauliVector& v, const char* who) {
    const double imag = std::max({std::abs(v.a0.imag()), std::abs(v.ax.imag()),
                                  std::abs(v.ay.imag()), std::abs(v.az.imag())});
    if (imag > 1e-12 * std::max(1.0, v.coeff_max_norm()))
        throw std::invalid_argument(std::string(who) + ": coefficients must be real");
}
}  // namespace

PauliVector PauliVector::from_matrix(const Eigen::Matrix2cd& m) {
    PauliVector v;
    v.a0 = 0.5 * (m(0, 0) + m(1, 1));
    v.az = 0.5 * (m(0, 0) - m(1, 1));
    v.ax = 0.5 * (m(0, 1) + m(1, 0));
    v.ay = 0.5 * I * (m(0, 1) - m(1, 0));
    return v;
}

Eigen::Matrix2cd PauliVector::to_matrix() const {
    Eigen::Matrix2cd m;
    m(0, 0) = a0 + az;
    m(1, 1) = a0 - az;
    m(0, 1) = ax - I * ay;
    m(1, 0) = ax + I * ay;
    return m;
}

bool PauliVector::is_hermitian(double tol) const {
    return std::max({std::abs(a0.imag()), std::abs(ax.imag()), std::abs(ay.imag()),
                     std::abs(az.imag())}) <= tol;
}

bool PauliVector::is_antihermitian(double tol) const {
    return std::max({std::abs(a0.real()), std::abs(ax.real()), std::abs(ay.real()),
                     std::abs(az.real())}) <= tol;
}

double PauliVector::coeff_max_norm() const {
    return std::max({std::abs(a0), std::abs(ax), std::abs(ay), std::abs(az)});
}

double PauliVector::vector_norm_real() const {
    return std::sqrt(ax.real() * ax.real() + ay.real() * ay.real() + az.real() * az.real());
}

PauliVector& PauliVector::operator+=(const PauliVector& o) {
    a0 += o.a0;
    ax += o.ax;
    ay += o.ay;
    az += o.az;
    return *this;
}

PauliVector commutator(const PauliVector& a, const PauliVector& b) {
    PauliVector c;
    c.ax = 2.0 * I * (a.ay * b.az - a.az * b.ay);
    c.ay = 2.0 * I * (a.az * b.ax - a.ax * b.az);
    c.az = 2.0 * I * (a.ax * b.ay - a.ay * b.ax);
    return c;
}

double Unitary2::unitarity_defect() const {
    return ((m.adjoint() * m) - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

double Unitary2::det_defect() const { return std::abs(std::abs(m.determinant()) - 1.0); }

Unitary2 exp_pauli(const PauliVector& g) {
    require_real(g, "exp_pauli");
    const double a0 = g.a0.real();
    const Vec3 n(g.ax.real(), g.ay.real(), g.az.real());
    const double nn = n.norm();
    // sin(n)/n stays finite through n = 0
    double sinc;
    if (nn < 1e-8) {
        const double n2 = nn * nn;
        sinc = 1.0 - n2 / 6.0 + n2 * n2 / 120.0;
    } else {
        sinc = std::sin(nn) / nn;
    }
    const complexd phase = std::exp(I * a0);
    Unitary2 u;
    Eigen::Matrix2cd sig;
    sig(0, 0) = n.z();
    sig(1, 1) = -n.z();
    sig(0, 1) = n.x() - I * n.y();
    sig(1, 0) = n.x() + I * n.y();
    u.m = phase * (std::cos(nn) * Eigen::Matrix2cd::Identity() + I * sinc * sig);
    return u;
}

PauliVector compose_rotations(const PauliVector& n, const PauliVector& m) {
    require_real(n, "compose_rotations");
    require_real(m, "compose_rotations");
    const Vec3 nv(n.ax.real(), n.ay.real(), n.az.real());
    const Vec3 mv(m.ax.real(), m.ay.real(), m.az.real());
    const double na = nv.norm(), ma = mv.norm();
    const Vec3 nh = na > 0.0 ? Vec3(nv / na) : Vec3::Zero();
    const Vec3 mh = ma > 0.0 ? Vec3(mv / ma) : Vec3::Zero();
    const double sn = std::sin(na), cn = std::cos(na);
    const double sm = std::sin(ma), cm = std::cos(ma);

    // product components: exp(i n.s) exp(i m.s) = u0 I + i u.s
    const double u0 = cn * cm - nh.dot(mh) * sn * sm;
    const Vec3 u = nh * (sn * cm) + mh * (cn * sm) - nh.cross(mh) * (sn * sm);

    // principal-branch extraction: angle in [0, pi]
    const double ua = u.norm();
    const double theta = std::atan2(ua, u0);
    Vec3 axis;
    if (ua > 1e-14) {
        axis = u / ua;
    } else if (na > 0.0) {  // near-identity or near -I: axis ill-defined
        axis = nh;
    } else if (ma > 0.0) {
        axis = mh;
    } else {
        axis = Vec3::UnitZ();
    }
    const Vec3 r = theta * axis;
    PauliVector out;
    out.a0 = n.a0 + m.a0;
    out.ax = r.x();
    out.ay = r.y();
    out.az = r.z();
    return out;
}

PauliVector conjugate_sigma(double theta, int i, int j) {
    if (i < 1 || i > 3 || j < 1 || j > 3) throw std::invalid_argument("conjugate_sigma: axes in {1,2,3}");
    if (i == j) throw std::invalid_argument("conjugate_sigma: i == j is an identity conjugation");
    // sigma_j cos 2t - eps_ijk sigma_k sin 2t
    const int k = 6 - i - j;  // the remaining axis
    // parity of (i,j,k) as a permutation of (1,2,3)
    int eps = 1;
    int p[3] = {i, j, k};
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (p[a] > p[b]) {
                std::swap(p[a], p[b]);
                eps = -eps;
            }
    PauliVector out;
    double vals[4] = {0.0, 0.0, 0.0, 0.0};
    vals[j] = std::cos(2.0 * theta);
    vals[k] = -eps * std::sin(2.0 * theta);
    out.ax = vals[1];
    out.ay = vals[2];
    out.az = vals[3];
    return out;
}

namespace {

// Prefix state for the nested Magnus integrals, h(t) = a0(t) I + a(t).sigma:
//   A = int a,            C = int a x A,        E = int a x C,
//   D = int a A^T,        s = int A.a,          F = int (D - s I) a,
//   a0i = int a0.
// Then M1 = -i (a0i I + A.s), M2 = -i C.s, M3 = -(2i/3) (E + F).s.
struct MagnusState {
    Vec3 A = Vec3::Zero(), C = Vec3::Zero(), E = Vec3::Zero(), F = Vec3::Zero();
    Mat3 D = Mat3::Zero();
    double s = 0.0, a0i = 0.0;

    MagnusState& axpy(double h, const MagnusState& d) {
        A += h * d.A;
        C += h * d.C;
        E += h * d.E;
        F += h * d.F;
        D += h * d.D;
        s += h * d.s;
        a0i += h * d.a0i;
        return *this;
    }
};

MagnusState derivative(const MagnusState& y, const Vec3& a, double a0) {
    MagnusState d;
    d.A = a;
    d.C = a.cross(y.A);
    d.E = a.cross(y.C);
    d.D = a * y.A.transpose();
    d.s = y.A.dot(a);
    d.F = y.D * a - y.s * a;
    d.a0i = a0;
    return d;
}

MagnusState rk4_segment(const std::function<PauliVector(double)>& h, MagnusState y,
                        double a, double b, int steps) {
    const double dt = (b - a) / steps;
    for (int i = 0; i < steps; ++i) {
        const double t = a + i * dt;
        auto eval = [&](double tt, const MagnusState& s) {
            const PauliVector p = h(tt);
            return derivative(s, Vec3(p.ax.real(), p.ay.real(), p.az.real()), p.a0.real());
        };
        const MagnusState k1 = eval(t, y);
        MagnusState y2 = y;
        y2.axpy(dt / 2.0, k1);
        const MagnusState k2 = eval(t + dt / 2.0, y2);
        MagnusState y3 = y;
        y3.axpy(dt / 2.0, k2);
        const MagnusState k3 = eval(t + dt / 2.0, y3);
        MagnusState y4 = y;
        y4.axpy(dt, k3);
        const MagnusState k4 = eval(t + dt, y4);
        y.axpy(dt / 6.0, k1).axpy(dt / 3.0, k2).axpy(dt / 3.0, k3).axpy(dt / 6.0, k4);
    }
    return y;
}

double state_dist(const MagnusState& x, const MagnusState& y) {
    double d = std::abs(x.a0i - y.a0i);
    d = std::max(d, (x.A - y.A).cwiseAbs().maxCoeff());
    d = std::max(d, (x.C - y.C).cwiseAbs().maxCoeff());
    d = std::max(d, (x.E - y.E).cwiseAbs().maxCoeff());
    d = std::max(d, (x.F - y.F).cwiseAbs().maxCoeff());
    return d;
}

}  // namespace

std::vector<PauliVector> magnus_terms(const std::function<PauliVector(double)>& h_over_hbar,
                                      double t0, double t1,
                                      std::span<const double> breakpoints, int order,
                                      double tol) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("magnus_terms: order must be in 1..3");

    std::vector<double> edges{t0};
    for (double b : breakpoints)
        if (b > t0 && b < t1) edges.push_back(b);
    edges.push_back(t1);
    std::sort(edges.begin(), edges.end());

    MagnusState prev, cur;
    int steps = 8;
    const int max_steps = 1 << 16;
    bool first = true;
    for (;; steps *= 2) {
        cur = MagnusState{};
        for (size_t i = 0; i + 1 < edges.size(); ++i)
            cur = rk4_segment(h_over_hbar, cur, edges[i], edges[i + 1], steps);
        if (!first && state_dist(cur, prev) <= tol) break;
        if (steps > max_steps)
            throw quad::QuadratureError("magnus_terms: no convergence", state_dist(cur, prev), tol);
        prev = cur;
        first = false;
    }

    std::vector<PauliVector> out;
    PauliVector m1;
    m1.a0 = -I * cur.a0i;
    m1.ax = -I * cur.A.x();
    m1.ay = -I * cur.A.y();
    m1.az = -I * cur.A.z();
    out.push_back(m1);
    if (order >= 2) {
        PauliVector m2;
        m2.ax = -I * cur.C.x();
        m2.ay = -I * cur.C.y();
        m2.az = -I * cur.C.z();
        out.push_back(m2);
    }
    if (order >= 3) {
        const Vec3 v = cur.E + cur.F;
        PauliVector m3;
        m3.ax = -I * (2.0 / 3.0) * v.x();
        m3.ay = -I * (2.0 / 3.0) * v.y();
        m3.az = -I * (2.0 / 3.0) * v.z();
        out.push_back(m3);
    }
    return out;
}

}  // namespace aiphase::pauli
