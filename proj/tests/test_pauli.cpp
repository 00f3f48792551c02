#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aiphase/pauli.hpp"
#include "aiphase/validators.hpp"
#include "support.hpp"

#include <cmath>

using namespace aiphase;
using pauli::PauliVector;
using C = std::complex<double>;

namespace {
PauliVector real_vec(double a0, double x, double y, double z) {
    PauliVector v;
    v.a0 = a0;
    v.ax = x;
    v.ay = y;
    v.az = z;
    return v;
}
}  // namespace

TEST_CASE("matrix round trip is a bijection") {
    for (int i = 0; i < 50; ++i) {
        PauliVector v;
        v.a0 = C(testsup::uniform(-1, 1), testsup::uniform(-1, 1));
        v.ax = C(testsup::uniform(-1, 1), testsup::uniform(-1, 1));
        v.ay = C(testsup::uniform(-1, 1), testsup::uniform(-1, 1));
        v.az = C(testsup::uniform(-1, 1), testsup::uniform(-1, 1));
        const PauliVector w = PauliVector::from_matrix(v.to_matrix());
        CHECK(std::abs(w.a0 - v.a0) < 1e-15);
        CHECK(std::abs(w.ax - v.ax) < 1e-15);
        CHECK(std::abs(w.ay - v.ay) < 1e-15);
        CHECK(std::abs(w.az - v.az) < 1e-15);
    }
}

TEST_CASE("exp_pauli basics") {
    const auto id = pauli::exp_pauli(real_vec(0, 0, 0, 0));
    CHECK((id.m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() == 0.0);

    // sigma3 rotation by pi/2: diag(i, -i)
    const auto rz = pauli::exp_pauli(real_vec(0, 0, 0, M_PI / 2));
    CHECK(std::abs(rz.m(0, 0) - C(0, 1)) < 1e-15);
    CHECK(std::abs(rz.m(1, 1) - C(0, -1)) < 1e-15);
    CHECK(std::abs(rz.m(0, 1)) < 1e-15);

    // generic generator against the Taylor-series oracle
    const PauliVector g = real_vec(0, 0.3, 0.4, 0.0);
    const Eigen::Matrix2cd oracle = testsup::taylor_expm(C(0, 1) * g.to_matrix());
    CHECK((pauli::exp_pauli(g).m - oracle).cwiseAbs().maxCoeff() < 1e-12);

    PauliVector bad = g;
    bad.ax = C(0.3, 0.2);
    CHECK_THROWS_AS(pauli::exp_pauli(bad), std::invalid_argument);
}

TEST_CASE("exp_pauli unitarity over random generators") {
    for (int i = 0; i < 1000; ++i) {
        const double a = testsup::uniform(0, M_PI);
        double nx = testsup::uniform(-1, 1), ny = testsup::uniform(-1, 1),
               nz = testsup::uniform(-1, 1);
        const double nn = std::sqrt(nx * nx + ny * ny + nz * nz) + 1e-300;
        const auto u = pauli::exp_pauli(
            real_vec(testsup::uniform(-3, 3), a * nx / nn, a * ny / nn, a * nz / nn));
        CHECK(u.unitarity_defect() < 1e-12);
        CHECK(u.det_defect() < 1e-12);
    }
}

TEST_CASE("compose_rotations") {
    const PauliVector n = real_vec(0, 0.2, 0, 0);
    const PauliVector zero = real_vec(0, 0, 0, 0);
    const PauliVector r0 = pauli::compose_rotations(n, zero);
    CHECK(r0.ax.real() == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(std::abs(r0.ay) + std::abs(r0.az) < 1e-15);

    // collinear angles add
    const PauliVector h = real_vec(0, M_PI / 4, 0, 0);
    const PauliVector sum = pauli::compose_rotations(h, h);
    CHECK(sum.ax.real() == doctest::Approx(M_PI / 2).epsilon(1e-14));

    // against direct 2x2 multiplication + principal-branch extraction
    const PauliVector m = real_vec(0, 0, 0, 0.3);
    const PauliVector r = pauli::compose_rotations(n, m);
    const Eigen::Matrix2cd prod = pauli::exp_pauli(n).m * pauli::exp_pauli(m).m;
    const double ct = 0.5 * (prod(0, 0) + prod(1, 1)).real();
    const Eigen::Vector3d sv(0.5 * ((prod(0, 1) + prod(1, 0)) / C(0, 1)).real(),
                             0.5 * ((prod(0, 1) - prod(1, 0))).real(),
                             0.5 * ((prod(0, 0) - prod(1, 1)) / C(0, 1)).real());
    const double t = std::atan2(sv.norm(), ct);
    const Eigen::Vector3d axis = sv / sv.norm();
    CHECK(std::abs(r.ax.real() - t * axis.x()) < 1e-12);
    CHECK(std::abs(r.ay.real() - t * axis.y()) < 1e-12);
    CHECK(std::abs(r.az.real() - t * axis.z()) < 1e-12);
}

TEST_CASE("compose then exponentiate equals the product, 1000 random pairs") {
    auto rand_gen = [] {
        const double a = testsup::uniform(0, M_PI);
        double nx = testsup::uniform(-1, 1), ny = testsup::uniform(-1, 1),
               nz = testsup::uniform(-1, 1);
        const double nn = std::sqrt(nx * nx + ny * ny + nz * nz) + 1e-300;
        return real_vec(0, a * nx / nn, a * ny / nn, a * nz / nn);
    };
    for (int i = 0; i < 1000; ++i) {
        const PauliVector n = rand_gen(), m = rand_gen();
        const PauliVector r = pauli::compose_rotations(n, m);
        const Eigen::Matrix2cd lhs = pauli::exp_pauli(r).m;
        const Eigen::Matrix2cd rhs = pauli::exp_pauli(n).m * pauli::exp_pauli(m).m;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("conjugate_sigma") {
    const PauliVector u0 = pauli::conjugate_sigma(0.0, 1, 2);
    CHECK(u0.ay.real() == doctest::Approx(1.0));
    CHECK(std::abs(u0.ax) + std::abs(u0.az) < 1e-15);

    // theta = pi/2, i=3, j=1 -> -sigma1
    const PauliVector f = pauli::conjugate_sigma(M_PI / 2, 3, 1);
    CHECK(f.ax.real() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(f.ay.real()) < 1e-12);

    // dense conjugation oracle, theta = 0.7, i=1, j=2
    const PauliVector got = pauli::conjugate_sigma(0.7, 1, 2);
    const Eigen::Matrix2cd u = pauli::exp_pauli(real_vec(0, 0.7, 0, 0)).m;
    const Eigen::Matrix2cd sj = real_vec(0, 0, 1, 0).to_matrix();
    const Eigen::Matrix2cd dense = u * sj * u.adjoint();
    CHECK((got.to_matrix() - dense).cwiseAbs().maxCoeff() < 1e-12);

    // hermitian and traceless in, hermitian and traceless out
    for (double th : {0.1, 0.9, 2.5}) {
        const PauliVector c = pauli::conjugate_sigma(th, 2, 3);
        CHECK(c.is_hermitian());
        CHECK(std::abs(c.a0) == 0.0);
    }

    CHECK_THROWS_AS(pauli::conjugate_sigma(0.3, 2, 2), std::invalid_argument);
}

TEST_CASE("magnus_terms: commuting family has vanishing M2, M3") {
    auto h = [](double t) {
        PauliVector v;
        v.az = 0.4 * std::sin(1.7 * t) + 0.1;
        return v;
    };
    const double bp[] = {0.5};
    const auto terms = pauli::magnus_terms(h, 0.0, 1.0, bp, 3);
    REQUIRE(terms.size() == 3);
    for (const auto& m : terms) CHECK(m.is_antihermitian(1e-13));
    CHECK(terms[1].coeff_max_norm() < 1e-12);
    CHECK(terms[2].coeff_max_norm() < 1e-12);

    // exp(M1) matches the time-ordered oracle
    const auto prop = validators::propagate_oracle(h, 0.0, 1.0, bp, 1e-12);
    const auto u = pauli::exp_pauli(C(0, -1) * terms[0]);
    CHECK((u.m - prop.unitary.m).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("magnus_terms: generic H, truncation error is 4th order") {
    auto scaled_h = [](double amp) {
        return [amp](double t) {
            PauliVector v;
            v.a0 = amp * 0.1 * std::sin(t);
            v.ax = amp * (0.3 * std::sin(1.3 * t));
            v.ay = amp * (0.2 * std::cos(0.7 * t) + 0.1);
            v.az = amp * (0.25 * std::sin(2.1 * t + 0.4));
            return v;
        };
    };
    double errs[2];
    const double amps[2] = {1.0, 0.5};
    for (int i = 0; i < 2; ++i) {
        auto h = scaled_h(amps[i]);
        const auto terms = pauli::magnus_terms(h, 0.0, 1.0, {}, 3);
        for (const auto& m : terms) CHECK(m.is_antihermitian(1e-12));
        PauliVector gen;
        for (const auto& m : terms) gen += C(0, -1) * m;
        const auto u = pauli::exp_pauli(gen);
        const auto prop = validators::propagate_oracle(h, 0.0, 1.0, {}, 1e-13);
        errs[i] = (u.m - prop.unitary.m).cwiseAbs().maxCoeff();
        // M3 must improve on M1+M2 for a non-commuting generator
        const PauliVector gen12 = C(0, -1) * terms[0] + C(0, -1) * terms[1];
        const double err12 =
            (pauli::exp_pauli(gen12).m - prop.unitary.m).cwiseAbs().maxCoeff();
        CHECK(errs[i] < err12);
    }
    // halving the amplitude cuts the M4-truncation residual by about 2^4
    CHECK(errs[0] / errs[1] > 8.0);
    CHECK(errs[0] < 2e-4);
}

TEST_CASE("magnus_terms rejects order > 3") {
    auto h = [](double) { return PauliVector{}; };
    CHECK_THROWS_AS(pauli::magnus_terms(h, 0.0, 1.0, {}, 4), std::invalid_argument);
}
