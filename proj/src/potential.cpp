#include "aiphase/potential.hpp"

#include <gsl/gsl_bspline.h>
#include <gsl/gsl_linalg.h>
#include <gsl/gsl_matrix.h>
#include <gsl/gsl_multifit.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aiphase::perturb {

namespace {
// degree-7 smoothing spline: C^6, so the capped order-5 derivative stays
// smooth enough for panel quadrature
constexpr int spline_order = 8;
constexpr int spline_deriv_cap = 5;
}  // namespace

struct PerturbingPotential::Spline {
    gsl_bspline_workspace* w = nullptr;
    gsl_vector* c = nullptr;   // fitted coefficients
    gsl_matrix* dB = nullptr;  // derivative evaluation buffer
    double zmin = 0.0, zmax = 0.0;

    ~Spline() {
        if (dB) gsl_matrix_free(dB);
        if (c) gsl_vector_free(c);
        if (w) gsl_bspline_free(w);
    }

    double eval(double z, int order) const {
        size_t istart = 0, iend = 0;
        gsl_bspline_deriv_eval_nonzero(z, spline_deriv_cap, dB, &istart, &iend, w);
        double out = 0.0;
        for (size_t i = istart; i <= iend; ++i)
            out += gsl_vector_get(c, i) * gsl_matrix_get(dB, i - istart, order);
        return out;
    }
};

PerturbingPotential::PerturbingPotential() = default;

PerturbingPotential PerturbingPotential::polynomial(std::vector<double> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
    for (double c : coeffs)
        if (!std::isfinite(c)) throw std::invalid_argument("potential: non-finite coefficient");
    PerturbingPotential p;
    p.coeffs_ = std::move(coeffs);
    return p;
}

PerturbingPotential PerturbingPotential::tabulated(std::vector<double> z,
                                                   std::vector<double> v) {
    if (z.size() != v.size() || z.size() < static_cast<size_t>(spline_order) + 2)
        throw std::invalid_argument("potential: tabulated data needs >= 10 samples");
    for (size_t i = 0; i + 1 < z.size(); ++i)
        if (z[i + 1] <= z[i])
            throw std::invalid_argument("potential: tabulated z must strictly increase");

    auto sp = std::make_shared<Spline>();
    sp->zmin = z.front();
    sp->zmax = z.back();
    const size_t n = z.size();
    // one breakpoint per ~8 samples keeps the fit smoothing rather than
    // interpolating; capped so huge datasets stay cheap to fit
    const size_t nbreak =
        std::max<size_t>(2, std::min({n / 8 + 2, n - spline_order + 1, size_t{128}}));
    sp->w = gsl_bspline_alloc(spline_order, nbreak);
    gsl_bspline_knots_uniform(sp->zmin, sp->zmax, sp->w);

    const size_t ncoef = gsl_bspline_ncoeffs(sp->w);
    sp->dB = gsl_matrix_alloc(spline_order, spline_deriv_cap + 1);
    gsl_matrix* X = gsl_matrix_alloc(n, ncoef);
    gsl_vector* B = gsl_vector_alloc(ncoef);
    gsl_vector* y = gsl_vector_alloc(n);
    for (size_t i = 0; i < n; ++i) {
        gsl_bspline_eval(z[i], B, sp->w);
        for (size_t j = 0; j < ncoef; ++j) gsl_matrix_set(X, i, j, gsl_vector_get(B, j));
        gsl_vector_set(y, i, v[i]);
    }
    sp->c = gsl_vector_alloc(ncoef);
    gsl_matrix* cov = gsl_matrix_alloc(ncoef, ncoef);
    double chisq = 0.0;
    gsl_multifit_linear_workspace* mw = gsl_multifit_linear_alloc(n, ncoef);
    gsl_multifit_linear(X, y, sp->c, cov, &chisq, mw);
    gsl_multifit_linear_free(mw);
    gsl_matrix_free(cov);
    gsl_vector_free(y);
    gsl_vector_free(B);
    gsl_matrix_free(X);

    PerturbingPotential p;
    p.spline_ = std::move(sp);
    return p;
}

double PerturbingPotential::value(double z) const { return derivative(z, 0); }

double PerturbingPotential::derivative(double z, int order) const {
    if (order < 0) throw std::invalid_argument("potential: derivative order < 0");
    if (spline_) {
        if (z < spline_->zmin || z > spline_->zmax)
            throw std::out_of_range("potential: z = " + std::to_string(z) +
                                    " outside tabulated domain");
        if (order > spline_deriv_cap) return 0.0;  // capped; caller truncates with notice
        return spline_->eval(z, order);
    }
    double out = 0.0;
    for (size_t n = coeffs_.size(); n-- > static_cast<size_t>(order);) {
        double c = coeffs_[n];
        for (int j = 0; j < order; ++j) c *= static_cast<double>(n - j);
        out = out * z + c;
    }
    return out;
}

int PerturbingPotential::derivative_cap() const {
    return spline_ ? spline_deriv_cap : std::numeric_limits<int>::max();
}

bool PerturbingPotential::is_zero() const { return !spline_ && coeffs_.empty(); }

double PerturbingPotential::z_min() const {
    return spline_ ? spline_->zmin : -std::numeric_limits<double>::infinity();
}

double PerturbingPotential::z_max() const {
    return spline_ ? spline_->zmax : std::numeric_limits<double>::infinity();
}

int PerturbingPotential::polynomial_degree() const {
    if (spline_) return -1;
    return static_cast<int>(coeffs_.size()) - 1;
}

std::pair<double, double> v_plus_minus(const PerturbingPotential& V, double z, double dz) {
    const double up = V.value(z + dz);
    const double dn = V.value(z - dz);
    return {0.5 * (up + dn), 0.5 * (up - dn)};
}

PerturbingPotential load_tabulated_potential(std::istream& in) {
    std::vector<double> z, v;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a)) continue;
        if (!(ls >> b))
            throw std::invalid_argument("tabulated potential: line " +
                                        std::to_string(lineno) + ": expected two columns");
        z.push_back(a);
        v.push_back(b);
    }
    return PerturbingPotential::tabulated(std::move(z), std::move(v));
}

PerturbingPotential load_tabulated_potential_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open potential file: " + path);
    return load_tabulated_potential(f);
}

}  // namespace aiphase::perturb
