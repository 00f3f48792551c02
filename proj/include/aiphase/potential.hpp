#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace aiphase::perturb {

// Weak perturbing potential V(z) in J, with derivative access.
// Polynomial: exact derivatives of any order. Tabulated: least-squares
// quintic B-spline smoothing, derivatives capped at order 5.
class PerturbingPotential {
public:
    PerturbingPotential();  // identically zero

    static PerturbingPotential polynomial(std::vector<double> coeffs);  // c[n] in J/m^n
    static PerturbingPotential tabulated(std::vector<double> z, std::vector<double> v);

    double value(double z) const;
    double derivative(double z, int order) const;
    int derivative_cap() const;  // large for polynomials, 5 for tabulated
    bool is_zero() const;

    // domain for tabulated data; +-inf for polynomials
    double z_min() const;
    double z_max() const;

    // exact polynomial degree, or -1 when tabulated
    int polynomial_degree() const;

private:
    struct Spline;
    std::vector<double> coeffs_;  // polynomial representation when spline_ is null
    std::shared_ptr<const Spline> spline_;
};

// symmetric/antisymmetric split (V(z+dz) +- V(z-dz))/2; domain checked
std::pair<double, double> v_plus_minus(const PerturbingPotential& V, double z, double dz);

PerturbingPotential load_tabulated_potential(std::istream& in);
PerturbingPotential load_tabulated_potential_file(const std::string& path);

}  // namespace aiphase::perturb
