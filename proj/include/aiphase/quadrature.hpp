#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace aiphase::quad {

// Quadrature failure carries the achieved error estimate so callers can
// report how far off the run ended up.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved, double required)
        : std::runtime_error(what), achieved_(achieved), required_(required) {}
    double achieved() const { return achieved_; }
    double required() const { return required_; }

private:
    double achieved_, required_;
};

struct Result {
    double value = 0.0;
    double error = 0.0;  // |last doubling difference|
    int panels = 0;
    bool converged = false;
};

// relative tolerance, overridable through AIPHASE_TOL
double default_tolerance();

// Fixed-order Gauss-Legendre panels on [a,b]; panel count doubles until the
// result moves by less than max(rel_tol*|value|, abs_floor). Throws
// QuadratureError when the budget runs out.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_floor = 0.0);

// Same, summed over [edges[0], edges[1]], ..., [edges[n-2], edges[n-1]].
Result integrate_segmented(const std::function<double(double)>& f,
                           std::span<const double> edges, double rel_tol,
                           double abs_floor = 0.0);

// 20-point Gauss-Legendre rule on [-1,1]
std::span<const double> gl_nodes();
std::span<const double> gl_weights();

}  // namespace aiphase::quad
