#include "aiphase/quadrature.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <mutex>

namespace aiphase::quad {

namespace {

constexpr int gl_order = 20;
constexpr int max_panels = 1 << 15;

struct GLRule {
    std::array<double, gl_order> x{}, w{};
};

// Newton iteration on Legendre P_n; standard construction.
GLRule build_rule() {
    GLRule r;
    const int n = gl_order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p1 = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
            }
            dp = n * (x * p1 - p2) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const GLRule& rule() {
    static GLRule r = build_rule();
    return r;
}

double panel_sum(const std::function<double(double)>& f, double a, double b, int panels) {
    const GLRule& r = rule();
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        double s = 0.0;
        for (int i = 0; i < gl_order; ++i) s += r.w[i] * f(c + 0.5 * h * r.x[i]);
        total += 0.5 * h * s;
    }
    return total;
}

}  // namespace

std::span<const double> gl_nodes() { return rule().x; }
std::span<const double> gl_weights() { return rule().w; }

double default_tolerance() {
    if (const char* env = std::getenv("AIPHASE_TOL")) {
        const double v = std::atof(env);
        if (v > 0.0) return v;
    }
    return 1e-10;
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_floor) {
    Result res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    double prev = panel_sum(f, a, b, 1);
    for (int panels = 2; panels <= max_panels; panels *= 2) {
        const double cur = panel_sum(f, a, b, panels);
        const double diff = std::abs(cur - prev);
        res.value = cur;
        res.error = diff;
        res.panels = panels;
        if (diff <= std::max(rel_tol * std::abs(cur), abs_floor)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    throw QuadratureError("quadrature did not converge", res.error,
                          std::max(rel_tol * std::abs(res.value), abs_floor));
}

Result integrate_segmented(const std::function<double(double)>& f,
                           std::span<const double> edges, double rel_tol,
                           double abs_floor) {
    Result total;
    total.converged = true;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i + 1] <= edges[i]) continue;
        const Result r = integrate(f, edges[i], edges[i + 1], rel_tol, abs_floor);
        total.value += r.value;
        total.error += r.error;
        total.panels += r.panels;
    }
    return total;
}

}  // namespace aiphase::quad
