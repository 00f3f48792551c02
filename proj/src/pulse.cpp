#include "aiphase/pulse.hpp"

#include "aiphase/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aiphase::pulse {

namespace {

constexpr double pi = M_PI;
constexpr double gauss_support_sigmas = 4.0;

double shape_area(const PulseShape& s, double duration) {
    return std::visit(
        [&](const auto& sh) -> double {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, RectangularShape>) {
                return sh.omega0 * duration;
            } else if constexpr (std::is_same_v<T, GaussianShape>) {
                const double h = std::min(gauss_support_sigmas * sh.rms_width, duration / 2.0);
                return sh.peak * sh.rms_width * std::sqrt(2.0 * pi) *
                       std::erf(h / (sh.rms_width * std::sqrt(2.0)));
            } else {
                double a = 0.0;
                for (size_t i = 0; i + 1 < sh.time.size(); ++i)
                    a += 0.5 * (sh.omega[i] + sh.omega[i + 1]) * (sh.time[i + 1] - sh.time[i]);
                return a;
            }
        },
        s);
}

void scale_shape(PulseShape& s, double factor) {
    std::visit(
        [&](auto& sh) {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, RectangularShape>) {
                sh.omega0 *= factor;
            } else if constexpr (std::is_same_v<T, GaussianShape>) {
                sh.peak *= factor;
            } else {
                for (double& w : sh.omega) w *= factor;
            }
        },
        s);
}

// cumulative area of one pulse from its window start, dt in [0, duration]
double shape_cumulative(const PulseShape& s, double duration, double dt) {
    dt = std::clamp(dt, 0.0, duration);
    return std::visit(
        [&](const auto& sh) -> double {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, RectangularShape>) {
                return sh.omega0 * dt;
            } else if constexpr (std::is_same_v<T, GaussianShape>) {
                const double c = duration / 2.0;
                const double h = std::min(gauss_support_sigmas * sh.rms_width, duration / 2.0);
                const double lo = c - h, hi = c + h;
                if (dt <= lo) return 0.0;
                const double upper = std::min(dt, hi);
                const double norm = sh.peak * sh.rms_width * std::sqrt(pi / 2.0);
                return norm * (std::erf((upper - c) / (sh.rms_width * std::sqrt(2.0))) +
                               std::erf(h / (sh.rms_width * std::sqrt(2.0))));
            } else {
                double a = 0.0;
                for (size_t i = 0; i + 1 < sh.time.size(); ++i) {
                    const double t0 = sh.time[i], t1 = sh.time[i + 1];
                    if (dt <= t0) break;
                    const double e = std::min(dt, t1);
                    const double w1 = sh.omega[i];
                    const double w2 = sh.omega[i] + (sh.omega[i + 1] - sh.omega[i]) *
                                                        ((e - t0) / (t1 - t0));
                    a += 0.5 * (w1 + w2) * (e - t0);
                }
                return a;
            }
        },
        s);
}

void validate_shape(const PulseShape& s, double duration) {
    std::visit(
        [&](const auto& sh) {
            using T = std::decay_t<decltype(sh)>;
            if constexpr (std::is_same_v<T, RectangularShape>) {
                if (sh.omega0 < 0.0) throw std::invalid_argument("pulse: omega0 < 0");
            } else if constexpr (std::is_same_v<T, GaussianShape>) {
                if (sh.peak < 0.0 || sh.rms_width <= 0.0)
                    throw std::invalid_argument("pulse: bad gaussian parameters");
                if (duration <= 0.0)
                    throw std::invalid_argument("pulse: gaussian shape needs tau > 0");
            } else {
                if (duration <= 0.0)
                    throw std::invalid_argument("pulse: tabulated shape needs tau > 0");
                if (sh.time.size() < 2 || sh.time.size() != sh.omega.size())
                    throw std::invalid_argument("pulse: tabulated shape needs >= 2 samples");
                for (size_t i = 0; i + 1 < sh.time.size(); ++i)
                    if (sh.time[i + 1] <= sh.time[i])
                        throw std::invalid_argument("pulse: tabulated times must increase");
                for (double w : sh.omega)
                    if (w < 0.0) throw std::invalid_argument("pulse: tabulated omega < 0");
            }
        },
        s);
}

}  // namespace

PulseSequence PulseSequence::make(double T, double tau, std::array<PulseShape, 3> shapes,
                                  bool ideal) {
    if (T <= 0.0 || tau < 0.0 || 2.0 * tau >= T)
        throw std::invalid_argument("pulse sequence: need 0 <= 2*tau < T");
    PulseSequence seq;
    seq.T_ = T;
    seq.tau_ = tau;
    seq.ideal_ = ideal;
    seq.edges_ = {0.0, tau, T - tau, T + tau, 2.0 * T - tau, 2.0 * T};

    const double durations[3] = {tau, 2.0 * tau, tau};
    const double targets[3] = {pi / 2.0, pi, pi / 2.0};
    for (int i = 0; i < 3; ++i) {
        validate_shape(shapes[i], durations[i]);
        if (ideal) {
            if (tau == 0.0) {
                if (!std::holds_alternative<RectangularShape>(shapes[i]))
                    throw std::invalid_argument("pulse: tau = 0 needs rectangular shapes");
                seq.areas_[i] = targets[i];  // area impulse
                continue;
            }
            const double a = shape_area(shapes[i], durations[i]);
            if (a <= 0.0) throw std::invalid_argument("pulse: zero-area shape cannot be ideal");
            scale_shape(shapes[i], targets[i] / a);
            seq.areas_[i] = targets[i];
        } else {
            if (tau == 0.0)
                throw std::invalid_argument("pulse: tau = 0 requires ideal pulses");
            seq.areas_[i] = shape_area(shapes[i], durations[i]);
        }
    }
    seq.shapes_ = shapes;
    seq.prefix_areas_ = {0.0, seq.areas_[0], seq.areas_[0] + seq.areas_[1]};

    // S at segment boundaries
    seq.S_edges_[0] = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double a = seq.edges_[i], b = seq.edges_[i + 1];
        double inc = 0.0;
        if (b > a) {
            if (i == 1 || i == 3) {  // free evolution, constant integrand
                inc = std::sin(seq.phi1(0.5 * (a + b))) * (b - a);
            } else if (seq.rectangular()) {
                const int pulse = i / 2;
                const double om =
                    std::get<RectangularShape>(seq.shapes_[pulse]).omega0;
                const double phi0 = seq.phi1(a);
                inc = om > 0.0
                          ? (std::cos(phi0) - std::cos(phi0 + om * (b - a))) / om
                          : std::sin(phi0) * (b - a);
            } else {
                inc = quad::integrate([&](double t) { return std::sin(seq.phi1(t)); }, a, b,
                                      1e-13, 1e-15 * seq.T_)
                          .value;
            }
        }
        seq.S_edges_[i + 1] = seq.S_edges_[i] + inc;
    }
    return seq;
}

PulseSequence PulseSequence::ideal_rectangular(double T, double tau) {
    const double om = tau > 0.0 ? pi / (2.0 * tau) : 0.0;
    return make(T, tau,
                {RectangularShape{om}, RectangularShape{om}, RectangularShape{om}}, true);
}

bool PulseSequence::rectangular() const {
    return std::holds_alternative<RectangularShape>(shapes_[0]) &&
           std::holds_alternative<RectangularShape>(shapes_[1]) &&
           std::holds_alternative<RectangularShape>(shapes_[2]);
}

double PulseSequence::window_start(int pulse) const {
    return pulse == 0 ? 0.0 : (pulse == 1 ? T_ - tau_ : 2.0 * T_ - tau_);
}

double PulseSequence::window_length(int pulse) const { return pulse == 1 ? 2.0 * tau_ : tau_; }

double PulseSequence::area_in_window(int pulse, double dt) const {
    if (tau_ == 0.0) return 0.0;  // impulse windows have zero width
    return shape_cumulative(shapes_[pulse], window_length(pulse), dt);
}

// offset from the window start; the (t - T) + tau forms avoid the rounding of
// T - tau when tau << T
double PulseSequence::offset_in_window(int pulse, double t) const {
    if (pulse == 0) return t;
    if (pulse == 1) return (t - T_) + tau_;
    return (t - 2.0 * T_) + tau_;
}

double PulseSequence::phi1(double t) const {
    const double slack = 1e-12 * T_;
    if (t < -slack || t > 2.0 * T_ + slack)
        throw std::invalid_argument("phi1: t outside [0, 2T]");
    if (t <= edges_[0]) return 0.0;
    if (t < edges_[1]) return prefix_areas_[0] + area_in_window(0, offset_in_window(0, t));
    if (t < edges_[2]) return prefix_areas_[1];
    if (t < edges_[3]) return prefix_areas_[1] + area_in_window(1, offset_in_window(1, t));
    if (t < edges_[4]) return prefix_areas_[2];
    if (t < edges_[5]) return prefix_areas_[2] + area_in_window(2, offset_in_window(2, t));
    return prefix_areas_[2] + areas_[2];
}

double PulseSequence::phi1_total() const { return prefix_areas_[2] + areas_[2]; }

double PulseSequence::pulse_area(int pulse) const { return areas_.at(pulse); }

double phi1(const PulseSequence& seq, double t) { return seq.phi1(t); }

double sensitivity(const PulseSequence& seq, double t) { return std::sin(seq.phi1(t)); }

double sensitivity_primitive(const PulseSequence& seq, double t) {
    const auto& e = seq.edges_;
    const double slack = 1e-12 * seq.T_;
    if (t < -slack || t > 2.0 * seq.T_ + slack)
        throw std::invalid_argument("sensitivity_primitive: t outside [0, 2T]");
    t = std::clamp(t, 0.0, 2.0 * seq.T_);
    int seg = 0;
    while (seg < 5 && t > e[seg + 1]) ++seg;
    // degenerate zero-width segments at tau = 0
    while (seg < 5 && e[seg + 1] == e[seg] && t >= e[seg + 1]) ++seg;
    const double a = e[seg];
    double partial = 0.0;
    if (t > a) {
        if (seg == 1 || seg == 3) {
            partial = std::sin(seq.phi1(0.5 * (a + std::min(t, e[seg + 1])))) * (t - a);
        } else if (seq.rectangular() && seq.tau() > 0.0) {
            const int pulse = seg / 2;
            const double om = std::get<RectangularShape>(seq.shapes_[pulse]).omega0;
            const double phi0 = seq.phi1(a);
            const double dt = seq.offset_in_window(pulse, t);
            partial = om > 0.0 ? (std::cos(phi0) - std::cos(phi0 + om * dt)) / om
                               : std::sin(phi0) * dt;
        } else if (seq.tau() == 0.0) {
            partial = 0.0;  // zero-width window
        } else {
            partial = quad::integrate([&](double u) { return std::sin(seq.phi1(u)); }, a, t,
                                      1e-13, 1e-15 * seq.T_)
                          .value;
        }
    }
    return seq.S_edges_[seg] + partial;
}

double pulse_area_defect(const PulseSequence& seq) { return seq.phi1_total() - 2.0 * M_PI; }

TabulatedShape load_tabulated_shape(std::istream& in) {
    TabulatedShape s;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double t, w;
        if (!(ls >> t)) continue;  // blank
        if (!(ls >> w))
            throw std::invalid_argument("tabulated shape: line " + std::to_string(lineno) +
                                        ": expected two columns");
        s.time.push_back(t);
        s.omega.push_back(w);
    }
    if (s.time.size() < 2) throw std::invalid_argument("tabulated shape: need >= 2 samples");
    return s;
}

TabulatedShape load_tabulated_shape_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open pulse file: " + path);
    return load_tabulated_shape(f);
}

}  // namespace aiphase::pulse
