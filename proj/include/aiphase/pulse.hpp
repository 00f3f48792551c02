#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace aiphase::pulse {

struct RectangularShape {
    double omega0 = 0.0;  // rad/s
};

struct GaussianShape {
    double peak = 0.0;       // rad/s
    double rms_width = 0.0;  // s
};

// samples are relative to the pulse window start; linear interpolation
struct TabulatedShape {
    std::vector<double> time;   // s, strictly increasing
    std::vector<double> omega;  // rad/s, >= 0
};

using PulseShape = std::variant<RectangularShape, GaussianShape, TabulatedShape>;

// Three-pulse timing: supports [0,tau], [T-tau,T+tau], [2T-tau,2T].
// When `ideal` the shape amplitudes are rescaled at construction so the
// areas are exactly pi/2, pi, pi/2.
class PulseSequence {
public:
    static PulseSequence make(double T, double tau, std::array<PulseShape, 3> shapes,
                              bool ideal);
    static PulseSequence ideal_rectangular(double T, double tau);

    double T() const { return T_; }
    double tau() const { return tau_; }
    double eta() const { return tau_ / T_; }
    bool ideal() const { return ideal_; }
    bool rectangular() const;

    // {0, tau, T-tau, T+tau, 2T-tau, 2T}
    const std::array<double, 6>& edges() const { return edges_; }

    double phi1(double t) const;
    double phi1_total() const;        // phi1(2T)
    double pulse_area(int pulse) const;

    friend double sensitivity_primitive(const PulseSequence&, double);

private:
    double area_in_window(int pulse, double dt) const;  // cumulative from window start
    double offset_in_window(int pulse, double t) const;
    double window_start(int pulse) const;
    double window_length(int pulse) const;

    double T_ = 0.0, tau_ = 0.0;
    bool ideal_ = false;
    std::array<PulseShape, 3> shapes_{};
    std::array<double, 6> edges_{};
    std::array<double, 3> areas_{};        // per-pulse areas
    std::array<double, 3> prefix_areas_{};  // phi1 at each window start
    std::array<double, 6> S_edges_{};      // S at segment starts (cached)
};

double phi1(const PulseSequence& seq, double t);
double sensitivity(const PulseSequence& seq, double t);          // sin phi1(t)
double sensitivity_primitive(const PulseSequence& seq, double t);  // S(t)
double pulse_area_defect(const PulseSequence& seq);              // phi1(2T) - 2*pi

TabulatedShape load_tabulated_shape(std::istream& in);
TabulatedShape load_tabulated_shape_file(const std::string& path);

}  // namespace aiphase::pulse
