#pragma once

#include "aiphase/potential.hpp"
#include "aiphase/pulse.hpp"
#include "aiphase/scenario.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace aiphase::cli {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& msg)
        : std::runtime_error("config line " + std::to_string(line) + ": " + msg),
          line_(line) {}
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg), line_(0) {}
    int line() const { return line_; }

private:
    int line_;
};

// Sectioned key = value schema; unknown sections or keys are rejected.
struct ScenarioConfig {
    Scenario scenario;
    double T = 0.0;    // s
    double tau = 0.0;  // s
    std::string pulse_shape = "rect";  // rect | gauss | file
    bool ideal = true;
    double rms_width = 0.0;        // s, gauss only
    std::string pulse_file;        // file only
    std::optional<perturb::PerturbingPotential> perturbation;

    pulse::PulseSequence sequence() const;
};

ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_file(const std::string& path);

}  // namespace aiphase::cli
