#include "aiphase/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace aiphase::cli {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Sections = std::map<std::string, std::map<std::string, Entry>>;

double parse_number(const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(e.line, key + ": cannot parse number '" + v + "'");
    return x;
}

bool parse_bool(const Entry& e, const std::string& key) {
    const std::string v = trim(e.value);
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(e.line, key + ": expected true or false");
}

std::vector<double> parse_list(const Entry& e, const std::string& key) {
    std::string v = trim(e.value);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        throw ConfigError(e.line, key + ": expected [c0, c1, ...]");
    v = v.substr(1, v.size() - 2);
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        char* end = nullptr;
        const double x = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw ConfigError(e.line, key + ": cannot parse list entry '" + item + "'");
        out.push_back(x);
    }
    return out;
}

const std::map<std::string, std::set<std::string>> known_keys = {
    {"atom", {"mass_kg"}},
    {"laser", {"k_per_m", "alpha_rad_per_s2", "kg_minus_alpha_rad_per_s2",
               "detuning0_rad_per_s"}},
    {"geometry", {"T_s", "tau_s", "tau_select_s"}},
    {"initial", {"z0_m", "v0_m_per_s", "sigma_v_m_per_s"}},
    {"potential", {"g_m_per_s2", "gamma_per_s2", "perturbation_poly", "perturbation_file"}},
    {"pulses", {"shape", "ideal", "rms_width_s", "pulse_file"}},
};

class Reader {
public:
    explicit Reader(Sections s) : sections_(std::move(s)) {}

    const Entry* find(const std::string& sec, const std::string& key) {
        auto s = sections_.find(sec);
        if (s == sections_.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        k->second.used = true;
        return &k->second;
    }
    const Entry& require(const std::string& sec, const std::string& key) {
        const Entry* e = find(sec, key);
        if (!e) throw ConfigError("missing required key " + sec + "." + key);
        return *e;
    }
    double number(const std::string& sec, const std::string& key) {
        return parse_number(require(sec, key), sec + "." + key);
    }
    std::optional<double> optional_number(const std::string& sec, const std::string& key) {
        const Entry* e = find(sec, key);
        if (!e) return std::nullopt;
        return parse_number(*e, sec + "." + key);
    }

private:
    Sections sections_;
};

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
    Sections sections;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(lineno, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!known_keys.count(section))
                throw ConfigError(lineno, "unknown section [" + section + "]");
            sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError(lineno, "key outside any section");
        if (!known_keys.at(section).count(key))
            throw ConfigError(lineno, "unknown key '" + key + "' in [" + section + "]");
        if (sections[section].count(key))
            throw ConfigError(lineno, "duplicate key '" + key + "'");
        sections[section][key] = Entry{value, lineno, false};
    }

    Reader r(std::move(sections));
    ScenarioConfig cfg;
    cfg.scenario.atom.mass = r.number("atom", "mass_kg");
    if (cfg.scenario.atom.mass <= 0.0) throw ConfigError("atom.mass_kg must be > 0");

    cfg.scenario.laser.k = r.number("laser", "k_per_m");
    if (cfg.scenario.laser.k <= 0.0) throw ConfigError("laser.k_per_m must be > 0");
    const auto alpha = r.optional_number("laser", "alpha_rad_per_s2");
    const auto resid = r.optional_number("laser", "kg_minus_alpha_rad_per_s2");
    if (alpha && resid)
        throw ConfigError("laser.alpha_rad_per_s2 and laser.kg_minus_alpha_rad_per_s2 "
                          "are mutually exclusive");
    if (!alpha && !resid)
        throw ConfigError("laser needs alpha_rad_per_s2 or kg_minus_alpha_rad_per_s2");
    if (alpha) cfg.scenario.laser.alpha = *alpha;
    cfg.scenario.laser.kg_minus_alpha = resid;
    cfg.scenario.laser.detuning0 =
        r.optional_number("laser", "detuning0_rad_per_s").value_or(0.0);

    cfg.T = r.number("geometry", "T_s");
    cfg.tau = r.number("geometry", "tau_s");
    cfg.scenario.kin.tau_select =
        r.optional_number("geometry", "tau_select_s").value_or(0.0);

    cfg.scenario.kin.z0 = r.number("initial", "z0_m");
    cfg.scenario.kin.v0 = r.number("initial", "v0_m_per_s");
    cfg.scenario.kin.sigma_v =
        r.optional_number("initial", "sigma_v_m_per_s").value_or(0.0);

    cfg.scenario.pot.g = r.number("potential", "g_m_per_s2");
    cfg.scenario.pot.gamma = r.number("potential", "gamma_per_s2");
    const Entry* poly = r.find("potential", "perturbation_poly");
    const Entry* pfile = r.find("potential", "perturbation_file");
    if (poly && pfile)
        throw ConfigError("perturbation_poly and perturbation_file are mutually exclusive");
    if (poly)
        cfg.perturbation =
            perturb::PerturbingPotential::polynomial(parse_list(*poly, "perturbation_poly"));
    if (pfile) cfg.perturbation = perturb::load_tabulated_potential_file(trim(pfile->value));

    const Entry& shape = r.require("pulses", "shape");
    cfg.pulse_shape = trim(shape.value);
    if (cfg.pulse_shape != "rect" && cfg.pulse_shape != "gauss" && cfg.pulse_shape != "file")
        throw ConfigError(shape.line, "pulses.shape must be rect, gauss or file");
    cfg.ideal = parse_bool(r.require("pulses", "ideal"), "pulses.ideal");
    if (cfg.pulse_shape == "gauss") cfg.rms_width = r.number("pulses", "rms_width_s");
    if (cfg.pulse_shape == "file") {
        const Entry& pf = r.require("pulses", "pulse_file");
        cfg.pulse_file = trim(pf.value);
    }
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    return parse_config(f);
}

pulse::PulseSequence ScenarioConfig::sequence() const {
    using namespace pulse;
    if (pulse_shape == "rect") {
        if (ideal) return PulseSequence::ideal_rectangular(T, tau);
        throw ConfigError("non-ideal rect pulses need explicit omega; use shape = file");
    }
    if (pulse_shape == "gauss") {
        GaussianShape g{1.0, rms_width};
        return PulseSequence::make(T, tau, {g, g, g}, ideal);
    }
    // tabulated: as given on the pi/2 windows, time-stretched x2 for the pi pulse
    TabulatedShape s = load_tabulated_shape_file(pulse_file);
    TabulatedShape mid = s;
    for (double& t : mid.time) t *= 2.0;
    return PulseSequence::make(T, tau, {s, mid, s}, ideal);
}

}  // namespace aiphase::cli
