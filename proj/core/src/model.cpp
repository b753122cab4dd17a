#include "fibersim/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fibersim {

PumpSpectrum::PumpSpectrum(std::vector<SpectralComponent> components)
    : components_(std::move(components)) {
    for (const auto& c : components_) {
        if (!(c.k > 0.0)) throw std::invalid_argument("pump component wavenumber must be positive");
        if (c.omega < 0.0)
            throw std::invalid_argument("pump component strength must be nonnegative");
    }
}

double PumpSpectrum::epsilon(std::size_t i, double delta0) const {
    const auto& c = components_.at(i);
    return c.omega / (kTwoPi * c.k * delta0);
}

double PumpSpectrum::intensity_weight(std::size_t i) const {
    const auto& c = components_.at(i);
    return c.omega / c.k;
}

double PumpSpectrum::total_intensity_weight() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < components_.size(); ++i) sum += intensity_weight(i);
    return sum;
}

ChainGeometry::ChainGeometry(std::vector<double> positions) : positions_(std::move(positions)) {
    if (positions_.empty()) throw std::invalid_argument("chain needs at least one trap");
    for (std::size_t i = 1; i < positions_.size(); ++i) {
        if (!(positions_[i] > positions_[i - 1]))
            throw std::invalid_argument("trap positions must be strictly increasing");
    }
}

double ChainGeometry::pair_distance(std::size_t i, std::size_t j) const {
    return std::abs(positions_.at(j) - positions_.at(i));
}

namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

double pair_force(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                  double intensity_scale, std::size_t j) {
    const std::size_t n = geometry.n_particles();
    if (j >= n) throw std::out_of_range("particle index out of range");
    double force = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        const double dx = geometry.position(j) - geometry.position(i);
        for (const auto& c : spectrum.components()) {
            force += intensity_scale * (c.omega / c.k) * std::cos(kTwoPi * c.k * dx) * sign(-dx);
        }
    }
    return force;
}

double total_potential(const ChainGeometry& geometry, const PumpSpectrum& spectrum,
                       double intensity_scale) {
    const std::size_t n = geometry.n_particles();
    double u = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            const double d = geometry.pair_distance(i, j);
            for (const auto& c : spectrum.components()) {
                u += 0.5 * intensity_scale * (c.omega / c.k) / (kTwoPi * c.k) *
                     std::sin(kTwoPi * c.k * d);
            }
        }
    }
    return u;
}

ChainConfig parse_chain_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    ChainConfig cfg;
    cfg.units.k0 = j.value("k0", 1.0);
    if (!j.contains("positions") || !j["positions"].is_array())
        throw std::invalid_argument("config field 'positions' (array) is required");
    cfg.geometry = ChainGeometry(j["positions"].get<std::vector<double>>());
    std::vector<SpectralComponent> comps;
    if (j.contains("spectrum")) {
        for (const auto& c : j["spectrum"]) {
            if (!c.contains("k") || !c.contains("omega"))
                throw std::invalid_argument("spectrum entries need fields 'k' and 'omega'");
            comps.push_back({c["k"].get<double>(), c["omega"].get<double>()});
        }
    }
    cfg.spectrum = PumpSpectrum(std::move(comps));
    cfg.oscillator.delta0 = j.value("delta0", 0.05);
    cfg.oscillator.omega_trap = j.value("omega_T", 1.0);
    return cfg;
}

ChainConfig load_chain_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_chain_config(ss.str());
}

std::string chain_config_to_json(const ChainConfig& config) {
    nlohmann::json j;
    j["k0"] = config.units.k0;
    j["positions"] = config.geometry.positions();
    j["spectrum"] = nlohmann::json::array();
    for (const auto& c : config.spectrum.components())
        j["spectrum"].push_back({{"k", c.k}, {"omega", c.omega}});
    j["delta0"] = config.oscillator.delta0;
    j["omega_T"] = config.oscillator.omega_trap;
    return j.dump(2);
}

}  // namespace fibersim
