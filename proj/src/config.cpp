#include "ymlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ymlab {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

}  // namespace

ConfigDoc ConfigDoc::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

ConfigDoc ConfigDoc::parse_string(const std::string& text) {
    ConfigDoc doc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error("config line " + std::to_string(lineno) + ": empty key");
        if (doc.kv_.count(key))
            throw config_error("config line " + std::to_string(lineno) + ": duplicate key '" +
                               key + "'");
        doc.kv_[key] = val;
    }
    return doc;
}

bool ConfigDoc::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string ConfigDoc::get_string(const std::string& key,
                                  std::optional<std::string> fallback) const {
    auto it = kv_.find(key);
    if (it != kv_.end()) return it->second;
    if (fallback) return *fallback;
    throw config_error("missing config key '" + key + "'");
}

double ConfigDoc::get_double(const std::string& key, std::optional<double> fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) {
        if (fallback) return *fallback;
        throw config_error("missing config key '" + key + "'");
    }
    const std::string& s = it->second;
    double out;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || p != s.data() + s.size())
        throw config_error("config key '" + key + "': '" + s + "' is not a number");
    return out;
}

long ConfigDoc::get_int(const std::string& key, std::optional<long> fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) {
        if (fallback) return *fallback;
        throw config_error("missing config key '" + key + "'");
    }
    const std::string& s = it->second;
    long out;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || p != s.data() + s.size())
        throw config_error("config key '" + key + "': '" + s + "' is not an integer");
    return out;
}

bool ConfigDoc::get_bool(const std::string& key, std::optional<bool> fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) {
        if (fallback) return *fallback;
        throw config_error("missing config key '" + key + "'");
    }
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw config_error("config key '" + key + "': expected true/false, got '" + it->second + "'");
}

void ConfigDoc::require_known(const std::vector<std::string>& known) const {
    std::string bad;
    for (const auto& [k, v] : kv_) {
        if (std::find(known.begin(), known.end(), k) == known.end()) {
            if (!bad.empty()) bad += ", ";
            bad += k;
        }
    }
    if (!bad.empty()) throw config_error("unknown config keys: " + bad);
}

RunConfig parse_run_config(const ConfigDoc& doc) {
    static const std::vector<std::string> known = {
        "mass",
        "grid.x_min", "grid.x_max", "grid.n",
        "initial.kind", "initial.sign", "initial.base", "initial.amplitude",
        "initial.center", "initial.width", "initial.mode", "initial.n", "initial.file",
        "evolve.cfl", "evolve.t_end", "evolve.stride", "evolve.boundary",
        "observers.energy",
        "observers.local", "observers.local.x1", "observers.local.x2",
        "observers.morawetz",
        "observers.pointwise", "observers.pointwise.r_min",
        "observers.near_horizon", "observers.near_horizon.r_max",
        "observers.identity", "observers.identity.a", "observers.identity.delta",
        "observers.flux", "observers.flux.v", "observers.flux.w",
        "output.dir",
    };
    doc.require_known(known);

    RunConfig rc;
    rc.mass = doc.get_double("mass", 1.0);
    if (!(rc.mass > 0.0)) throw config_error("mass must be positive");
    rc.x_min = doc.get_double("grid.x_min");
    rc.x_max = doc.get_double("grid.x_max");
    long n = doc.get_int("grid.n");
    if (!(rc.x_min < rc.x_max)) throw config_error("grid.x_min must be below grid.x_max");
    if (n < 16) throw config_error("grid.n must be at least 16");
    rc.n = static_cast<std::size_t>(n);

    const std::string kind = doc.get_string("initial.kind", std::string("vacuum"));
    if (kind == "vacuum") rc.initial.kind = InitialDataSpec::Kind::vacuum;
    else if (kind == "gaussian") rc.initial.kind = InitialDataSpec::Kind::gaussian;
    else if (kind == "stationary") rc.initial.kind = InitialDataSpec::Kind::stationary;
    else if (kind == "custom") rc.initial.kind = InitialDataSpec::Kind::custom;
    else throw config_error("initial.kind must be vacuum|gaussian|stationary|custom");
    rc.initial.sign = static_cast<int>(doc.get_int("initial.sign", 1));
    if (rc.initial.sign != 1 && rc.initial.sign != -1)
        throw config_error("initial.sign must be 1 or -1");
    rc.initial.base = doc.get_double("initial.base", 1.0);
    rc.initial.amplitude = doc.get_double("initial.amplitude", 0.0);
    rc.initial.center = doc.get_double("initial.center", 0.0);
    rc.initial.width = doc.get_double("initial.width", 1.0);
    if (!(rc.initial.width > 0.0)) throw config_error("initial.width must be positive");
    const std::string mode = doc.get_string("initial.mode", std::string("time_symmetric"));
    if (mode == "time_symmetric") rc.initial.mode = GaussianMode::time_symmetric;
    else if (mode == "ingoing") rc.initial.mode = GaussianMode::ingoing;
    else throw config_error("initial.mode must be time_symmetric|ingoing");
    rc.initial.stationary_n = static_cast<int>(doc.get_int("initial.n", 1));
    rc.initial.file = doc.get_string("initial.file", std::string());
    if (rc.initial.kind == InitialDataSpec::Kind::custom && rc.initial.file.empty())
        throw config_error("initial.kind = custom requires initial.file");

    rc.evolution.cfl_ratio = doc.get_double("evolve.cfl", 0.25);
    if (!(rc.evolution.cfl_ratio > 0.0 && rc.evolution.cfl_ratio <= 1.0))
        throw config_error("evolve.cfl must lie in (0, 1]");
    rc.evolution.t_end = doc.get_double("evolve.t_end");
    if (!(rc.evolution.t_end > 0.0)) throw config_error("evolve.t_end must be positive");
    long stride = doc.get_int("evolve.stride", 40);
    if (stride < 1) throw config_error("evolve.stride must be >= 1");
    rc.evolution.observer_stride = static_cast<std::size_t>(stride);
    const std::string bnd = doc.get_string("evolve.boundary", std::string("causal_buffer"));
    if (bnd == "causal_buffer") rc.evolution.boundary_mode = BoundaryMode::causal_buffer;
    else if (bnd == "outgoing") rc.evolution.boundary_mode = BoundaryMode::outgoing;
    else throw config_error("evolve.boundary must be causal_buffer|outgoing");

    rc.observers.energy = doc.get_bool("observers.energy", true);
    rc.observers.local = doc.get_bool("observers.local", true);
    rc.observers.local_x1 = doc.get_double("observers.local.x1", -10.0);
    rc.observers.local_x2 = doc.get_double("observers.local.x2", 10.0);
    if (!(rc.observers.local_x1 < rc.observers.local_x2))
        throw config_error("observers.local window is empty");
    rc.observers.morawetz = doc.get_bool("observers.morawetz", true);
    rc.observers.pointwise = doc.get_bool("observers.pointwise", true);
    rc.observers.pointwise_r_min = doc.get_double("observers.pointwise.r_min", 3.0);
    rc.observers.near_horizon = doc.get_bool("observers.near_horizon", true);
    rc.observers.near_horizon_r_max = doc.get_double("observers.near_horizon.r_max", 2.1);
    rc.observers.identity = doc.get_bool("observers.identity", false);
    rc.observers.identity_a = doc.get_double("observers.identity.a", 40.0);
    rc.observers.identity_delta = doc.get_double("observers.identity.delta", 0.01);
    rc.observers.flux = doc.get_bool("observers.flux", false);
    rc.observers.flux_v = doc.get_double("observers.flux.v", 0.0);
    rc.observers.flux_w = doc.get_double("observers.flux.w", 0.0);
    rc.output_dir = doc.get_string("output.dir", std::string("."));

    // The causal-buffer precondition protects the widest observed window.
    if (rc.evolution.boundary_mode == BoundaryMode::causal_buffer && rc.observers.local) {
        rc.evolution.observe_x_lo = rc.observers.local_x1;
        rc.evolution.observe_x_hi = rc.observers.local_x2;
    }
    return rc;
}

}  // namespace ymlab
