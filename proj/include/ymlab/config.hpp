#pragma once

// Flat "key = value" configuration with dotted namespaces and '#' comments.
// Unknown keys are hard errors; every value is validated before use.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ymlab/errors.hpp"
#include "ymlab/evolve.hpp"
#include "ymlab/grid.hpp"

namespace ymlab {

class ConfigDoc {
  public:
    static ConfigDoc parse_file(const std::string& path);
    static ConfigDoc parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, std::optional<std::string> fallback = {}) const;
    double get_double(const std::string& key, std::optional<double> fallback = {}) const;
    long get_int(const std::string& key, std::optional<long> fallback = {}) const;
    bool get_bool(const std::string& key, std::optional<bool> fallback = {}) const;

    // Throws config_error listing every key not in `known`.
    void require_known(const std::vector<std::string>& known) const;

  private:
    std::map<std::string, std::string> kv_;
};

struct ObserverConfig {
    bool energy = true;
    bool local = true;
    double local_x1 = -10.0, local_x2 = 10.0;
    bool morawetz = true;
    bool pointwise = true;
    double pointwise_r_min = 3.0;       // away region r >= r_min (times m)
    bool near_horizon = true;
    double near_horizon_r_max = 2.1;    // times m
    double clean_margin = 2.0;          // near-horizon rows need x >= x_min + t + margin
    bool identity = false;              // multiplier-identity residual series
    double identity_a = 40.0;
    double identity_delta = 0.01;
    bool flux = false;                  // null-line flux integrals
    double flux_v = 0.0, flux_w = 0.0;  // the fixed v (resp. w) lines
};

struct RunConfig {
    double mass = 1.0;
    double x_min = -200.0, x_max = 200.0;
    std::size_t n = 8001;
    InitialDataSpec initial;
    EvolutionConfig evolution;
    ObserverConfig observers;
    std::string output_dir = ".";
};

// Parses and validates a full run configuration (unknown keys rejected).
RunConfig parse_run_config(const ConfigDoc& doc);

}  // namespace ymlab
