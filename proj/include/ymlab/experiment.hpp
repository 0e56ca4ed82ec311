#pragma once

// Configuration-driven experiment driver: runs an evolution with the standard
// observers, holds the recorded series, and (de)serializes the run directory.

#include <string>
#include <vector>

#include "ymlab/config.hpp"
#include "ymlab/decay.hpp"
#include "ymlab/functionals.hpp"

namespace ymlab {

struct PointwiseRow {
    double v = 0.0, w = 0.0, r = 0.0, Q = 0.0;
};

struct RunArtifacts {
    TortoiseGrid grid;
    RunResult result;
    std::vector<double> t;  // observed times
    std::vector<EnergyBreakdown> energy;
    std::vector<EnergyBreakdown> local;
    std::vector<double> morawetz;      // bulk at each observed time
    std::vector<double> morawetz_cum;  // trapezoid-accumulated
    std::vector<PointwiseRow> pw_v, pw_w, pw_near;
    IdentityResidual identity;         // empty unless requested
    std::vector<FluxRecord> fluxes;    // empty unless requested
    GeometricEnergies geo0;
    EnergyBreakdown scalar0;
    double E1 = 0.0, E2 = 0.0;
    double drift = 0.0;  // relative when the initial energy is nonzero
};

RunArtifacts run_experiment(const RunConfig& rc);

// Writes state_final.dat, series_*.csv and summary.json into dir.
void write_artifacts(const RunArtifacts& art, const RunConfig& rc, const std::string& dir);

// Generic reader for the series CSV files (comma-separated, '#' comments,
// one plain header row). Columns are selected by name.
TimeSeries read_series_csv(const std::string& path, const std::string& param_col,
                           const std::string& value_col);

struct DecayAnalysis {
    std::vector<BoundCheckReport> reports;
    std::vector<ExponentFit> fits;
    bool all_pass = true;
};

// which: local | pointwise | morawetz | all
DecayAnalysis analyze_run_directory(const std::string& dir, const std::string& which);

std::string analysis_to_json(const DecayAnalysis& an);

}  // namespace ymlab
