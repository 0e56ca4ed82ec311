// ymlab: evolve | stationary | verify | decay
// exit codes: 0 pass, 1 checked failure, 2 usage/config error, 3 numerical error

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ymlab/config.hpp"
#include "ymlab/experiment.hpp"
#include "ymlab/stationary.hpp"
#include "ymlab/verify.hpp"

namespace {

using namespace ymlab;

int cmd_evolve(const std::string& config_path, const std::string& output_override) {
    RunConfig rc = parse_run_config(ConfigDoc::parse_file(config_path));
    if (!output_override.empty()) rc.output_dir = output_override;
    RunArtifacts art = run_experiment(rc);
    write_artifacts(art, rc, rc.output_dir);
    if (art.result.aborted) {
        std::cerr << "evolution aborted: " << art.result.abort_reason << "\n";
        return 3;
    }
    std::cout << "evolved to t = " << fmt_double(art.result.final_state.t) << " in "
              << art.result.steps << " steps; energy drift " << fmt_double(art.drift) << "\n";
    return 0;
}

int cmd_stationary(int n, double mass, const std::vector<double>& bracket,
                   const std::string& out_dir) {
    ShootingConfig cfg;
    if (!bracket.empty()) {
        cfg.a_lo = bracket.at(0);
        cfg.a_hi = bracket.at(1);
    }
    StationarySolution sol = find_a_n(n, cfg, BlackHoleMass(mass));

    std::filesystem::create_directories(out_dir);
    const std::string stem = out_dir + "/stationary_" + std::to_string(n);
    {
        std::ofstream out(stem + ".dat");
        out << "# n=" << sol.x.size() << " columns=x,W,Wp m=" << fmt_double(mass) << "\n";
        for (std::size_t i = 0; i < sol.x.size(); ++i)
            out << fmt_double(sol.x[i]) << " " << fmt_double(sol.W[i]) << " "
                << fmt_double(sol.Wp[i]) << "\n";
    }
    nlohmann::json j;
    j["n"] = n;
    j["a_n"] = sol.a_n;
    j["energy"] = sol.energy;
    j["zero_count"] = sol.zero_count;
    j["tail_bound"] = sol.tail_bound;
    j["asymptote"] = sol.asymptote;
    j["asymptote_error"] = sol.asymptote_error;
    std::ofstream out(stem + ".json");
    out << j.dump(2) << "\n";
    std::cout << "a_" << n << " = " << fmt_double(sol.a_n) << ", energy "
              << fmt_double(sol.energy) << ", " << sol.zero_count << " zeros\n";
    return 0;
}

int cmd_verify(double mass, const std::vector<double>& params, bool search,
               const std::string& out_dir) {
    const BlackHoleMass m(mass);
    std::vector<InequalityReport> reports;

    reports.push_back(check_g_positivity(m, 2.0 * mass, 100.0 * mass, 1000001));
    reports.push_back(check_pos_inequality(m, 2.0 * mass, 100.0 * mass, 1000001));

    if (!params.empty()) {
        auto lemma = check_lemma_weights(params.at(0) * mass, params.at(1), params.at(2), m, 20001);
        for (auto& r : lemma) reports.push_back(r);
    } else {
        (void)search;  // the default already searches
        AdmissibleParameters found = find_admissible_parameters(m);
        if (!found.found) {
            std::cerr << "no admissible (a, delta, epsilon) found in the candidate set\n";
            return 1;
        }
        for (auto& r : found.reports) reports.push_back(r);
    }
    auto horizon = check_horizon_weight(0.5, 2.1 * mass, m, 200001);
    for (auto& r : horizon) reports.push_back(r);

    bool all_pass = true;
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        j.push_back(nlohmann::json::parse(report_to_json(r)));
        std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.id << "  min margin "
                  << fmt_double(r.min_margin) << "\n";
    }
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir + "/verify_report.json");
    out << j.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

int cmd_decay(const std::string& input_dir, const std::string& bound) {
    DecayAnalysis an = analyze_run_directory(input_dir, bound);
    std::ofstream out(input_dir + "/decay_report.json");
    if (!out) throw config_error("cannot write " + input_dir + "/decay_report.json");
    out << analysis_to_json(an) << "\n";
    for (const auto& r : an.reports)
        std::cout << (r.bounded ? "pass" : "FAIL") << "  " << r.bound_id << "  C_emp "
                  << fmt_double(r.C_emp) << "\n";
    return an.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the reduced SU(2) Yang-Mills wave equation"};
    app.require_subcommand(1);

    std::string config_path, output_override, output_dir, input_dir = ".", bound = "all";
    int n = 1;
    double mass = 1.0;
    std::vector<double> bracket, params;
    bool search = false;

    auto* evolve = app.add_subcommand("evolve", "run an evolution from a config file");
    evolve->add_option("config", config_path, "run configuration")->required();
    evolve->add_option("--output", output_override, "override output.dir");

    auto* stationary = app.add_subcommand("stationary", "find a stationary solution W_n");
    stationary->add_option("--n", n, "number of zeros")->required();
    stationary->add_option("--mass", mass, "black hole mass")->capture_default_str();
    stationary->add_option("--bracket", bracket, "shooting bracket a_lo a_hi")->expected(2);
    stationary->add_option("--output", output_dir, "output directory")->default_val(".");

    auto* verify = app.add_subcommand("verify", "certify the multiplier inequalities");
    verify->add_option("--mass", mass, "black hole mass")->capture_default_str();
    verify->add_option("--params", params, "a delta epsilon")->expected(3);
    verify->add_flag("--search", search, "search for admissible parameters (the default)");
    verify->add_option("--output", output_dir, "output directory")->default_val(".");

    auto* decay = app.add_subcommand("decay", "check decay bounds on a run directory");
    decay->add_option("--input", input_dir, "run directory")->required();
    decay->add_option("--bound", bound, "local|pointwise|morawetz|all")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (evolve->parsed()) return cmd_evolve(config_path, output_override);
        if (stationary->parsed()) return cmd_stationary(n, mass, bracket, output_dir);
        if (verify->parsed()) return cmd_verify(mass, params, search, output_dir);
        if (decay->parsed()) return cmd_decay(input_dir, bound);
    } catch (const ymlab::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ymlab::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
