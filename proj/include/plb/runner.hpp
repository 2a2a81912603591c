// runner.hpp — scenario loading and the verification suites.
#pragma once

#include <map>

#include "plb/catalog.hpp"
#include "plb/config.hpp"
#include "plb/report.hpp"

namespace plb {

struct GridSettings {
    int fiber_radial = 24;
    int fiber_angular = 48;
    int base_points = 20;     // sample points for residual sweeps
    int base_quad = 12;       // tensor order for pairings / L^p integrals
    int interval_order = 16;  // Gauss order along [0,1]
    int refine_levels = 3;
    double coarse_stencil = 0.02;  // level-0 step for refinement sweeps
    int coarse_fiber_radial = 8;
    int coarse_fiber_angular = 16;
};

struct FormSpec {
    int degree = 1;
    std::vector<std::string> coefficients;
};

struct Scenario {
    std::string name = "scenario";
    ManifoldSpec source;
    ManifoldSpec target;          // defaults to source when kind is empty
    std::string map_id = "id";
    std::map<std::string, double> map_params;
    std::string map2_id;          // second map for functoriality suites
    std::map<std::string, double> map2_params;
    double delta = 0.0;           // 0 = 0.4 * injectivity hint
    double delta0 = 0.0;          // 0 = 0.75 * delta
    uint64_t seed = 42;
    double tol_scale = 1.0;
    std::vector<std::string> suites;
    std::vector<FormSpec> forms;  // empty = catalog defaults
    GridSettings grids;
};

// Known suite names, in their deterministic execution order.
const std::vector<std::string>& suite_names();

Scenario scenario_from_config(const ConfigDocument& doc);
Scenario scenario_from_file(const std::string& path);

VerificationReport run_scenario(const Scenario& scenario);

// Residual-vs-level tables for the scenario's study-capable suites.
std::vector<StudyTable> convergence_study(const Scenario& scenario, int levels);

}  // namespace plb
