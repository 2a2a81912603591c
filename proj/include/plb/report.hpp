// report.hpp — verification reports with a versioned schema, serialized as
// byte-stable JSON; convergence tables additionally as CSV.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plb/core.hpp"

namespace plb {

inline constexpr const char* kReportSchemaVersion = "1.0";

struct CheckResult {
    std::string suite;
    std::string name;
    std::vector<double> residuals;   // one per refinement level, coarsest first
    std::optional<double> order;     // fitted log-log slope when levels >= 2
    double tolerance = 0.0;
    std::string tolerance_source;    // which configured tolerance was applied
    bool passed = false;
    std::string error;               // non-empty when the check itself failed to run
    std::vector<std::string> notes;
    double wall_ms = 0.0;            // kept out of the stable report body
};

struct VerificationReport {
    std::string scenario_name;
    uint64_t seed = 0;
    double tol_scale = 1.0;
    std::string catalog_hash;
    std::vector<std::string> metadata_notes;
    std::vector<CheckResult> checks;

    int passed_count() const;
    int failed_count() const;
    bool all_passed() const;

    // Deterministic JSON (no timings); identical inputs give identical bytes.
    std::string to_json() const;
    // Sidecar timing table: check name, milliseconds.
    std::string timings_csv() const;
};

// Convergence-study table for one check.
struct StudyTable {
    std::string name;
    std::vector<double> level_parameter;  // h or order, per level
    std::vector<double> residuals;
    double slope = 0.0;
    bool monotone = true;

    std::string to_csv() const;
};

// Structural validation against the published schema; returns problems.
std::vector<std::string> validate_report_json(const std::string& json_text);

// FNV-1a over catalog descriptors; reported for provenance.
std::string fnv1a_hex(const std::string& payload);

// Least-squares slope of log(residual) against level index * log(2).
double fitted_order(const std::vector<double>& residuals);

}  // namespace plb
