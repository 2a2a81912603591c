#include "plb/report.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace plb {

using nlohmann::json;

int VerificationReport::passed_count() const {
    int n = 0;
    for (const auto& c : checks) n += c.passed ? 1 : 0;
    return n;
}
int VerificationReport::failed_count() const {
    return static_cast<int>(checks.size()) - passed_count();
}
bool VerificationReport::all_passed() const { return failed_count() == 0; }

std::string VerificationReport::to_json() const {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["scenario"] = scenario_name;
    j["seed"] = seed;
    j["tol_scale"] = tol_scale;
    j["catalog_hash"] = catalog_hash;
    j["metadata_notes"] = metadata_notes;
    json checks_json = json::array();
    for (const auto& c : checks) {
        json cj;
        cj["suite"] = c.suite;
        cj["name"] = c.name;
        cj["residuals"] = c.residuals;
        if (c.order)
            cj["order"] = *c.order;
        else
            cj["order"] = nullptr;
        cj["tolerance"] = c.tolerance;
        cj["tolerance_source"] = c.tolerance_source;
        cj["passed"] = c.passed;
        cj["error"] = c.error;
        cj["notes"] = c.notes;
        checks_json.push_back(cj);
    }
    j["checks"] = checks_json;
    j["summary"] = {{"total", checks.size()},
                    {"passed", passed_count()},
                    {"failed", failed_count()}};
    return j.dump(2) + "\n";
}

std::string VerificationReport::timings_csv() const {
    std::string out = "suite,check,wall_ms\n";
    char buf[64];
    for (const auto& c : checks) {
        snprintf(buf, sizeof(buf), "%.3f", c.wall_ms);
        out += c.suite + "," + c.name + "," + buf + "\n";
    }
    return out;
}

std::string StudyTable::to_csv() const {
    std::string out = "level,parameter,residual\n";
    char buf[96];
    for (size_t i = 0; i < residuals.size(); ++i) {
        snprintf(buf, sizeof(buf), "%zu,%.10g,%.10g", i, level_parameter[i], residuals[i]);
        out += std::string(buf) + "\n";
    }
    snprintf(buf, sizeof(buf), "# slope,%.6g,monotone,%s", slope, monotone ? "yes" : "no");
    out += std::string(buf) + "\n";
    return out;
}

std::vector<std::string> validate_report_json(const std::string& json_text) {
    std::vector<std::string> problems;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        problems.push_back(std::string("not valid JSON: ") + e.what());
        return problems;
    }
    auto need = [&](const char* key, const char* type) {
        if (!j.contains(key)) {
            problems.push_back(std::string("missing key ") + key);
            return;
        }
        const auto& v = j[key];
        bool ok = (std::string(type) == "string" && v.is_string()) ||
                  (std::string(type) == "number" && v.is_number()) ||
                  (std::string(type) == "array" && v.is_array()) ||
                  (std::string(type) == "object" && v.is_object());
        if (!ok) problems.push_back(std::string(key) + " has the wrong type");
    };
    need("schema_version", "string");
    need("scenario", "string");
    need("seed", "number");
    need("tol_scale", "number");
    need("catalog_hash", "string");
    need("metadata_notes", "array");
    need("checks", "array");
    need("summary", "object");
    if (j.contains("schema_version") && j["schema_version"].is_string() &&
        j["schema_version"] != kReportSchemaVersion)
        problems.push_back("unknown schema version");
    if (j.contains("checks") && j["checks"].is_array()) {
        for (const auto& c : j["checks"]) {
            for (const char* key : {"suite", "name", "residuals", "tolerance",
                                    "tolerance_source", "passed", "error", "notes"})
                if (!c.contains(key))
                    problems.push_back(std::string("check missing key ") + key);
            if (c.contains("passed") && !c["passed"].is_boolean())
                problems.push_back("check.passed must be boolean");
        }
    }
    if (j.contains("summary")) {
        for (const char* key : {"total", "passed", "failed"})
            if (!j["summary"].contains(key))
                problems.push_back(std::string("summary missing key ") + key);
    }
    return problems;
}

std::string fnv1a_hex(const std::string& payload) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[24];
    snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double fitted_order(const std::vector<double>& residuals) {
    // slope of log2(residual) against level index, negated: order p means
    // residual ~ C * 2^{-p * level}.
    const int n = static_cast<int>(residuals.size());
    if (n < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int used = 0;
    for (int i = 0; i < n; ++i) {
        if (residuals[i] <= 0.0) continue;
        double x = i, y = std::log2(residuals[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used < 2) return 0.0;
    double denominator = used * sxx - sx * sx;
    if (denominator == 0.0) return 0.0;
    return -(used * sxy - sx * sy) / denominator;
}

}  // namespace plb
