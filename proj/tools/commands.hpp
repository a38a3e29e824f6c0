#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qh::cli {

inline constexpr int schema_version = 1;

struct RunConfig {
    std::string command;
    std::string spec = "inf";
    int grid = 1 << 14;
    double offset = 0.5;
    int n_terms = 10000;
    int arch_terms = 40;
    int kmax = 40;
    std::string method = "both";        // coeffs: residue | quadrature | both
    std::string quadrature = "line";    // coeffs: line | dft
    std::string kind = "hankel";        // spectrum: hankel | toeplitz | pole-space
    int n = 64;
    std::vector<int> sweep{32, 64, 128, 256};
    std::vector<std::string> places{"inf"};
    std::vector<std::string> target;    // sonin: F' for the inductive map check
    double eps = 1e-3;
    double tolerance = 1e-9;
    std::vector<std::string> z;         // eval points "re,im"
    bool pole_part = false;
    std::string format = "json";        // json | csv | svg
    std::string output;                 // empty: stdout
};

nlohmann::json config_json(const RunConfig& config);
// FNV-1a 64 over the canonical config JSON, as 16 hex digits.
std::string config_hash(const RunConfig& config);

struct Output {
    std::string payload;
    std::string format;
};

Output cmd_eval(const RunConfig& config);
Output cmd_coeffs(const RunConfig& config);
Output cmd_spectrum(const RunConfig& config);
Output cmd_classify(const RunConfig& config);
Output cmd_sonin(const RunConfig& config);
Output cmd_figure(const RunConfig& config);
Output cmd_report(const RunConfig& config);

// Runs config.command, writes the payload to config.output (plus a sidecar <output>.meta.json
// holding the timestamp) or to stdout.  On failure prints error JSON and returns nonzero.
int run(const RunConfig& config);

}  // namespace qh::cli
