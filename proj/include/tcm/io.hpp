#pragma once

#include <string>
#include <vector>

#include "tcm/config.hpp"
#include "tcm/diagnostics.hpp"

namespace tcm {

// CSV schema, fixed order, values with 17 significant digits so binary64
// round-trips losslessly.
inline constexpr const char* csv_header = "t,A,B,E,crossing,l2_energy,energy_residual,max_linf";

std::string csv_text(const std::vector<DiagnosticsRow>& rows);
void write_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows);

// Snapshot: ASCII header "TCM1 n side t mu nu", then the five real-space
// arrays (u1, u2, v1, v2, theta), each preceded by its name line, as
// little-endian binary64, row-major.
void write_snapshot(const std::string& path, Transformer& tr, const TCMState& state);

struct Snapshot {
    int n = 0;
    double side = 0.0;
    double t = 0.0;
    double mu = 1.0;
    double nu = 1.0;
    std::vector<std::pair<std::string, std::vector<double>>> fields;
};

Snapshot read_snapshot(const std::string& path);

// Manifest: config echo (re-parsable) plus the run results as comments.
struct RunVerdicts {
    Termination termination = Termination::completed;
    bool decay_verdict = false;
    double decay_early_sup = 0.0;
    double decay_late_sup = 0.0;
    double gronwall_c_fit = 0.0;
    double condition_lhs = 0.0;
    double log_condition_lhs = 0.0;
    double advisory_cfl = 0.0;
};

std::string manifest_text(const RunConfig& cfg, const RunVerdicts& verdicts);
void write_manifest(const std::string& path, const RunConfig& cfg, const RunVerdicts& verdicts);

}  // namespace tcm
