#pragma once

#include <string>

#include "tcm/integrator.hpp"

namespace tcm {

enum class AmplitudeMode { remark11, explicit_amplitude };

const char* to_string(AmplitudeMode m);

// Flat key-value run description. Values accept plain numbers plus the
// literal suffix "pi" (e.g. side = 80pi).
struct RunConfig {
    int n_points = 0;
    double side = 0.0;
    double epsilon = 0.0;
    AmplitudeMode amplitude_mode = AmplitudeMode::remark11;
    double amplitude = 0.0;          // used when amplitude_mode = explicit
    double w0_amplitude = 0.0;
    double c0_amplitude = 0.0;
    double theta0_amplitude = 0.0;
    double mu = 1.0;
    double nu = 1.0;
    double dt = 0.0;
    double t_end = 0.0;
    double sample_interval = 0.0;    // 0: defaults to t_end / 100, clamped to >= dt
    double blowup_threshold = 1e6;
    double c_for_condition = 1.0;
    Formulation formulation = Formulation::full;
    std::string output_dir = "out";

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Parse + validate. ParseError on malformed/missing/unknown keys,
// ValidationError (naming the field) on invariant violations.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// Round-trippable echo: parse_config_text(emit_config(cfg)) == cfg.
std::string emit_config(const RunConfig& cfg);

void validate(const RunConfig& cfg);

}  // namespace tcm
