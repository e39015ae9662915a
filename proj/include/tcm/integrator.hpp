#pragma once

#include <functional>
#include <vector>

#include "tcm/dynamics.hpp"

namespace tcm {

enum class Formulation { full, perturbation };
enum class Termination { completed, blowup_detected, nonfinite };

const char* to_string(Termination t);
const char* to_string(Formulation f);

struct StepperConfig {
    double dt = 0.0;
    double t_end = 0.0;
    double blowup_threshold = 1e6;   // on the H3 norm of the integrated state
    Formulation formulation = Formulation::full;
    double mu = 1.0;
    double nu = 1.0;
    // Integrate only the stiff linear parts (exact multipliers, zero explicit
    // tendency); used to check the integrating factors against (2.1)-type flows.
    bool linear_only = false;
    // Emit a sample every this many steps; 0 means start and end only.
    int sample_every = 0;
};

// Everything a diagnostics consumer needs at one sample time. References
// are only valid inside the callback.
struct SamplePoint {
    const PerturbationState& pert;
    const LinearFlow& flow;
    const ForcingTriple& forcing;
    const TCMState& full;        // recomposed state
    double q_energy;             // RK4-integrated 1/2||state||^2 tracker
    long step = 0;
};

using SampleSink = std::function<void(const SamplePoint&)>;

struct Trajectory {
    std::vector<double> sample_times;
    Termination termination = Termination::completed;
    TCMState final_full;
    PerturbationState final_pert;
    double q_energy = 0.0;
    long steps_taken = 0;
    double state_h3 = 0.0;       // H3 norm of the integrated state at the end
};

// dt * max_xi * max grid velocity of the initial data; reporting only.
double advisory_cfl(Transformer& tr, const InitialCondition& ic, const StepperConfig& cfg);

// One IF-RK4 step of the full formulation (exposed for convergence tests).
TCMState step_full(Transformer& tr, const TCMState& state, double dt, bool linear_only = false);

// Advance the configured formulation to t_end (or to blow-up / non-finite).
Trajectory integrate(Transformer& tr, const InitialCondition& ic, const StepperConfig& cfg,
                     const SampleSink& sink = {});

}  // namespace tcm
