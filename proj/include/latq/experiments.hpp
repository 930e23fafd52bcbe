// Ensemble experiment harness: transition / scaling / ratio sweeps over the
// random-CSP ensemble and the extreme-problem cost curve, with deterministic
// aggregation and CSV / structured-text rendering.
#pragma once

#include "latq/engine.hpp"
#include "latq/problems.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace latq {

inline constexpr const char* kVersion = "0.1.0";

// How the constraint count m is derived from a sweep point.
enum class ConstraintLaw {
    FromAlpha,  // m = round(alpha * n), ties to even
    None,       // m = 0 (the unconstrained dashed-curve analogue)
    Maximum,    // m = m_max (the maximally constrained analogue)
};

const char* to_string(ConstraintLaw law);
ConstraintLaw constraint_law_from_string(const std::string& name);

// round(alpha * n) with ties to even, independent of the FPU rounding mode.
int alpha_to_m(double alpha, int n);

struct ExperimentOptions {
    int threads = 1;
    int max_n = kDefaultFullSimMaxN;
    int instances = 200;  // per sweep point
};

// One aggregated sweep point. Ratio fields are zero except in ratio sweeps;
// label distinguishes the extreme kinds.
struct SweepRow {
    double parameter = 0.0;  // alpha (transition) or n (scaling/ratio/extreme)
    int m = -1;              // constraint count used; -1 when not applicable
    int instances = 0;
    double mean_cost = 0.0;
    double stderr_cost = 0.0;
    double mean_solutions = 0.0;
    double mean_p_soln = 0.0;  // at the chosen step count
    double mean_steps = 0.0;   // mean chosen step count
    double mean_ratio = 0.0;   // mean C / sqrt(N_L / S)
    double stderr_ratio = 0.0;
    std::string label;  // extreme rows: "min" or "max"
};

struct SweepResult {
    std::string kind;  // "transition" | "scaling" | "extreme" | "ratio"
    PhasePolicy policy = PhasePolicy::Staged;
    std::uint64_t seed = 0;
    std::vector<SweepRow> rows;
    std::vector<std::string> warnings;  // skipped points, failed instances
};

// Mean cost over the random ensemble per alpha at fixed n. Infeasible alphas
// (m > m_max) are skipped with a warning row in `warnings`.
SweepResult transition_sweep(int n, const std::vector<double>& alphas, PhasePolicy policy,
                             std::uint64_t seed, const ExperimentOptions& options = {});

// Mean cost over the random ensemble per n at fixed alpha (or the m = 0 /
// m = m_max analogues under the other constraint laws).
SweepResult scaling_sweep(double alpha, const std::vector<int>& n_list, PhasePolicy policy,
                          std::uint64_t seed, ConstraintLaw law = ConstraintLaw::FromAlpha,
                          const ExperimentOptions& options = {});

// Deterministic cost / chosen-step curve for both extreme kinds over even n
// in [n_min, n_max], via the reduced simulators (no size cap).
SweepResult extreme_cost_curve(int n_min, int n_max, PhasePolicy policy);

// Mean of C / sqrt(N_L / S) per n: the ratio of the structured cost to the
// unstructured-search scaling baseline.
SweepResult unstructured_ratio(double alpha, const std::vector<int>& n_list, PhasePolicy policy,
                               std::uint64_t seed, const ExperimentOptions& options = {});

// Renderers. CSV uses one fixed header per sweep kind; structured text is a
// commented, aligned table. Identical inputs produce identical bytes.
std::string to_csv(const SweepResult& result);
std::string to_structured_text(const SweepResult& result);

// Metadata sidecar (seed, policy, version, wall time) in structured text.
std::string metadata_text(const SweepResult& result, const std::string& command,
                          double wall_seconds);

}  // namespace latq
