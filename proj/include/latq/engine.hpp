// Full-lattice simulator: drives the state vector through phased evolution
// steps and reports solution probability, chosen step count, and cost.
#pragma once

#include "latq/oracle.hpp"
#include "latq/transform.hpp"

#include <vector>

namespace latq {

struct EngineOptions {
    // Refuse instances whose state vector would exceed 2^max_n amplitudes.
    // Callers may raise this deliberately; memory grows as 2^n doubles.
    int max_n = kDefaultFullSimMaxN;
    // When set, each step record carries the probability in goods per size.
    bool record_profile = false;
};

struct StepRecord {
    int step = 0;                       // 1-based
    double p_soln = 0.0;                // probability of measuring a solution
    double norm_drift = 0.0;            // | ||psi||^2 - 1 | after this step
    std::vector<double> level_profile;  // good probability per size, when recorded
};

struct RunRecord {
    int n = 0;
    int L = 0;
    PhasePolicy policy = PhasePolicy::Staged;
    int steps = 0;                 // J, the number of steps executed
    double p_soln = 0.0;           // after the final step
    int chosen_steps = 0;          // argmin_j j / P_soln(j); 0 when all zero
    double chosen_p_soln = 0.0;
    double cost = 0.0;             // chosen_steps / chosen_p_soln (infinity when none)
    double max_norm_drift = 0.0;
    std::vector<StepRecord> trace;  // one entry per step
};

// Step count selected by the cost rule, with its probability and cost.
struct StepChoice {
    int steps = 0;
    double p_soln = 0.0;
    double cost = 0.0;
};

// Probability of measuring any solution set (compensated sum).
double solution_probability(const StateVector& state, const ConsistencyMap& consistency);

// Probability in goods per set size: profile[k] = sum of amp^2 over good sets
// of size k. The remainder up to the norm sits in nogoods.
std::vector<double> level_profile(const StateVector& state, const ConsistencyMap& consistency);

// Run `steps` full evolution steps from the empty-set start state.
// Throws CapExceeded when n > options.max_n and InvalidState if the norm
// drifts past the internal integrity bound.
RunRecord run_trial(const ConsistencyMap& consistency, int steps, PhasePolicy policy,
                    const EngineOptions& options = {});

// Closure plus run, for callers starting from a raw instance.
RunRecord run_instance(const ProblemInstance& problem, int steps, PhasePolicy policy,
                       const EngineOptions& options = {});

// Fill chosen_steps / chosen_p_soln / cost from the recorded trace: smallest
// step count minimizing steps / p_soln, cost infinity when every step is zero.
void select_best_steps(RunRecord& record);

// The same selection as a value; throws NoSolutionAmplitude when every step
// has zero solution probability.
StepChoice choose_best_steps(const RunRecord& record);

// Run to j_max and select the best step count; j_max defaults to max(L, 1)
// ("one could try the algorithm for all values of J up to L").
StepChoice optimal_steps(const ConsistencyMap& consistency, int j_max, PhasePolicy policy,
                         const EngineOptions& options = {});
StepChoice optimal_steps(const ProblemInstance& problem, int j_max, PhasePolicy policy,
                         const EngineOptions& options = {});
StepChoice optimal_steps(const ConsistencyMap& consistency, PhasePolicy policy,
                         const EngineOptions& options = {});

}  // namespace latq
