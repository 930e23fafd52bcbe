#include "latq/engine.hpp"

#include "latq/errors.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace latq {
namespace {

// Anything past this indicates a simulator bug, not roundoff; observed drift
// stays orders of magnitude smaller (the tests pin 1e-10 on sizable runs).
constexpr double kNormGuard = 1e-6;

void kahan_add(double& sum, double& carry, double term) {
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
}

}  // namespace

void select_best_steps(RunRecord& record) {
    record.chosen_steps = 0;
    record.chosen_p_soln = 0.0;
    record.cost = std::numeric_limits<double>::infinity();
    for (const StepRecord& step : record.trace) {
        if (step.p_soln <= 0.0) continue;
        const double cost = step.step / step.p_soln;
        if (cost < record.cost) {
            record.chosen_steps = step.step;
            record.chosen_p_soln = step.p_soln;
            record.cost = cost;
        }
    }
}

double solution_probability(const StateVector& state, const ConsistencyMap& consistency) {
    if (state.n != consistency.n()) {
        throw InvalidState("solution probability: state and consistency map disagree on n");
    }
    double sum = 0.0, carry = 0.0;
    for (std::uint64_t index : consistency.solution_indices()) {
        const double a = state.amp[index];
        kahan_add(sum, carry, a * a);
    }
    return sum;
}

std::vector<double> level_profile(const StateVector& state, const ConsistencyMap& consistency) {
    if (state.n != consistency.n()) {
        throw InvalidState("level profile: state and consistency map disagree on n");
    }
    std::vector<double> mass(state.n + 1, 0.0);
    std::vector<double> carry(state.n + 1, 0.0);
    for (std::uint64_t index = 0; index < state.amp.size(); ++index) {
        if (!consistency.good(index)) continue;
        const double a = state.amp[index];
        const int k = std::popcount(index);
        kahan_add(mass[k], carry[k], a * a);
    }
    return mass;
}

RunRecord run_trial(const ConsistencyMap& consistency, int steps, PhasePolicy policy,
                    const EngineOptions& options) {
    const int n = consistency.n();
    const int L = consistency.L();
    if (n > options.max_n) {
        throw CapExceeded("full simulator: n = " + std::to_string(n) + " exceeds the cap of " +
                          std::to_string(options.max_n) +
                          " (raise max_n to accept the 2^n memory cost)");
    }
    if (steps < 0) throw InvalidState("full simulator: negative step count");

    RunRecord record;
    record.n = n;
    record.L = L;
    record.policy = policy;
    record.steps = steps;
    record.trace.reserve(steps);

    StateVector state = StateVector::all_in_empty_set(n);
    record.p_soln = solution_probability(state, consistency);
    const std::uint64_t count = state.amp.size();

    for (int j = 1; j <= steps; ++j) {
        // Phase flip in place; materializing rho would double the traffic.
        const int threshold = phase_size_threshold(policy, j, L);
        for (std::uint64_t index = 0; index < count; ++index) {
            if (!consistency.good(index) || std::popcount(index) < threshold) {
                state.amp[index] = -state.amp[index];
            }
        }
        state = apply_u(std::move(state));

        StepRecord step;
        step.step = j;
        step.p_soln = solution_probability(state, consistency);
        step.norm_drift = std::abs(state.norm_squared() - 1.0);
        if (step.norm_drift > kNormGuard) {
            throw InvalidState("full simulator: norm drifted by " +
                               std::to_string(step.norm_drift) + " at step " + std::to_string(j));
        }
        if (options.record_profile) step.level_profile = level_profile(state, consistency);
        record.max_norm_drift = std::max(record.max_norm_drift, step.norm_drift);
        record.p_soln = step.p_soln;
        record.trace.push_back(std::move(step));
    }

    select_best_steps(record);
    return record;
}

RunRecord run_instance(const ProblemInstance& problem, int steps, PhasePolicy policy,
                       const EngineOptions& options) {
    return run_trial(close_nogoods(problem), steps, policy, options);
}

StepChoice choose_best_steps(const RunRecord& record) {
    if (record.chosen_steps == 0) {
        throw NoSolutionAmplitude("no step in 1.." + std::to_string(record.steps) +
                                  " reached positive solution probability");
    }
    return {record.chosen_steps, record.chosen_p_soln, record.cost};
}

StepChoice optimal_steps(const ConsistencyMap& consistency, int j_max, PhasePolicy policy,
                         const EngineOptions& options) {
    if (j_max < 1) throw InvalidState("optimal steps: j_max must be at least 1");
    return choose_best_steps(run_trial(consistency, j_max, policy, options));
}

StepChoice optimal_steps(const ProblemInstance& problem, int j_max, PhasePolicy policy,
                         const EngineOptions& options) {
    return optimal_steps(close_nogoods(problem), j_max, policy, options);
}

StepChoice optimal_steps(const ConsistencyMap& consistency, PhasePolicy policy,
                         const EngineOptions& options) {
    return optimal_steps(consistency, std::max(consistency.L(), 1), policy, options);
}

}  // namespace latq
