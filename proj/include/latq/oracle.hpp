// Problem-dependent consistency: nogood closure over the lattice, solution
// identification, and the per-step phase assignment.
#pragma once

#include "latq/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace latq {

// Optional CSP shape: `variables` variables with `values` values each;
// assumption (v, kappa) maps to index values*(v-1) + kappa + 1, kappa in
// 0..values-1, so n = variables * values.
struct VariableStructure {
    int variables = 0;
    int values = 0;

    friend bool operator==(const VariableStructure&, const VariableStructure&) = default;
};

struct ProblemInstance {
    int n = 0;
    int L = 0;
    std::vector<AssumptionSet> base_nogoods;
    std::optional<VariableStructure> structure;
    std::optional<AssumptionSet> solution;  // prespecified solution, when generated

    int assumption_index(int variable, int value) const {
        return structure->values * (variable - 1) + value + 1;
    }

    friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

enum class PhasePolicy {
    Staged,      // invert nogoods and goods below min(L, j-1)
    NogoodOnly,  // invert nogoods only
};

const char* to_string(PhasePolicy policy);
PhasePolicy phase_policy_from_string(const std::string& name);

// Good/nogood status of every set, plus the solution list, precomputed once
// per instance and shared read-only across steps and trials.
class ConsistencyMap {
public:
    ConsistencyMap(int n, std::vector<std::uint64_t> good_bits, int L);

    int n() const { return n_; }
    int L() const { return L_; }
    std::uint64_t set_count() const { return std::uint64_t{1} << n_; }

    bool good(std::uint64_t index) const {
        return (good_bits_[index >> 6] >> (index & 63)) & 1ULL;
    }
    bool is_solution(std::uint64_t index) const {
        return good(index) && std::popcount(index) == L_;
    }
    const std::vector<std::uint64_t>& solution_indices() const { return solutions_; }

private:
    int n_;
    int L_;
    std::vector<std::uint64_t> good_bits_;
    std::vector<std::uint64_t> solutions_;
};

// Superset closure of the base nogoods by lattice dynamic programming: a set
// is nogood iff it is a base nogood or any immediate subset is nogood.
// O(n 2^n); throws MalformedProblem on a base nogood with bits >= 2^n.
ConsistencyMap close_nogoods(const ProblemInstance& problem);

// The nu * binom(c,2) sets assigning two values to one variable.
std::vector<AssumptionSet> necessary_nogoods(int variables, int values);

// Size threshold below which goods are inverted at the given step (1-based).
inline int phase_size_threshold(PhasePolicy policy, int step, int L) {
    return policy == PhasePolicy::Staged ? std::min(L, step - 1) : 0;
}

// rho_s = -1 iff s is nogood or |s| < min(L, step-1) (Staged), else +1.
std::vector<std::int8_t> phase_vector(const ConsistencyMap& consistency, PhasePolicy policy,
                                      int step, int L);

std::int64_t solution_count(const ConsistencyMap& consistency);

// --- instance files -------------------------------------------------------
//
// JSON schema (documented in the README):
//   { "n": int, "L": int, "nogoods": [[1-based indices]...],
//     "variables": {"count": nu, "values": c},   // optional
//     "solution": [1-based indices] }            // optional
// Round trips are lossless, including nogood order.

ProblemInstance instance_from_json(const std::string& text);
std::string instance_to_json(const ProblemInstance& problem);
ProblemInstance load_instance(const std::string& path);
void save_instance(const ProblemInstance& problem, const std::string& path);

}  // namespace latq
