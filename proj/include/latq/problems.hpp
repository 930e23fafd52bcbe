// Problem construction: the random soluble binary-CSP ensemble, the two
// extreme problems as explicit instances, and graph-coloring / 3-SAT
// encoders into assumption nogoods.
#pragma once

#include "latq/oracle.hpp"
#include "latq/reduced.hpp"

#include <cstdint>
#include <vector>

namespace latq {

// Random-ensemble parameters. Instances use nu = L = n/2 binary variables;
// each instance is a pure function of (seed, instance index).
struct EnsembleSpec {
    int n = 0;               // even; L = n/2
    int m = 0;               // constraint nogoods on top of the necessary ones
    int instance_count = 0;  // how many instances the ensemble holds
    std::uint64_t seed = 0;
};

// Largest constraint count for the soluble ensemble: 3 * binom(L,2), the
// number of binary assignments that are not subsets of the chosen solution.
std::int64_t m_max(int L);

// Generate instance `instance_index` of the ensemble: pick a complete
// assignment as the solution, sample m distinct binary assignments that
// avoid it (uniformly, without replacement, over the lexicographically
// ordered eligible pairs), and append the necessary nogoods.
// Throws InfeasibleSpec when n is odd/nonpositive or m > m_max.
ProblemInstance gen_random_csp(const EnsembleSpec& spec, std::uint64_t instance_index);

// The extreme problems as explicit instances (for full-simulator use):
// min: base nogoods are all sets of size L+1; every size-L set is a solution.
// max: base nogoods are the singletons outside {1..L}; goods are exactly the
// subsets of the solution {1..L}.
// Throws InfeasibleSpec when the min kind would enumerate too many sets.
ProblemInstance extreme_problem(ExtremeKind kind, int n, int L);

struct Edge {
    int u = 0;
    int v = 0;
};

// Proper-coloring CSP: one assumption per (node, color); every edge
// contributes one nogood per color. Throws MalformedProblem on self-loops
// or out-of-range endpoints.
ProblemInstance encode_graph_coloring(const std::vector<Edge>& edges, int nodes, int colors);

// A 3-SAT literal: variable index 1..nu, optionally negated.
struct Literal {
    int variable = 0;
    bool negated = false;
};

struct Clause {
    Literal lits[3];
};

// 3-SAT as a binary CSP with value 0 = false, 1 = true: each clause yields
// the single size-3 nogood of assumptions falsifying it. Throws
// MalformedProblem when a clause repeats a variable or indexes out of range.
ProblemInstance encode_3sat(const std::vector<Clause>& clauses, int variables);

// Solution count by direct enumeration against the base nogoods, independent
// of the lattice DP: over complete assignments when variable structure is
// present, otherwise over all size-L sets. Throws InfeasibleSpec when the
// enumeration space is too large.
std::int64_t count_solutions_bruteforce(const ProblemInstance& problem);

}  // namespace latq
