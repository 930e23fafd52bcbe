#include "latq/problems.hpp"

#include "latq/errors.hpp"
#include "latq/rng.hpp"

#include <string>

namespace latq {
namespace {

// Enumeration guard: direct enumerations stay below this many candidates.
constexpr std::int64_t kEnumerationLimit = std::int64_t{1} << 25;

// Next integer with the same popcount (Gosper's hack); enumerate all size-k
// masks by starting from the smallest and stopping past the limit.
std::uint64_t next_same_popcount(std::uint64_t v) {
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

bool hits_base_nogood(const ProblemInstance& problem, std::uint64_t mask) {
    for (const AssumptionSet& g : problem.base_nogoods) {
        if ((g.bits & mask) == g.bits) return true;
    }
    return false;
}

}  // namespace

std::int64_t m_max(int L) {
    if (L < 1) throw InfeasibleSpec("m_max: L must be at least 1");
    return 3 * (static_cast<std::int64_t>(L) * (L - 1) / 2);
}

ProblemInstance gen_random_csp(const EnsembleSpec& spec, std::uint64_t instance_index) {
    if (spec.n < 2 || spec.n % 2 != 0) {
        throw InfeasibleSpec("ensemble: n must be even and positive, got " +
                             std::to_string(spec.n));
    }
    const int L = spec.n / 2;
    if (spec.m < 0 || spec.m > m_max(L)) {
        throw InfeasibleSpec("ensemble: m = " + std::to_string(spec.m) + " outside [0, " +
                             std::to_string(m_max(L)) + "] for n = " + std::to_string(spec.n));
    }

    ProblemInstance problem;
    problem.n = spec.n;
    problem.L = L;
    problem.structure = VariableStructure{L, 2};

    SplitMix64 rng = substream(spec.seed, instance_index);

    // One value per variable, drawn uniformly.
    AssumptionSet solution = AssumptionSet::empty();
    for (int v = 1; v <= L; ++v) {
        const int value = static_cast<int>(rng.below(2));
        solution = solution.with(problem.assumption_index(v, value));
    }
    problem.solution = solution;

    // Eligible pool: binary assignments (two assumptions of distinct
    // variables) that are not subsets of the solution, in lexicographic
    // order of (first index, second index). The fixed order makes the
    // without-replacement draw portable.
    std::vector<AssumptionSet> pool;
    pool.reserve(static_cast<std::size_t>(m_max(L)));
    for (int i = 1; i <= spec.n; ++i) {
        for (int j = i + 1; j <= spec.n; ++j) {
            if ((i - 1) / 2 == (j - 1) / 2) continue;  // same variable: necessary nogood
            const AssumptionSet pair = AssumptionSet::empty().with(i).with(j);
            if (pair.subset_of(solution)) continue;
            pool.push_back(pair);
        }
    }

    // Partial Fisher-Yates: the first m slots become the sample.
    for (int t = 0; t < spec.m; ++t) {
        const std::size_t r = t + rng.below(pool.size() - t);
        std::swap(pool[t], pool[r]);
        problem.base_nogoods.push_back(pool[t]);
    }
    for (const AssumptionSet& s : necessary_nogoods(L, 2)) problem.base_nogoods.push_back(s);
    return problem;
}

ProblemInstance extreme_problem(ExtremeKind kind, int n, int L) {
    if (n < 1 || n > 63) throw InfeasibleSpec("extreme problem: n must be in [1, 63]");
    if (L < 0 || L > n) throw InfeasibleSpec("extreme problem: L must be in [0, n]");

    ProblemInstance problem;
    problem.n = n;
    problem.L = L;

    if (kind == ExtremeKind::MaxNogood) {
        for (int i = L + 1; i <= n; ++i) {
            problem.base_nogoods.push_back(AssumptionSet::single(i));
        }
        problem.solution = AssumptionSet::full(L);
        return problem;
    }

    // Min kind: every set of size L+1 is a base nogood.
    if (L == n) return problem;  // nothing above level n
    if (binomial(n, L + 1) > kEnumerationLimit) {
        throw InfeasibleSpec("extreme problem: too many size-" + std::to_string(L + 1) +
                             " base nogoods at n = " + std::to_string(n) +
                             "; use the reduced simulator instead");
    }
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t mask = (std::uint64_t{1} << (L + 1)) - 1; mask != 0 && mask < limit;
         mask = next_same_popcount(mask)) {
        problem.base_nogoods.push_back({mask});
    }
    return problem;
}

ProblemInstance encode_graph_coloring(const std::vector<Edge>& edges, int nodes, int colors) {
    if (nodes < 1 || colors < 1) {
        throw MalformedProblem("coloring: need at least one node and one color");
    }
    if (static_cast<std::int64_t>(nodes) * colors > 63) {
        throw MalformedProblem("coloring: nodes * colors must stay within 63 assumptions");
    }

    ProblemInstance problem;
    problem.n = nodes * colors;
    problem.L = nodes;
    problem.structure = VariableStructure{nodes, colors};

    for (const Edge& e : edges) {
        if (e.u == e.v) {
            throw MalformedProblem("coloring: self-loop at node " + std::to_string(e.u));
        }
        if (e.u < 1 || e.u > nodes || e.v < 1 || e.v > nodes) {
            throw MalformedProblem("coloring: edge endpoint outside 1.." + std::to_string(nodes));
        }
        for (int color = 0; color < colors; ++color) {
            problem.base_nogoods.push_back(AssumptionSet::empty()
                                               .with(problem.assumption_index(e.u, color))
                                               .with(problem.assumption_index(e.v, color)));
        }
    }
    for (const AssumptionSet& s : necessary_nogoods(nodes, colors)) {
        problem.base_nogoods.push_back(s);
    }
    return problem;
}

ProblemInstance encode_3sat(const std::vector<Clause>& clauses, int variables) {
    if (variables < 1 || 2 * variables > 63) {
        throw MalformedProblem("3sat: variable count must be in [1, 31]");
    }

    ProblemInstance problem;
    problem.n = 2 * variables;
    problem.L = variables;
    problem.structure = VariableStructure{variables, 2};

    for (const Clause& clause : clauses) {
        AssumptionSet nogood = AssumptionSet::empty();
        AssumptionSet seen_variables = AssumptionSet::empty();
        for (const Literal& lit : clause.lits) {
            if (lit.variable < 1 || lit.variable > variables) {
                throw MalformedProblem("3sat: variable " + std::to_string(lit.variable) +
                                       " outside 1.." + std::to_string(variables));
            }
            if (seen_variables.contains(lit.variable)) {
                throw MalformedProblem("3sat: clause must reference three distinct variables");
            }
            seen_variables = seen_variables.with(lit.variable);
            // The clause is false exactly when every literal is; a positive
            // literal is falsified by value 0, a negated one by value 1.
            const int falsifying = lit.negated ? 1 : 0;
            nogood = nogood.with(problem.assumption_index(lit.variable, falsifying));
        }
        problem.base_nogoods.push_back(nogood);
    }
    for (const AssumptionSet& s : necessary_nogoods(variables, 2)) {
        problem.base_nogoods.push_back(s);
    }
    return problem;
}

std::int64_t count_solutions_bruteforce(const ProblemInstance& problem) {
    if (problem.structure) {
        const int nu = problem.structure->variables;
        const int c = problem.structure->values;
        double space = 1.0;
        for (int v = 0; v < nu; ++v) space *= c;
        if (space > static_cast<double>(kEnumerationLimit)) {
            throw InfeasibleSpec("bruteforce: c^nu exceeds the enumeration limit");
        }
        // Mixed-radix counter over complete assignments.
        std::vector<int> value(static_cast<std::size_t>(nu), 0);
        std::int64_t count = 0;
        for (;;) {
            AssumptionSet set = AssumptionSet::empty();
            for (int v = 1; v <= nu; ++v) set = set.with(problem.assumption_index(v, value[v - 1]));
            if (!hits_base_nogood(problem, set.bits)) ++count;
            int pos = 0;
            while (pos < nu && ++value[pos] == c) value[pos++] = 0;
            if (pos == nu) break;
        }
        return count;
    }

    if (binomial(problem.n, problem.L) > kEnumerationLimit) {
        throw InfeasibleSpec("bruteforce: binom(n, L) exceeds the enumeration limit");
    }
    if (problem.L == 0) return hits_base_nogood(problem, 0) ? 0 : 1;
    std::int64_t count = 0;
    const std::uint64_t limit = std::uint64_t{1} << problem.n;
    for (std::uint64_t mask = (std::uint64_t{1} << problem.L) - 1; mask < limit;
         mask = next_same_popcount(mask)) {
        if (!hits_base_nogood(problem, mask)) ++count;
    }
    return count;
}

}  // namespace latq
