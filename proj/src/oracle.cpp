#include "latq/oracle.hpp"

#include "latq/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace latq {
namespace {

// n is capped so set indices fit in 64 bits; the full simulator applies its
// own much smaller memory cap on top of this.
void validate_instance(const ProblemInstance& problem) {
    if (problem.n < 1 || problem.n > 63) {
        throw MalformedProblem("instance: n must be in [1, 63], got " +
                               std::to_string(problem.n));
    }
    if (problem.L < 0 || problem.L > problem.n) {
        throw MalformedProblem("instance: L must be in [0, n], got " +
                               std::to_string(problem.L));
    }
    const std::uint64_t limit = std::uint64_t{1} << problem.n;
    for (const AssumptionSet& s : problem.base_nogoods) {
        if (s.bits >= limit) {
            throw MalformedProblem("instance: nogood mentions an assumption beyond n");
        }
    }
    if (problem.structure) {
        const auto& vs = *problem.structure;
        if (vs.variables < 1 || vs.values < 1 || vs.variables * vs.values != problem.n) {
            throw MalformedProblem("instance: variable structure does not match n");
        }
    }
    if (problem.solution && problem.solution->bits >= limit) {
        throw MalformedProblem("instance: solution mentions an assumption beyond n");
    }
}

std::vector<int> indices_of(AssumptionSet set) {
    std::vector<int> out;
    std::uint64_t bits = set.bits;
    while (bits != 0) {
        int bit = std::countr_zero(bits);
        out.push_back(bit + 1);
        bits &= bits - 1;
    }
    return out;
}

AssumptionSet set_of_indices(const std::vector<int>& indices) {
    AssumptionSet set = AssumptionSet::empty();
    for (int index : indices) {
        if (index < 1 || index > 63) {
            throw MalformedProblem("instance: assumption index " + std::to_string(index) +
                                   " out of range");
        }
        if (set.contains(index)) {
            throw MalformedProblem("instance: repeated assumption index " +
                                   std::to_string(index));
        }
        set = set.with(index);
    }
    return set;
}

}  // namespace

const char* to_string(PhasePolicy policy) {
    return policy == PhasePolicy::Staged ? "staged" : "nogood-only";
}

PhasePolicy phase_policy_from_string(const std::string& name) {
    if (name == "staged") return PhasePolicy::Staged;
    if (name == "nogood-only") return PhasePolicy::NogoodOnly;
    throw MalformedProblem("unknown phase policy '" + name +
                           "' (expected 'staged' or 'nogood-only')");
}

ConsistencyMap::ConsistencyMap(int n, std::vector<std::uint64_t> good_bits, int L)
    : n_(n), L_(L), good_bits_(std::move(good_bits)) {
    const std::uint64_t count = set_count();
    if (good_bits_.size() != (count + 63) / 64) {
        throw InvalidState("consistency map: bitmap size does not match n");
    }
    for (std::uint64_t index = 0; index < count; ++index) {
        if (is_solution(index)) solutions_.push_back(index);
    }
}

ConsistencyMap close_nogoods(const ProblemInstance& problem) {
    validate_instance(problem);
    const int n = problem.n;
    const std::uint64_t count = std::uint64_t{1} << n;

    // Start from the base nogoods, then sweep sets in increasing integer
    // order: every strict subset of a set is a smaller integer, so by the
    // time a set is visited all of its immediate subsets are final.
    std::vector<std::uint64_t> nogood((count + 63) / 64, 0);
    auto test = [&](std::uint64_t index) -> bool {
        return (nogood[index >> 6] >> (index & 63)) & 1ULL;
    };
    auto mark = [&](std::uint64_t index) { nogood[index >> 6] |= 1ULL << (index & 63); };

    for (const AssumptionSet& s : problem.base_nogoods) mark(s.bits);

    for (std::uint64_t index = 1; index < count; ++index) {
        if (test(index)) continue;
        std::uint64_t bits = index;
        while (bits != 0) {
            const std::uint64_t low = bits & (~bits + 1);
            if (test(index ^ low)) {
                mark(index);
                break;
            }
            bits ^= low;
        }
    }

    for (std::uint64_t& word : nogood) word = ~word;  // goods are the complement
    return ConsistencyMap(n, std::move(nogood), problem.L);
}

std::vector<AssumptionSet> necessary_nogoods(int variables, int values) {
    std::vector<AssumptionSet> out;
    out.reserve(static_cast<std::size_t>(variables) * values * (values - 1) / 2);
    for (int v = 1; v <= variables; ++v) {
        for (int a = 0; a < values; ++a) {
            for (int b = a + 1; b < values; ++b) {
                const int first = values * (v - 1) + a + 1;
                const int second = values * (v - 1) + b + 1;
                out.push_back(AssumptionSet::empty().with(first).with(second));
            }
        }
    }
    return out;
}

std::vector<std::int8_t> phase_vector(const ConsistencyMap& consistency, PhasePolicy policy,
                                      int step, int L) {
    if (step < 1) throw InvalidState("phase vector: step numbering starts at 1");
    const int threshold = phase_size_threshold(policy, step, L);
    const std::uint64_t count = consistency.set_count();
    std::vector<std::int8_t> rho(count, 1);
    for (std::uint64_t index = 0; index < count; ++index) {
        if (!consistency.good(index) || std::popcount(index) < threshold) rho[index] = -1;
    }
    return rho;
}

std::int64_t solution_count(const ConsistencyMap& consistency) {
    return static_cast<std::int64_t>(consistency.solution_indices().size());
}

// --- instance files -------------------------------------------------------

ProblemInstance instance_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedProblem(std::string("instance: invalid JSON: ") + e.what());
    }

    ProblemInstance problem;
    try {
        problem.n = doc.at("n").get<int>();
        problem.L = doc.at("L").get<int>();
        for (const auto& entry : doc.at("nogoods")) {
            problem.base_nogoods.push_back(set_of_indices(entry.get<std::vector<int>>()));
        }
        if (doc.contains("variables")) {
            VariableStructure vs;
            vs.variables = doc["variables"].at("count").get<int>();
            vs.values = doc["variables"].at("values").get<int>();
            problem.structure = vs;
        }
        if (doc.contains("solution")) {
            problem.solution = set_of_indices(doc["solution"].get<std::vector<int>>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw MalformedProblem(std::string("instance: missing or mistyped field: ") + e.what());
    }
    validate_instance(problem);
    return problem;
}

std::string instance_to_json(const ProblemInstance& problem) {
    validate_instance(problem);
    nlohmann::json doc;
    doc["n"] = problem.n;
    doc["L"] = problem.L;
    auto nogoods = nlohmann::json::array();
    for (const AssumptionSet& s : problem.base_nogoods) nogoods.push_back(indices_of(s));
    doc["nogoods"] = std::move(nogoods);
    if (problem.structure) {
        doc["variables"] = {{"count", problem.structure->variables},
                            {"values", problem.structure->values}};
    }
    if (problem.solution) doc["solution"] = indices_of(*problem.solution);
    return doc.dump(2) + "\n";
}

ProblemInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedProblem("instance: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return instance_from_json(buffer.str());
}

void save_instance(const ProblemInstance& problem, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("instance: cannot write '" + path + "'");
    out << instance_to_json(problem);
    if (!out) throw Error("instance: write to '" + path + "' failed");
}

}  // namespace latq
