#include "latq/experiments.hpp"

#include "latq/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace latq {
namespace {

void kahan_add(double& sum, double& carry, double term) {
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
}

// Run body(0..count-1) on a pool of workers pulling from an atomic counter.
// The first exception wins; remaining indices are abandoned.
void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);  // stop handing out work
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int workers = std::min(threads, count);
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct InstanceStat {
    bool ok = false;
    double cost = 0.0;
    double p_soln = 0.0;
    double steps = 0.0;
    double solutions = 0.0;
    double ratio = 0.0;
};

// Deterministic mean over the ok entries, in index order.
double mean_of(const std::vector<InstanceStat>& stats, double InstanceStat::*field, int count) {
    if (count == 0) return 0.0;
    double sum = 0.0, carry = 0.0;
    for (const InstanceStat& s : stats) {
        if (s.ok) kahan_add(sum, carry, s.*field);
    }
    return sum / count;
}

double stderr_of(const std::vector<InstanceStat>& stats, double InstanceStat::*field, int count,
                 double mean) {
    if (count < 2) return 0.0;
    double sum = 0.0, carry = 0.0;
    for (const InstanceStat& s : stats) {
        if (!s.ok) continue;
        const double d = s.*field - mean;
        kahan_add(sum, carry, d * d);
    }
    return std::sqrt(sum / (count - 1)) / std::sqrt(static_cast<double>(count));
}

// One ensemble sweep point: generate, solve, and aggregate `instances`
// instances with global indices starting at first_index.
SweepRow ensemble_point(double parameter, int n, int m, PhasePolicy policy, std::uint64_t seed,
                        std::uint64_t first_index, bool want_ratio,
                        const ExperimentOptions& options, std::vector<std::string>& warnings) {
    const int L = n / 2;
    const EnsembleSpec spec{n, m, options.instances, seed};
    const double n_l = divide_by_sqrt_pow2(binomial(n, L), 0);

    EngineOptions engine_options;
    engine_options.max_n = options.max_n;

    std::vector<InstanceStat> stats(static_cast<std::size_t>(options.instances));
    parallel_for(options.instances, options.threads, [&](int i) {
        const ProblemInstance problem = gen_random_csp(spec, first_index + i);
        const ConsistencyMap consistency = close_nogoods(problem);
        InstanceStat& stat = stats[static_cast<std::size_t>(i)];
        stat.solutions = static_cast<double>(solution_count(consistency));
        try {
            const StepChoice choice =
                optimal_steps(consistency, std::max(L, 1), policy, engine_options);
            stat.cost = choice.cost;
            stat.p_soln = choice.p_soln;
            stat.steps = choice.steps;
            if (want_ratio) stat.ratio = choice.cost / std::sqrt(n_l / stat.solutions);
            stat.ok = true;
        } catch (const NoSolutionAmplitude&) {
            stat.ok = false;  // excluded from means, reported below
        }
    });

    int ok_count = 0;
    for (std::size_t i = 0; i < stats.size(); ++i) {
        if (stats[i].ok) {
            ++ok_count;
        } else {
            warnings.push_back("instance " + std::to_string(first_index + i) +
                               " had zero solution probability at every step; excluded");
        }
    }

    SweepRow row;
    row.parameter = parameter;
    row.m = m;
    row.instances = options.instances;
    row.mean_cost = mean_of(stats, &InstanceStat::cost, ok_count);
    row.stderr_cost = stderr_of(stats, &InstanceStat::cost, ok_count, row.mean_cost);
    row.mean_solutions = mean_of(stats, &InstanceStat::solutions, ok_count);
    row.mean_p_soln = mean_of(stats, &InstanceStat::p_soln, ok_count);
    row.mean_steps = mean_of(stats, &InstanceStat::steps, ok_count);
    if (want_ratio) {
        row.mean_ratio = mean_of(stats, &InstanceStat::ratio, ok_count);
        row.stderr_ratio = stderr_of(stats, &InstanceStat::ratio, ok_count, row.mean_ratio);
    }
    return row;
}

void check_even(int n, const char* what) {
    if (n < 2 || n % 2 != 0) {
        throw InfeasibleSpec(std::string(what) + ": n must be even and positive, got " +
                             std::to_string(n));
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

const char* to_string(ConstraintLaw law) {
    switch (law) {
        case ConstraintLaw::FromAlpha: return "from-alpha";
        case ConstraintLaw::None: return "none";
        case ConstraintLaw::Maximum: return "max";
    }
    return "?";
}

ConstraintLaw constraint_law_from_string(const std::string& name) {
    if (name == "from-alpha") return ConstraintLaw::FromAlpha;
    if (name == "none") return ConstraintLaw::None;
    if (name == "max") return ConstraintLaw::Maximum;
    throw InfeasibleSpec("unknown constraint law '" + name +
                         "' (expected 'from-alpha', 'none', or 'max')");
}

int alpha_to_m(double alpha, int n) {
    const double x = alpha * n;
    const double lower = std::floor(x);
    const double diff = x - lower;
    double rounded;
    if (diff > 0.5) {
        rounded = lower + 1;
    } else if (diff < 0.5) {
        rounded = lower;
    } else {
        rounded = std::fmod(lower, 2.0) == 0.0 ? lower : lower + 1;  // tie to even
    }
    return static_cast<int>(rounded);
}

SweepResult transition_sweep(int n, const std::vector<double>& alphas, PhasePolicy policy,
                             std::uint64_t seed, const ExperimentOptions& options) {
    check_even(n, "transition sweep");
    SweepResult result;
    result.kind = "transition";
    result.policy = policy;
    result.seed = seed;
    const std::int64_t limit = m_max(n / 2);
    for (std::size_t p = 0; p < alphas.size(); ++p) {
        const int m = alpha_to_m(alphas[p], n);
        if (m < 0 || m > limit) {
            result.warnings.push_back("alpha " + fmt(alphas[p]) + " skipped: m = " +
                                      std::to_string(m) + " outside [0, " + std::to_string(limit) +
                                      "]");
            continue;
        }
        result.rows.push_back(ensemble_point(alphas[p], n, m, policy, seed,
                                             p * static_cast<std::uint64_t>(options.instances),
                                             false, options, result.warnings));
    }
    return result;
}

SweepResult scaling_sweep(double alpha, const std::vector<int>& n_list, PhasePolicy policy,
                          std::uint64_t seed, ConstraintLaw law,
                          const ExperimentOptions& options) {
    SweepResult result;
    result.kind = "scaling";
    result.policy = policy;
    result.seed = seed;
    for (std::size_t p = 0; p < n_list.size(); ++p) {
        const int n = n_list[p];
        check_even(n, "scaling sweep");
        const std::int64_t limit = m_max(n / 2);
        int m = 0;
        switch (law) {
            case ConstraintLaw::FromAlpha: m = alpha_to_m(alpha, n); break;
            case ConstraintLaw::None: m = 0; break;
            case ConstraintLaw::Maximum: m = static_cast<int>(limit); break;
        }
        if (m < 0 || m > limit) {
            result.warnings.push_back("n " + std::to_string(n) + " skipped: m = " +
                                      std::to_string(m) + " outside [0, " + std::to_string(limit) +
                                      "]");
            continue;
        }
        result.rows.push_back(ensemble_point(n, n, m, policy, seed,
                                             p * static_cast<std::uint64_t>(options.instances),
                                             false, options, result.warnings));
    }
    return result;
}

SweepResult extreme_cost_curve(int n_min, int n_max, PhasePolicy policy) {
    if (n_min < 2 || n_min > n_max) {
        throw InfeasibleSpec("extreme curve: need 2 <= n_min <= n_max");
    }
    SweepResult result;
    result.kind = "extreme";
    result.policy = policy;
    for (int n = n_min + (n_min % 2); n <= n_max; n += 2) {
        const int L = n / 2;
        for (const ExtremeKind kind : {ExtremeKind::MinNogood, ExtremeKind::MaxNogood}) {
            const RunRecord record = run_extreme(kind, n, L, L, policy);
            const StepChoice choice = choose_best_steps(record);
            SweepRow row;
            row.parameter = n;
            row.instances = 1;
            row.mean_cost = choice.cost;
            row.mean_p_soln = choice.p_soln;
            row.mean_steps = choice.steps;
            row.mean_solutions =
                kind == ExtremeKind::MinNogood ? divide_by_sqrt_pow2(binomial(n, L), 0) : 1.0;
            row.label = to_string(kind);
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

SweepResult unstructured_ratio(double alpha, const std::vector<int>& n_list, PhasePolicy policy,
                               std::uint64_t seed, const ExperimentOptions& options) {
    SweepResult result;
    result.kind = "ratio";
    result.policy = policy;
    result.seed = seed;
    for (std::size_t p = 0; p < n_list.size(); ++p) {
        const int n = n_list[p];
        check_even(n, "ratio sweep");
        const std::int64_t limit = m_max(n / 2);
        const int m = alpha_to_m(alpha, n);
        if (m < 0 || m > limit) {
            result.warnings.push_back("n " + std::to_string(n) + " skipped: m = " +
                                      std::to_string(m) + " outside [0, " + std::to_string(limit) +
                                      "]");
            continue;
        }
        result.rows.push_back(ensemble_point(n, n, m, policy, seed,
                                             p * static_cast<std::uint64_t>(options.instances),
                                             true, options, result.warnings));
    }
    return result;
}

std::string to_csv(const SweepResult& result) {
    const bool transition = result.kind == "transition";
    const bool ratio = result.kind == "ratio";
    const bool extreme = result.kind == "extreme";
    std::ostringstream out;
    out << (transition ? "alpha" : "n");
    if (extreme) out << ",kind";
    out << ",m,instances";
    if (ratio) out << ",mean_ratio,stderr_ratio";
    out << ",mean_cost,stderr_cost,mean_solutions,mean_p_soln,mean_steps,policy,seed\n";
    for (const SweepRow& row : result.rows) {
        if (transition) {
            out << fmt(row.parameter);
        } else {
            out << static_cast<long long>(row.parameter);
        }
        if (extreme) out << ',' << row.label;
        out << ',' << row.m << ',' << row.instances;
        if (ratio) out << ',' << fmt(row.mean_ratio) << ',' << fmt(row.stderr_ratio);
        out << ',' << fmt(row.mean_cost) << ',' << fmt(row.stderr_cost) << ','
            << fmt(row.mean_solutions) << ',' << fmt(row.mean_p_soln) << ',' << fmt(row.mean_steps)
            << ',' << to_string(result.policy) << ',' << result.seed << '\n';
    }
    return out.str();
}

std::string to_structured_text(const SweepResult& result) {
    std::ostringstream out;
    out << "# sweep: " << result.kind << '\n';
    out << "# policy: " << to_string(result.policy) << '\n';
    out << "# seed: " << result.seed << '\n';
    out << "# version: " << kVersion << '\n';
    for (const std::string& warning : result.warnings) out << "# warning: " << warning << '\n';

    const bool transition = result.kind == "transition";
    const bool ratio = result.kind == "ratio";
    const bool extreme = result.kind == "extreme";
    auto cell = [&out](const std::string& text) { out << std::setw(16) << std::left << text; };
    cell(transition ? "alpha" : "n");
    if (extreme) cell("kind");
    cell("m");
    cell("instances");
    if (ratio) {
        cell("mean_ratio");
        cell("stderr_ratio");
    }
    cell("mean_cost");
    cell("stderr_cost");
    cell("mean_solutions");
    cell("mean_p_soln");
    cell("mean_steps");
    out << '\n';
    for (const SweepRow& row : result.rows) {
        cell(transition ? fmt(row.parameter)
                        : std::to_string(static_cast<long long>(row.parameter)));
        if (extreme) cell(row.label);
        cell(std::to_string(row.m));
        cell(std::to_string(row.instances));
        if (ratio) {
            cell(fmt(row.mean_ratio));
            cell(fmt(row.stderr_ratio));
        }
        cell(fmt(row.mean_cost));
        cell(fmt(row.stderr_cost));
        cell(fmt(row.mean_solutions));
        cell(fmt(row.mean_p_soln));
        cell(fmt(row.mean_steps));
        out << '\n';
    }
    return out.str();
}

std::string metadata_text(const SweepResult& result, const std::string& command,
                          double wall_seconds) {
    std::ostringstream out;
    out << "sweep: " << result.kind << '\n';
    out << "policy: " << to_string(result.policy) << '\n';
    out << "seed: " << result.seed << '\n';
    out << "version: " << kVersion << '\n';
    out << "command: " << command << '\n';
    out << "wall_seconds: " << fmt(wall_seconds) << '\n';
    out << "rows: " << result.rows.size() << '\n';
    out << "warnings: " << result.warnings.size() << '\n';
    for (const std::string& warning : result.warnings) out << "warning: " << warning << '\n';
    return out.str();
}

}  // namespace latq
