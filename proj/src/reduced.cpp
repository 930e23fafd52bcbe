#include "latq/reduced.hpp"

#include "latq/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace latq {
namespace {

constexpr double kNormGuard = 1e-6;  // see engine.cpp

void kahan_add(double& sum, double& carry, double term) {
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
}

void check_shape(int n, int L, int steps) {
    if (n < 1) throw InvalidState("reduced simulator: n must be at least 1");
    if (L < 0 || L > n) throw InvalidState("reduced simulator: L must be in [0, n]");
    if (steps < 0) throw InvalidState("reduced simulator: negative step count");
}

// binom(n,h) for h = 0..n as doubles; the class degeneracies.
std::vector<double> degeneracies(int n) {
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int h = 0; h <= n; ++h) w[h] = divide_by_sqrt_pow2(binomial(n, h), 0);
    return w;
}

// One application of W to the max-problem rectangle: psi <- ML psi MR^T.
void apply_w_factored(ReducedStateMax& state, const Matrix& w_sol, const Matrix& w_rest,
                      std::vector<double>& scratch) {
    const int lw = state.L + 1;
    const int rw = state.n - state.L + 1;
    scratch.assign(static_cast<std::size_t>(lw) * rw, 0.0);
    for (int a = 0; a < lw; ++a) {
        for (int l = 0; l < lw; ++l) {
            const double m = w_sol.at(a, l);
            if (m == 0.0) continue;
            for (int b = 0; b < rw; ++b) scratch[a * rw + b] += m * state.at(l, b);
        }
    }
    for (int a = 0; a < lw; ++a) {
        for (int c = 0; c < rw; ++c) {
            double sum = 0.0;
            for (int b = 0; b < rw; ++b) sum += scratch[a * rw + b] * w_rest.at(c, b);
            state.at(a, c) = sum;
        }
    }
}

}  // namespace

const char* to_string(ExtremeKind kind) {
    return kind == ExtremeKind::MinNogood ? "min" : "max";
}

ExtremeKind extreme_kind_from_string(const std::string& name) {
    if (name == "min") return ExtremeKind::MinNogood;
    if (name == "max") return ExtremeKind::MaxNogood;
    throw MalformedProblem("unknown extreme kind '" + name + "' (expected 'min' or 'max')");
}

ReducedStateMin ReducedStateMin::all_in_empty_set(int n, int L) {
    ReducedStateMin state;
    state.n = n;
    state.L = L;
    state.psi.assign(static_cast<std::size_t>(n) + 1, 0.0);
    state.psi[0] = 1.0;
    return state;
}

double ReducedStateMin::norm_squared() const {
    double sum = 0.0, carry = 0.0;
    for (int h = 0; h <= n; ++h) {
        kahan_add(sum, carry, divide_by_sqrt_pow2(binomial(n, h), 0) * psi[h] * psi[h]);
    }
    return sum;
}

double ReducedStateMin::p_soln() const {
    return divide_by_sqrt_pow2(binomial(n, L), 0) * psi[L] * psi[L];
}

ReducedStateMax ReducedStateMax::all_in_empty_set(int n, int L) {
    ReducedStateMax state;
    state.n = n;
    state.L = L;
    state.psi.assign(static_cast<std::size_t>(L + 1) * (n - L + 1), 0.0);
    state.psi[0] = 1.0;
    return state;
}

double ReducedStateMax::norm_squared() const {
    const std::vector<double> wl = degeneracies(L);
    const std::vector<double> wr = degeneracies(n - L);
    double sum = 0.0, carry = 0.0;
    for (int l = 0; l <= L; ++l) {
        for (int b = 0; b <= n - L; ++b) {
            const double a = at(l, b);
            kahan_add(sum, carry, wl[l] * wr[b] * a * a);
        }
    }
    return sum;
}

double ReducedStateMax::p_soln() const {
    const double a = at(L, 0);
    return a * a;
}

Matrix wmin_matrix(int n) {
    if (n < 0) throw InvalidState("wmin matrix: n must be nonnegative");
    const KrawtchoukTable table(n);
    Matrix w(n + 1, n + 1);
    for (int h = 0; h <= n; ++h) {
        for (int k = 0; k <= n; ++k) w.at(h, k) = divide_by_sqrt_pow2(table.value(k, h), n);
    }
    return w;
}

Matrix vmin_matrix(int n) {
    if (n < 0) throw InvalidState("vmin matrix: n must be nonnegative");
    const KrawtchoukTable table(n);
    Matrix v(n + 1, n + 1);
    for (int h = 0; h <= n; ++h) {
        for (int k = 0; k <= n; ++k) {
            BigInt sum = 0;
            for (int j = 0; j <= n; ++j) {
                const BigInt term = table.value(j, h) * table.value(k, j);
                if (2 * j <= n)
                    sum += term;
                else
                    sum -= term;
            }
            v.at(h, k) = divide_by_sqrt_pow2(sum, 2 * n);  // exact numerator / N
        }
    }
    return v;
}

int max_class_count(int n, int L) { return (L + 1) * (n - L + 1); }

int max_class_index(int n, int L, int size, int overlap) {
    const int rest = size - overlap;
    if (overlap < 0 || overlap > L || rest < 0 || rest > n - L) return -1;
    return overlap * (n - L + 1) + rest;
}

Matrix wmax_matrix(int n, int L) {
    if (L < 0 || L > n) throw InvalidState("wmax matrix: L must be in [0, n]");
    const Matrix w_sol = wmin_matrix(L);
    const Matrix w_rest = wmin_matrix(n - L);
    const int rw = n - L + 1;
    Matrix w(max_class_count(n, L), max_class_count(n, L));
    for (int lr = 0; lr <= L; ++lr) {
        for (int br = 0; br < rw; ++br) {
            for (int lc = 0; lc <= L; ++lc) {
                for (int bc = 0; bc < rw; ++bc) {
                    w.at(lr * rw + br, lc * rw + bc) = w_sol.at(lr, lc) * w_rest.at(br, bc);
                }
            }
        }
    }
    return w;
}

void reduced_step_min(ReducedStateMin& state, const Matrix& vmin, PhasePolicy policy, int step) {
    const int n = state.n;
    if (vmin.rows != n + 1 || vmin.cols != n + 1) {
        throw InvalidState("reduced step: vmin matrix does not match n");
    }
    const int threshold = phase_size_threshold(policy, step, state.L);
    for (int k = 0; k <= n; ++k) {
        if (k > state.L || k < threshold) state.psi[k] = -state.psi[k];
    }
    std::vector<double> next(static_cast<std::size_t>(n) + 1, 0.0);
    for (int h = 0; h <= n; ++h) {
        double sum = 0.0;
        for (int k = 0; k <= n; ++k) sum += vmin.at(h, k) * state.psi[k];
        next[h] = sum;
    }
    state.psi = std::move(next);
}

void reduced_step_max(ReducedStateMax& state, const Matrix& w_sol, const Matrix& w_rest,
                      PhasePolicy policy, int step) {
    const int n = state.n;
    const int L = state.L;
    if (w_sol.rows != L + 1 || w_rest.rows != n - L + 1) {
        throw InvalidState("reduced step: factor matrices do not match (n, L)");
    }
    const int threshold = phase_size_threshold(policy, step, L);
    for (int l = 0; l <= L; ++l) {
        for (int b = 0; b <= n - L; ++b) {
            // Nogood exactly when the set leaves the solution (b > 0).
            if (b > 0 || l + b < threshold) state.at(l, b) = -state.at(l, b);
        }
    }
    std::vector<double> scratch;
    apply_w_factored(state, w_sol, w_rest, scratch);
    for (int l = 0; l <= L; ++l) {
        for (int b = 0; b <= n - L; ++b) {
            if (2 * (l + b) > n) state.at(l, b) = -state.at(l, b);
        }
    }
    apply_w_factored(state, w_sol, w_rest, scratch);
}

RunRecord run_min(int n, int L, int steps, PhasePolicy policy) {
    check_shape(n, L, steps);
    RunRecord record;
    record.n = n;
    record.L = L;
    record.policy = policy;
    record.steps = steps;
    record.trace.reserve(steps);

    const Matrix vmin = vmin_matrix(n);
    const std::vector<double> weight = degeneracies(n);
    ReducedStateMin state = ReducedStateMin::all_in_empty_set(n, L);
    record.p_soln = state.p_soln();

    for (int j = 1; j <= steps; ++j) {
        reduced_step_min(state, vmin, policy, j);

        StepRecord step;
        step.step = j;
        step.p_soln = weight[L] * state.psi[L] * state.psi[L];
        double norm = 0.0, carry = 0.0;
        for (int h = 0; h <= n; ++h) kahan_add(norm, carry, weight[h] * state.psi[h] * state.psi[h]);
        step.norm_drift = std::abs(norm - 1.0);
        if (step.norm_drift > kNormGuard) {
            throw InvalidState("reduced min simulator: norm drifted by " +
                               std::to_string(step.norm_drift) + " at step " + std::to_string(j));
        }
        // Goods are all sets of size <= L.
        step.level_profile.assign(static_cast<std::size_t>(n) + 1, 0.0);
        for (int k = 0; k <= L; ++k) step.level_profile[k] = weight[k] * state.psi[k] * state.psi[k];
        record.max_norm_drift = std::max(record.max_norm_drift, step.norm_drift);
        record.p_soln = step.p_soln;
        record.trace.push_back(std::move(step));
    }

    select_best_steps(record);
    return record;
}

RunRecord run_max(int n, int L, int steps, PhasePolicy policy) {
    check_shape(n, L, steps);
    RunRecord record;
    record.n = n;
    record.L = L;
    record.policy = policy;
    record.steps = steps;
    record.trace.reserve(steps);

    const Matrix w_sol = wmin_matrix(L);
    const Matrix w_rest = wmin_matrix(n - L);
    const std::vector<double> wl = degeneracies(L);
    const std::vector<double> wr = degeneracies(n - L);
    ReducedStateMax state = ReducedStateMax::all_in_empty_set(n, L);
    record.p_soln = state.p_soln();

    for (int j = 1; j <= steps; ++j) {
        reduced_step_max(state, w_sol, w_rest, policy, j);

        StepRecord step;
        step.step = j;
        step.p_soln = state.p_soln();
        double norm = 0.0, carry = 0.0;
        for (int l = 0; l <= L; ++l) {
            for (int b = 0; b <= n - L; ++b) {
                const double a = state.at(l, b);
                kahan_add(norm, carry, wl[l] * wr[b] * a * a);
            }
        }
        step.norm_drift = std::abs(norm - 1.0);
        if (step.norm_drift > kNormGuard) {
            throw InvalidState("reduced max simulator: norm drifted by " +
                               std::to_string(step.norm_drift) + " at step " + std::to_string(j));
        }
        // Goods are the subsets of the solution: classes (k, 0) of size k.
        step.level_profile.assign(static_cast<std::size_t>(n) + 1, 0.0);
        for (int k = 0; k <= L; ++k) {
            const double a = state.at(k, 0);
            step.level_profile[k] = wl[k] * a * a;
        }
        record.max_norm_drift = std::max(record.max_norm_drift, step.norm_drift);
        record.p_soln = step.p_soln;
        record.trace.push_back(std::move(step));
    }

    select_best_steps(record);
    return record;
}

RunRecord run_extreme(ExtremeKind kind, int n, int L, int steps, PhasePolicy policy) {
    return kind == ExtremeKind::MinNogood ? run_min(n, L, steps, policy)
                                          : run_max(n, L, steps, policy);
}

}  // namespace latq
