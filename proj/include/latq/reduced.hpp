// Symmetry-reduced simulators for the two extreme problems. With every
// nogood determined by set size (minimum-nogood problem) or by size and
// overlap with the single solution (maximum-nogood problem), the state
// collapses to O(n) or O(n*L) classes and runs at n ~ 100 take seconds.
#pragma once

#include "latq/engine.hpp"

#include <string>
#include <vector>

namespace latq {

enum class ExtremeKind {
    MinNogood,  // goods are all sets of size <= L
    MaxNogood,  // goods are exactly the subsets of one size-L solution
};

const char* to_string(ExtremeKind kind);
ExtremeKind extreme_kind_from_string(const std::string& name);

// Dense row-major matrix; class spaces are small, so no sparsity is needed.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

// One amplitude per set size; psi[h] is the amplitude of every size-h set.
struct ReducedStateMin {
    int n = 0;
    int L = 0;
    std::vector<double> psi;  // n+1 entries

    static ReducedStateMin all_in_empty_set(int n, int L);

    double norm_squared() const;  // sum_h binom(n,h) psi[h]^2
    double p_soln() const;        // binom(n,L) psi[L]^2
};

// One amplitude per (overlap with the solution, count outside it). A set of
// size k with overlap l sits at (l, k-l); the paper's (k,l) indexing is
// exposed through at_size_overlap.
struct ReducedStateMax {
    int n = 0;
    int L = 0;
    std::vector<double> psi;  // (L+1) x (n-L+1), row-major by overlap

    static ReducedStateMax all_in_empty_set(int n, int L);

    double& at(int overlap, int rest) {
        return psi[static_cast<std::size_t>(overlap) * (n - L + 1) + rest];
    }
    double at(int overlap, int rest) const {
        return psi[static_cast<std::size_t>(overlap) * (n - L + 1) + rest];
    }
    double at_size_overlap(int size, int overlap) const { return at(overlap, size - overlap); }

    double norm_squared() const;  // sum binom(L,l) binom(n-L,b) psi[l,b]^2
    double p_soln() const;        // psi[L,0]^2, the single solution
};

// W restricted to the size classes: W_min[h][k] = S_kh / sqrt(N). Row h = 0
// is binom(n,k)/sqrt(N).
Matrix wmin_matrix(int n);

// Full step operator U = W D W on the size classes. Entries are assembled
// from exact Krawtchouk integers (N * V[h][k] = sum_j d_j S_jh S_kj) and
// rounded once; forming the product in doubles cancels catastrophically.
Matrix vmin_matrix(int n);

// Class space of the maximum-nogood problem: all (size k, overlap l) with
// max(0, k-(n-L)) <= l <= min(k, L), flattened as overlap * (n-L+1) + rest.
int max_class_count(int n, int L);
int max_class_index(int n, int L, int size, int overlap);  // -1 when invalid

// W on the (size, overlap) classes. W factorizes over the solution and
// non-solution coordinates as a product of two wmin-style blocks; the dense
// matrix is assembled entrywise from that product (tests compare it against
// the direct parity sum).
Matrix wmax_matrix(int n, int L);

// One evolution step j (1-based): phase flip, then U. The matrices are the
// precomputed vmin_matrix(n), respectively wmin_matrix(L) and
// wmin_matrix(n-L); factored application keeps the max step at O(n^3).
void reduced_step_min(ReducedStateMin& state, const Matrix& vmin, PhasePolicy policy, int step);
void reduced_step_max(ReducedStateMax& state, const Matrix& w_sol, const Matrix& w_rest,
                      PhasePolicy policy, int step);

// Reduced analogues of run_trial; records carry the same per-step data
// (level profiles restricted to goods are always recorded).
RunRecord run_min(int n, int L, int steps, PhasePolicy policy);
RunRecord run_max(int n, int L, int steps, PhasePolicy policy);
RunRecord run_extreme(ExtremeKind kind, int n, int L, int steps, PhasePolicy policy);

}  // namespace latq
