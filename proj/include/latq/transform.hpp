// The problem-independent mixing operator U = W D W over the full lattice.
// W is the parity transform W_{rs} = (-1)^{|r&s|}/sqrt(N), applied in
// O(n 2^n) by a butterfly recursion; D flips the sign of sets larger than
// half the assumptions.
#pragma once

#include "latq/lattice.hpp"

#include <vector>

namespace latq {

// Default cap for full-lattice simulation (2^24 doubles = 128 MiB of state).
inline constexpr int kDefaultFullSimMaxN = 24;

// 2^n real amplitudes, amp[i] = psi_s for set_index(s) = i. Every operator in
// the algorithm is real, so no complex storage is needed.
struct StateVector {
    int n = 0;
    std::vector<double> amp;

    static StateVector all_in_empty_set(int n);

    double norm_squared() const;  // compensated sum
};

// Signs d_k applied to all sets of size k: +1 for k <= n/2, -1 above
// (d_{n/2} = +1 when n is even).
struct DiagonalSigns {
    int n = 0;
    std::vector<std::int8_t> d;

    static DiagonalSigns standard(int n);
    double sign(int k) const { return d[static_cast<std::size_t>(k)]; }
};

// W * state via the butterfly recursion, normalization applied as one scalar
// pass at the end. Throws InvalidState if the length is not a power of two.
StateVector apply_w(StateVector state);

StateVector apply_d(StateVector state, const DiagonalSigns& signs);

// U = W D W with the standard signs.
StateVector apply_u(StateVector state);

// u_m = (1/N) sum_k d_k S_{km}; U_{rs} = u_m at Hamming distance m.
double matrix_element(int n, int m);

// Exact numerator N * u_m, for rational-arithmetic identities.
BigInt matrix_element_numerator(int n, int m);

// All u_0..u_n from one Krawtchouk table.
std::vector<double> matrix_elements(int n);

// v / 2^(n/2): exact ldexp when n is even, one multiply by 1/sqrt(2) when odd.
double divide_by_sqrt_pow2(const BigInt& v, int n);

}  // namespace latq
