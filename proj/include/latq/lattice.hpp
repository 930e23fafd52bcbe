// Subset-lattice combinatorics: set encoding, exact binomials, and the
// alternating sums S_{km} that all matrix elements are built from.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <cstdint>
#include <vector>

namespace latq {

using BigInt = boost::multiprecision::cpp_int;

// A subset of the n assumptions. Assumptions are numbered 1..n externally;
// assumption i occupies bit i-1 of the mask.
struct AssumptionSet {
    std::uint64_t bits = 0;

    static AssumptionSet empty() { return {}; }
    static AssumptionSet full(int n) { return {n == 64 ? ~0ULL : (1ULL << n) - 1}; }
    static AssumptionSet single(int assumption) { return {1ULL << (assumption - 1)}; }

    int size() const { return std::popcount(bits); }
    bool contains(int assumption) const { return (bits >> (assumption - 1)) & 1ULL; }
    AssumptionSet with(int assumption) const { return {bits | (1ULL << (assumption - 1))}; }
    AssumptionSet without(int assumption) const { return {bits & ~(1ULL << (assumption - 1))}; }
    bool subset_of(AssumptionSet other) const { return (bits & other.bits) == bits; }
    AssumptionSet intersect(AssumptionSet other) const { return {bits & other.bits}; }

    friend bool operator==(AssumptionSet a, AssumptionSet b) { return a.bits == b.bits; }
    friend auto operator<=>(AssumptionSet a, AssumptionSet b) { return a.bits <=> b.bits; }
};

// Lattice ordering: sets sorted by the integer value of their mask, so the
// sets without item n come before the sets with it.
inline std::uint64_t set_index(AssumptionSet s) { return s.bits; }
inline AssumptionSet set_from_index(std::uint64_t index) { return {index}; }

inline int hamming_distance(AssumptionSet a, AssumptionSet b) {
    return std::popcount(a.bits ^ b.bits);
}

// binom(a, b), exact at any size; zero outside 0 <= b <= a so summation
// formulas need no boundary guards.
BigInt binomial(std::int64_t a, std::int64_t b);

// S_{km}^{(n)} = sum_l (-1)^l binom(m,l) binom(n-m,k-l), computed exactly.
// The alternating sum cancels catastrophically in floating point (terms near
// binom(n,n/2) against a small result), so this layer never rounds.
BigInt krawtchouk(int n, int k, int m);

// All S_{km}^{(n)} for one n, built once and shared read-only.
class KrawtchoukTable {
public:
    explicit KrawtchoukTable(int n);

    int n() const { return n_; }
    const BigInt& value(int k, int m) const { return values_[static_cast<std::size_t>(k) * (n_ + 1) + m]; }

private:
    int n_;
    std::vector<BigInt> values_;
};

}  // namespace latq
