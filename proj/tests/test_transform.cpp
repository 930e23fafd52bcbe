#include "doctest.h"

#include "latq/errors.hpp"
#include "latq/rng.hpp"
#include "latq/transform.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

using namespace latq;

namespace {

StateVector random_state(int n, std::uint64_t seed) {
    StateVector state;
    state.n = n;
    state.amp.resize(std::size_t{1} << n);
    SplitMix64 rng(seed);
    for (double& a : state.amp) a = static_cast<double>(rng.below(2001)) / 1000.0 - 1.0;
    double norm = std::sqrt(state.norm_squared());
    if (norm == 0.0) norm = 1.0;
    for (double& a : state.amp) a /= norm;
    return state;
}

// Dense parity transform, the O(N^2) definition the butterfly must match.
StateVector dense_w(const StateVector& state) {
    const std::size_t size = state.amp.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(size));
    StateVector out;
    out.n = state.n;
    out.amp.assign(size, 0.0);
    for (std::uint64_t r = 0; r < size; ++r) {
        double sum = 0.0;
        for (std::uint64_t s = 0; s < size; ++s) {
            const double sign = (std::popcount(r & s) & 1) ? -1.0 : 1.0;
            sum += sign * state.amp[s];
        }
        out.amp[r] = scale * sum;
    }
    return out;
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.amp.size(); ++i)
        worst = std::max(worst, std::abs(a.amp[i] - b.amp[i]));
    return worst;
}

double time_apply_w(int n, int reps) {
    StateVector state = random_state(n, 5);
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) state = apply_w(std::move(state));
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count() / reps;
}

}  // namespace

TEST_SUITE("transform") {

TEST_CASE("apply_w smallest cases") {
    StateVector one = StateVector::all_in_empty_set(1);
    one = apply_w(std::move(one));
    CHECK(one.amp[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(one.amp[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    StateVector two = StateVector::all_in_empty_set(2);
    two = apply_w(std::move(two));
    for (double a : two.amp) CHECK(a == doctest::Approx(0.5).epsilon(1e-14));

    // Mass on {1,2}: signs follow the parity of |r & {1,2}|.
    StateVector top;
    top.n = 2;
    top.amp = {0.0, 0.0, 0.0, 1.0};
    top = apply_w(std::move(top));
    CHECK(top.amp[0] == doctest::Approx(0.5));
    CHECK(top.amp[1] == doctest::Approx(-0.5));
    CHECK(top.amp[2] == doctest::Approx(-0.5));
    CHECK(top.amp[3] == doctest::Approx(0.5));
}

TEST_CASE("apply_w is an involution") {
    for (int n = 1; n <= 10; ++n) {
        const StateVector original = random_state(n, 100 + n);
        StateVector twice = apply_w(apply_w(original));
        CHECK(max_abs_diff(twice, original) < 1e-12);
    }
}

TEST_CASE("apply_w matches the dense parity matrix") {
    for (int n = 1; n <= 8; ++n) {
        const StateVector state = random_state(n, 200 + n);
        CHECK(max_abs_diff(apply_w(state), dense_w(state)) < 1e-12);
    }
}

TEST_CASE("apply_w preserves the norm") {
    const StateVector state = random_state(12, 3);
    CHECK(std::abs(apply_w(state).norm_squared() - 1.0) < 1e-12);
}

TEST_CASE("apply_w rejects non-power-of-two lengths") {
    StateVector bad;
    bad.n = 2;
    bad.amp = {1.0, 0.0, 0.0};
    CHECK_THROWS_AS(apply_w(std::move(bad)), InvalidState);
}

TEST_CASE("diagonal signs split at half the assumptions") {
    const DiagonalSigns even = DiagonalSigns::standard(4);
    CHECK(even.sign(0) == 1.0);
    CHECK(even.sign(1) == 1.0);
    CHECK(even.sign(2) == 1.0);  // 2k = n keeps +1
    CHECK(even.sign(3) == -1.0);
    CHECK(even.sign(4) == -1.0);

    const DiagonalSigns odd = DiagonalSigns::standard(3);
    CHECK(odd.sign(0) == 1.0);
    CHECK(odd.sign(1) == 1.0);
    CHECK(odd.sign(2) == -1.0);
    CHECK(odd.sign(3) == -1.0);
}

TEST_CASE("apply_d flips exactly the oversized sets") {
    const int n = 5;
    const DiagonalSigns signs = DiagonalSigns::standard(n);
    const StateVector state = random_state(n, 17);
    const StateVector flipped = apply_d(state, signs);
    for (std::uint64_t i = 0; i < state.amp.size(); ++i) {
        const double expect = (2 * std::popcount(i) <= n) ? state.amp[i] : -state.amp[i];
        CHECK(flipped.amp[i] == expect);
    }
    CHECK(max_abs_diff(apply_d(flipped, signs), state) == 0.0);
}

TEST_CASE("apply_u matches the dense matrix built from matrix_element") {
    for (int n = 2; n <= 8; n += 2) {
        const std::vector<double> u = matrix_elements(n);
        const std::uint64_t size = std::uint64_t{1} << n;
        for (int trial = 0; trial < 5; ++trial) {
            const StateVector state = random_state(n, 400 + 16 * n + trial);
            StateVector expect;
            expect.n = n;
            expect.amp.assign(size, 0.0);
            for (std::uint64_t r = 0; r < size; ++r) {
                double sum = 0.0;
                for (std::uint64_t s = 0; s < size; ++s)
                    sum += u[static_cast<std::size_t>(std::popcount(r ^ s))] * state.amp[s];
                expect.amp[r] = sum;
            }
            CHECK(max_abs_diff(apply_u(state), expect) < 1e-12);
        }
    }
}

TEST_CASE("apply_u is an involution and preserves the norm") {
    for (int n : {3, 6, 9}) {
        const StateVector state = random_state(n, 700 + n);
        const StateVector once = apply_u(state);
        CHECK(std::abs(once.norm_squared() - 1.0) < 1e-10);
        CHECK(max_abs_diff(apply_u(once), state) < 1e-10);
    }
}

TEST_CASE("matrix element closed form at distance one") {
    // u_1 = 2 binom(n-1, floor(n/2)) / N exactly.
    CHECK(matrix_element(4, 1) == doctest::Approx(0.375).epsilon(1e-15));
    for (int n = 1; n <= 64; ++n)
        CHECK(matrix_element_numerator(n, 1) == 2 * binomial(n - 1, n / 2));
}

TEST_CASE("matrix element asymptotic at distance one") {
    // u_1 ~ sqrt(2 / (pi n)); at n = 200 the product with sqrt(pi n / 2)
    // equals 0.9987507861 (frozen from an independent bignum evaluation).
    const double pi = 3.14159265358979323846;
    const double scaled = matrix_element(200, 1) * std::sqrt(pi * 200.0 / 2.0);
    CHECK(scaled == doctest::Approx(0.9987507861).epsilon(1e-8));
    CHECK(std::abs(scaled - 1.0) < 0.05);
}

TEST_CASE("divide_by_sqrt_pow2 handles huge numerators") {
    CHECK(divide_by_sqrt_pow2(BigInt{3}, 2) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(divide_by_sqrt_pow2(BigInt{1}, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(divide_by_sqrt_pow2(BigInt{0}, 7) == 0.0);
    CHECK(divide_by_sqrt_pow2(-(BigInt{1} << 100), 200) == doctest::Approx(-1.0));
    // 2^400 / 2^(400/2) = 2^200, far outside int64 but exact in double range.
    CHECK(divide_by_sqrt_pow2(BigInt{1} << 400, 400) ==
          doctest::Approx(std::ldexp(1.0, 200)).epsilon(1e-15));
}

TEST_CASE("apply_w wall clock grows near-linearly in the state size") {
    // Doubling the state should roughly double the time (n 2^n butterfly);
    // allow a factor-4 envelope for timing noise on a busy host.
    time_apply_w(17, 3);  // warm up caches and the allocator
    const double small = time_apply_w(17, 7);
    const double big = time_apply_w(18, 7);
    CHECK(big < 4.0 * 2.0 * small);
    CHECK(big > 0.0);
}

}  // TEST_SUITE
