#include "latq/transform.hpp"

#include "latq/errors.hpp"

#include <bit>
#include <cmath>

namespace latq {

StateVector StateVector::all_in_empty_set(int n) {
    StateVector s;
    s.n = n;
    s.amp.assign(1ULL << n, 0.0);
    s.amp[0] = 1.0;
    return s;
}

double StateVector::norm_squared() const {
    double sum = 0.0, comp = 0.0;
    for (const double a : amp) {
        const double y = a * a - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

DiagonalSigns DiagonalSigns::standard(int n) {
    DiagonalSigns s;
    s.n = n;
    s.d.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) s.d[static_cast<std::size_t>(k)] = (2 * k <= n) ? 1 : -1;
    return s;
}

StateVector apply_w(StateVector state) {
    const std::size_t size = state.amp.size();
    if (size == 0 || (size & (size - 1)) != 0)
        throw InvalidState("apply_w: state length is not a power of two");

    double* x = state.amp.data();
    for (std::size_t h = 1; h < size; h <<= 1) {
        for (std::size_t block = 0; block < size; block += h << 1) {
            for (std::size_t i = block; i < block + h; ++i) {
                const double a = x[i];
                const double b = x[i + h];
                x[i] = a + b;
                x[i + h] = a - b;
            }
        }
    }
    // 1/sqrt(N) once, not per level, to minimize rounding.
    const int n = std::countr_zero(size);
    const double scale = (n % 2 == 0) ? std::ldexp(1.0, -n / 2)
                                      : std::ldexp(1.0, -(n + 1) / 2) * std::sqrt(2.0);
    for (std::size_t i = 0; i < size; ++i) x[i] *= scale;
    return state;
}

StateVector apply_d(StateVector state, const DiagonalSigns& signs) {
    for (std::size_t i = 0; i < state.amp.size(); ++i) {
        if (signs.d[static_cast<std::size_t>(std::popcount(i))] < 0) state.amp[i] = -state.amp[i];
    }
    return state;
}

StateVector apply_u(StateVector state) {
    const DiagonalSigns signs = DiagonalSigns::standard(state.n);
    return apply_w(apply_d(apply_w(std::move(state)), signs));
}

BigInt matrix_element_numerator(int n, int m) {
    BigInt sum = 0;
    for (int k = 0; k <= n; ++k) {
        const BigInt s = krawtchouk(n, k, m);
        if (2 * k <= n)
            sum += s;
        else
            sum -= s;
    }
    return sum;
}

double matrix_element(int n, int m) {
    // u_m = numerator / N = numerator / sqrt(2^(2n)).
    return divide_by_sqrt_pow2(matrix_element_numerator(n, m), 2 * n);
}

std::vector<double> matrix_elements(int n) {
    const KrawtchoukTable table(n);
    std::vector<double> u(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        BigInt sum = 0;
        for (int k = 0; k <= n; ++k) {
            if (2 * k <= n)
                sum += table.value(k, m);
            else
                sum -= table.value(k, m);
        }
        u[static_cast<std::size_t>(m)] = divide_by_sqrt_pow2(sum, 2 * n);
    }
    return u;
}

double divide_by_sqrt_pow2(const BigInt& v, int n) {
    if (v == 0) return 0.0;
    // Reduce to <= 64 significant bits before converting, so intermediate
    // values beyond the double range (huge Krawtchouk numerators) cannot
    // overflow when the scaled result itself is representable.
    BigInt a = v < 0 ? BigInt(-v) : v;
    const int bits = static_cast<int>(boost::multiprecision::msb(a)) + 1;
    const int shift = bits > 64 ? bits - 64 : 0;
    const double mant = BigInt(a >> shift).convert_to<double>();
    const double sign = v < 0 ? -1.0 : 1.0;
    if (n % 2 == 0) return sign * std::ldexp(mant, shift - n / 2);
    return sign * std::ldexp(mant, shift - (n + 1) / 2) * std::sqrt(2.0);
}

}  // namespace latq
