#include "latq/lattice.hpp"

#include <stdexcept>

namespace latq {

BigInt binomial(std::int64_t a, std::int64_t b) {
    if (a < 0) throw std::invalid_argument("binomial: a must be nonnegative");
    if (b < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    BigInt result = 1;
    // Each prefix product of b consecutive integers is divisible by i!.
    for (std::int64_t i = 1; i <= b; ++i) {
        result *= a - b + i;
        result /= i;
    }
    return result;
}

BigInt krawtchouk(int n, int k, int m) {
    BigInt sum = 0;
    for (int l = 0; l <= k; ++l) {
        const BigInt term = binomial(m, l) * binomial(n - m, k - l);
        if (l & 1)
            sum -= term;
        else
            sum += term;
    }
    return sum;
}

KrawtchoukTable::KrawtchoukTable(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("KrawtchoukTable: n must be nonnegative");
    const std::size_t dim = static_cast<std::size_t>(n) + 1;
    // Pascal rows up to n, shared by all (k, m) sums.
    std::vector<std::vector<BigInt>> binom(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        binom[a].resize(a + 1);
        binom[a][0] = 1;
        binom[a][a] = 1;
        for (std::size_t b = 1; b < a; ++b) binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b];
    }
    auto c = [&](int a, int b) -> BigInt {
        if (b < 0 || b > a) return 0;
        return binom[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    };
    values_.resize(dim * dim);
    for (int k = 0; k <= n; ++k) {
        for (int m = 0; m <= n; ++m) {
            BigInt sum = 0;
            for (int l = 0; l <= k; ++l) {
                const BigInt term = c(m, l) * c(n - m, k - l);
                if (l & 1)
                    sum -= term;
                else
                    sum += term;
            }
            values_[static_cast<std::size_t>(k) * dim + m] = std::move(sum);
        }
    }
}

}  // namespace latq
