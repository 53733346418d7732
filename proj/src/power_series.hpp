#pragma once

// Truncated power-series arithmetic in one variable. A series is the vector
// of its coefficients c_0 .. c_{n-1}; every operation truncates to the length
// of its first argument.

#include <cstddef>
#include <vector>

namespace hardy::series {

using Series = std::vector<double>;

inline Series multiply(const Series& a, const Series& b) {
    Series out(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// 1/a; requires a[0] != 0.
inline Series reciprocal(const Series& a) {
    Series out(a.size(), 0.0);
    out[0] = 1.0 / a[0];
    for (std::size_t n = 1; n < a.size(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) acc += a[k] * out[n - k];
        out[n] = -acc / a[0];
    }
    return out;
}

inline Series power(const Series& a, int exponent) {
    Series out(a.size(), 0.0);
    out[0] = 1.0;
    for (int i = 0; i < exponent; ++i) out = multiply(out, a);
    return out;
}

/// sin(t)/t to `terms` coefficients.
inline Series sinc(std::size_t terms) {
    Series out(terms, 0.0);
    double term = 1.0;
    for (std::size_t n = 0; 2 * n < terms; ++n) {
        out[2 * n] = term;
        term *= -1.0 / static_cast<double>((2 * n + 2) * (2 * n + 3));
    }
    return out;
}

/// Bernoulli numbers B_0..B_n (B_1 = -1/2), exact enough in double for n <= 40.
inline std::vector<double> bernoulli(std::size_t n) {
    std::vector<double> b(n + 1, 0.0);
    b[0] = 1.0;
    for (std::size_t m = 1; m <= n; ++m) {
        double binom = 1.0;  // C(m+1, k)
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            acc += binom * b[k];
            binom = binom * static_cast<double>(m + 1 - k) / static_cast<double>(k + 1);
        }
        b[m] = -acc / static_cast<double>(m + 1);
    }
    return b;
}

}  // namespace hardy::series
