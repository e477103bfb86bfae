#pragma once

#include <vector>

namespace ccrweyl::detail {

/// L_n^{(alpha)}(x) by the three-term recurrence.
inline double laguerre(int n, double alpha, double x) {
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// L_0^{(alpha)}(x) .. L_{count-1}^{(alpha)}(x).
inline void laguerre_sequence(int count, double alpha, double x, double* out) {
    if (count <= 0) return;
    out[0] = 1.0;
    if (count == 1) return;
    out[1] = 1.0 + alpha - x;
    for (int k = 1; k + 1 < count; ++k)
        out[k + 1] = ((2.0 * k + 1.0 + alpha - x) * out[k] - (k + alpha) * out[k - 1]) / (k + 1.0);
}

}  // namespace ccrweyl::detail
