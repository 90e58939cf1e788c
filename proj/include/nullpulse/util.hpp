#pragma once

#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

namespace nullpulse {

// Fixed-order pairwise summation. Deterministic for a given input order and
// better conditioned than naive accumulation on long reductions.
inline double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& x) {
    return pairwise_sum(x.data(), x.size());
}

// Shortest round-trip formatting for doubles; all serialized output goes
// through this so repeated runs are byte-identical.
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Least-squares line through (x_i, y_i).
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit f;
    const double den = n * sxx - sx * sx;
    if (den != 0.0) {
        f.slope = (n * sxy - sx * sy) / den;
        f.intercept = (sy - f.slope * sx) / n;
    }
    return f;
}

}  // namespace nullpulse
