#include "nullpulse/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nullpulse {

namespace {

constexpr double kPi = std::numbers::pi;

// Trigonometric differentiation matrix of the given order for N equispaced
// samples on [0, 2pi). Built from the DFT multipliers (i m)^order with the
// usual even-N Nyquist convention: the m = N/2 mode is dropped for odd
// orders and kept (real multiplier (-1)^{order/2} (N/2)^order) for even ones.
std::vector<double> spectral_matrix(int n, int order) {
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    const int mmax = n / 2;
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            const double dth = 2.0 * kPi * (row - col) / n;
            double acc = 0.0;
            for (int m = 1; m <= mmax; ++m) {
                const bool nyquist = (2 * m == n);
                double w;
                switch (order) {
                    case 1: w = nyquist ? 0.0 : -2.0 * m * std::sin(m * dth); break;
                    case 2:
                        w = -2.0 * m * static_cast<double>(m) * std::cos(m * dth);
                        if (nyquist) w *= 0.5;
                        break;
                    default:  // order 3
                        w = nyquist ? 0.0 : 2.0 * m * m * static_cast<double>(m) * std::sin(m * dth);
                        break;
                }
                acc += w;
            }
            d[static_cast<std::size_t>(row) * n + col] = acc / n;
        }
    }
    return d;
}

}  // namespace

double NullGrid::theta_at(int m) const {
    return dim == 2 ? 2.0 * kPi * m / n_theta : 0.0;
}

double NullGrid::angular_weight() const {
    return dim == 3 ? 4.0 * kPi : 2.0 * kPi / n_theta;
}

double NullGrid::sphere_measure(double r) const {
    return dim == 3 ? 4.0 * kPi * r * r : 2.0 * kPi * r;
}

NullGrid build_grid(int dim, double u0, double u_end, double delta,
                    int n_u, int n_ub, int n_theta) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
    if (!(u0 < u_end)) throw std::invalid_argument("require u0 < u_end");
    if (!(u_end <= -1.0)) throw std::invalid_argument("require u_end <= -1 (keeps r >= 1 on the slab)");
    if (!(delta > 0.0)) throw std::invalid_argument("require delta > 0");
    if (n_u < 2 || n_ub < 2) throw std::invalid_argument("cell counts must be >= 2");
    if (dim == 3 && n_theta != 1)
        throw std::invalid_argument("dim 3 is spherically symmetric: n_theta must be 1");
    if (dim == 2 && (n_theta < 4 || n_theta % 2 != 0))
        throw std::invalid_argument("dim 2 needs an even n_theta >= 4");

    NullGrid g;
    g.dim = dim;
    g.u0 = u0;
    g.u_end = u_end;
    g.delta = delta;
    g.n_u = n_u;
    g.n_ub = n_ub;
    g.n_theta = n_theta;
    g.h_u = (u_end - u0) / n_u;
    g.h_ub = delta / n_ub;
    if (dim == 2) {
        g.d1_theta = spectral_matrix(n_theta, 1);
        g.d2_theta = spectral_matrix(n_theta, 2);
        g.d3_theta = spectral_matrix(n_theta, 3);
    }
    return g;
}

void theta_derivative_line(const NullGrid& g, int order,
                           const double* line, double* out) {
    const int n = g.n_theta;
    if (g.dim == 3) {
        for (int m = 0; m < n; ++m) out[m] = 0.0;
        return;
    }
    const std::vector<double>& d =
        order == 1 ? g.d1_theta : (order == 2 ? g.d2_theta : g.d3_theta);
    for (int row = 0; row < n; ++row) {
        double acc = 0.0;
        const double* drow = d.data() + static_cast<std::size_t>(row) * n;
        for (int col = 0; col < n; ++col) acc += drow[col] * line[col];
        out[row] = acc;
    }
}

}  // namespace nullpulse
