#pragma once

#include <cstddef>
#include <vector>

namespace nullpulse {

// Uniform double-null grid on the slab [u0, u_end] x [0, delta] (x S^1 in dim 2).
// Optical coordinates: u = (t - r)/2, ub = (t + r)/2, so r = ub - u, t = u + ub.
// Frame fields: L = d/d_ub (outgoing), Lbar = d/d_u (ingoing), Omega = d/d_theta.
//
// dim 3 is restricted to spherical symmetry: n_theta == 1, all angular
// derivatives vanish, the cross-section measure is 4 pi r^2.
// dim 2 carries a full angular circle: theta_m = 2 pi m / n_theta, measure 2 pi r.
struct NullGrid {
    int dim = 3;
    double u0 = -4.0;
    double u_end = -1.0;
    double delta = 0.01;
    int n_u = 300;    // cells along u
    int n_ub = 64;    // cells across the pulse [0, delta]
    int n_theta = 1;  // angular samples (1 in dim 3)

    double h_u = 0.0;
    double h_ub = 0.0;

    // Spectral differentiation matrices on the theta circle, row-major
    // n_theta x n_theta; order 1..3. Empty in dim 3.
    std::vector<double> d1_theta;
    std::vector<double> d2_theta;
    std::vector<double> d3_theta;

    double u_at(int i) const { return u0 + h_u * i; }
    double ub_at(int j) const { return h_ub * j; }
    double theta_at(int m) const;
    double r_at(int i, int j) const { return ub_at(j) - u_at(i); }
    double t_at(int i, int j) const { return u_at(i) + ub_at(j); }

    std::size_t idx(int i, int j, int m = 0) const {
        return (static_cast<std::size_t>(i) * (n_ub + 1) + j) * n_theta + m;
    }
    std::size_t node_count() const {
        return static_cast<std::size_t>(n_u + 1) * (n_ub + 1) * n_theta;
    }

    // Angular quadrature weight per sample, radial factor excluded:
    // dim 3: 4 pi (single sample); dim 2: 2 pi / n_theta each.
    double angular_weight() const;
    // Total cross-section measure |S_{ub,u}| at radius r: 4 pi r^2 or 2 pi r.
    double sphere_measure(double r) const;
};

// Validates parameters and precomputes spacings and spectral matrices.
// Throws std::invalid_argument on: u0 >= u_end, u_end > -1, delta <= 0,
// cell counts < 2, dim not in {2,3}, n_theta != 1 in dim 3, or an odd/small
// n_theta in dim 2.
NullGrid build_grid(int dim, double u0, double u_end, double delta,
                    int n_u, int n_ub, int n_theta);

// Applies the order-n spectral theta derivative to one theta line (length
// n_theta) at a fixed (u, ub) node. No-op (zero fill) in dim 3.
void theta_derivative_line(const NullGrid& g, int order,
                           const double* line, double* out);

}  // namespace nullpulse
