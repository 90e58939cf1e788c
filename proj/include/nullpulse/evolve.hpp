#pragma once

#include <functional>
#include <stdexcept>

#include "nullpulse/field.hpp"
#include "nullpulse/grid.hpp"
#include "nullpulse/nonlinearity.hpp"
#include "nullpulse/pulse.hpp"

namespace nullpulse {

// Raised when |phi| exceeds the overflow guard (1e8) or turns non-finite;
// carries the first offending node.
struct BlowupError : std::runtime_error {
    double u, ub;
    BlowupError(double u_, double ub_, const std::string& what)
        : std::runtime_error(what), u(u_), ub(ub_) {}
};

// Raised when the center fixed-point correction fails to contract; carries
// the offending cell. Near a focusing concentration this fires before the
// overflow guard does.
struct StepFailure : std::runtime_error {
    double u, ub;
    StepFailure(double u_, double ub_, const std::string& what)
        : std::runtime_error(what), u(u_), ub(ub_) {}
};

// Right-hand side of the evolution form of the null-frame wave equation,
//   d_u d_ub phi = r^{-2} lap_theta phi + c r^{-1} (L phi - Lbar phi) - N(phi) + F,
// with c = 1 in dim 3 (spherical) and c = 1/2 in dim 2. Inputs are
// center-of-cell samples.
double null_frame_rhs(int dim, double r, double phi, double l_phi,
                      double lbar_phi, double lap_theta_phi,
                      const Nonlinearity& nonlin, double forcing);

// One null-parallelogram update for the cell with south/west/east corners
// given (vectors over theta, length n_theta):
//   psi_N = psi_W + psi_E - psi_S + h_u h_ub RHS(center),
// center values by corner averaging; the implicit dependence of the RHS on
// the north corner is resolved by one predictor plus one corrector pass.
// Tolerance: corrector change below 1e-12 absolute or 1e-10 relative;
// otherwise the change must at least halve, else StepFailure.
void step_diamond(const NullGrid& g, int i, int j,
                  const double* south, const double* west, const double* east,
                  const double* lap_s, const double* lap_w, const double* lap_e,
                  const Nonlinearity& nonlin, const ForcingFn& forcing,
                  double* north, double* lap_n_scratch);

// Characteristic data on C_{u0} as a function of (ub, theta).
using DataFn = std::function<double(double ub, double theta)>;

// Full causal sweep (u-major) from pulse data. Data on ub = 0 is identically
// zero. Frame derivatives are filled before returning. Throws BlowupError.
FieldState evolve(const NullGrid& grid, const PulseSpec& spec,
                  const Nonlinearity& nonlin, const ForcingFn& forcing = nullptr);

// Same sweep with arbitrary initial data (manufactured-solution runs).
// data(0, theta) must vanish to match the zero ingoing cone.
FieldState evolve_with_data(const NullGrid& grid, const DataFn& data,
                            const Nonlinearity& nonlin, const ForcingFn& forcing = nullptr);

// Max over interior nodes of the cross-difference |d_ub(Omega phi) - Omega(d_ub phi)|.
// The two discrete operators act along different grid axes, so this is a
// rounding-level residual, comfortably inside the O(h^2) commutation bound.
double commutator_residual(const FieldState& state);

}  // namespace nullpulse
