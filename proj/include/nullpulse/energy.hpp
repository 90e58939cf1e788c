#pragma once

#include "nullpulse/field.hpp"

namespace nullpulse {

enum class Multiplier { L, Lbar };

// Null components of the scalar stress tensor:
//   T(L,L) = |L f|^2, T(Lbar,Lbar) = |Lbar f|^2, T(L,Lbar) = |snab f|^2.
struct StressNull {
    double tll = 0.0;
    double tlblb = 0.0;
    double tllb = 0.0;
};
StressNull stress_null_components(double l_phi, double lbar_phi, double snab_phi);

// Pointwise deformation current K^X paired with the multiplier:
//   dim 3: K^L = (1/2r) L phi Lbar phi, K^Lbar = -K^L
//   dim 2: K^L = (1/2r)(|snab phi|^2 + L phi Lbar phi), K^Lbar = -K^L
double deformation_current(int dim, Multiplier x, double r,
                           double l_phi, double lbar_phi, double snab_phi);

// Flux ledger of the multiplier identity on the sub-slab
// [u0, u_i] x [0, ub_j]:
//   flux_out + flux_in = initial_flux + bulk_K + bulk_source + residual
// with flux_out = int_{C_{u_i}} T(X, L), flux_in = int_{Cbar_{ub_j}} T(X, Lbar),
// initial_flux the C_{u0} term, and the bulk terms carrying the exact
// orientation and volume factors of the divergence identity (the source is
// box(phi) = N(phi) - F). All five integrals use trapezoid quadrature.
// States audited here vanish on the ingoing cone ub = 0, so that boundary
// contributes nothing. Residual contracts at first order (boundary stencils)
// to second order (interior) under grid refinement.
struct EnergyLedger {
    Multiplier x = Multiplier::L;
    double u = 0.0, ub = 0.0;
    double flux_out = 0.0;
    double flux_in = 0.0;
    double initial_flux = 0.0;
    double bulk_k = 0.0;
    double bulk_source = 0.0;
    double residual = 0.0;
    double scale = 0.0;  // largest absolute term
    double rel_residual = 0.0;
};

EnergyLedger energy_identity_audit(const FieldState& state, Multiplier x,
                                   int i, int j);

// Characteristic kinetic-energy surrogate on the initial cone,
//   kinetic = int_{C_{u0}} T(dt, L) = int (1/2)(|L phi|^2 + |snab phi|^2),
// with dt = (L + Lbar)/2, plus the potential-term integral for the
// configured nonlinearity. Kinetic is delta-invariant for fixed profile and
// scales with amplitude^2; potential/kinetic is o(1) as delta -> 0.
struct EnergyFlux {
    double kinetic = 0.0;
    double potential = 0.0;
};

EnergyFlux conserved_energy_flux(const FieldState& state);

}  // namespace nullpulse
