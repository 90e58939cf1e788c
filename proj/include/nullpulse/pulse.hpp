#pragma once

#include <string>
#include <vector>

#include "nullpulse/grid.hpp"

namespace nullpulse {

// Pulse profile psi0: smooth, compactly supported inside (0, 1), with
// closed-form derivatives. onset marks the lower end of the support.
struct PulseProfile {
    std::string name;
    double onset = 0.0;
    double (*v)(double) = nullptr;
    double (*d1)(double) = nullptr;
    double (*d2)(double) = nullptr;
};

// Registry: "sin4" (default, sin^4(pi s)), "bump" (exp(-1/(s(1-s)))),
// "sin4_half" (sin^4 profile squeezed into (1/2, 1), for late-onset tests).
// Throws std::invalid_argument for unknown names.
const PulseProfile& profile_by_name(const std::string& name);

// Characteristic data on the initial outgoing cone:
//   phi(u0, ub, theta) = a sqrt(delta) psi0(ub/delta) cos(m theta),
// identically zero outside 0 < ub/delta < 1. m is meaningful in dim 2 only.
struct PulseSpec {
    std::string profile = "sin4";
    double amplitude = 1.0;
    double delta = 0.01;
    int angular_mode = 0;

    void validate() const;  // throws on delta <= 0 or negative mode
};

double short_pulse_value(const PulseSpec& spec, double ub, double theta);
// Analytic frame derivatives of the data, same support convention.
double short_pulse_l(const PulseSpec& spec, double ub, double theta);    // d/d_ub
double short_pulse_l2(const PulseSpec& spec, double ub, double theta);   // (d/d_ub)^2
double short_pulse_omega(const PulseSpec& spec, double ub, double theta, int order);

// Data for the ingoing cone ub = 0: identically zero.
inline double ingoing_data(double /*u*/, double /*theta*/) { return 0.0; }

// One measured data-side norm with its expected delta-power.
struct DataBoundRow {
    std::string quantity;   // e.g. "sup_Lphi", "l2_L2phi"
    double exponent = 0.0;  // p in  value <~ C delta^p
    bool equality = false;  // closed-form rows where the slope is sharp
    bool structural_zero = false;
    double value = 0.0;
};

struct DataBoundsReport {
    std::vector<DataBoundRow> rows;
    const DataBoundRow* find(const std::string& quantity) const;
};

class FieldState;

// Sup and L2(C_{u0}) norms of the data derivatives, from the closed-form
// profile derivatives sampled on the grid. Lbar rows are not freely
// specifiable on the initial cone; they are measured from an evolved
// solution's restriction when one is supplied.
DataBoundsReport verify_data_bounds(const PulseSpec& spec, const NullGrid& grid,
                                    const FieldState* evolved = nullptr);

}  // namespace nullpulse
