#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace nullpulse {

enum class NonlinKind { none, power, exp_focusing };

// Semilinear term N(phi) on the right of box(phi) = N(phi):
//   none:         N = 0 (linear evolution, used by oracle runs).
//   power:        N = sign |phi|^{k-1} phi, odd k >= 3 (computed as an odd
//                 integer power, which equals the branch form exactly),
//                 sign +1 defocusing / -1 focusing.
//   exp_focusing: N = -phi exp(phi^2) (the planar model), always focusing.
struct Nonlinearity {
    NonlinKind kind = NonlinKind::power;
    int k = 3;
    int sign = +1;

    void validate() const {
        if (kind == NonlinKind::power) {
            if (k < 3 || k % 2 == 0) throw std::invalid_argument("power k must be odd and >= 3");
            if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
        }
    }

    double operator()(double phi) const {
        if (kind == NonlinKind::none) return 0.0;
        if (kind == NonlinKind::exp_focusing) return -phi * std::exp(phi * phi);
        double p = phi;
        for (int i = 1; i < k; ++i) p *= phi;
        return sign * p;
    }

    // Potential energy density paired with the kinetic flux:
    //   power: 2/(k+1) |phi|^{k+1};  exp_focusing: exp(phi^2) - 1.
    // Returned unsigned; the focusing sign enters the energy, not the density.
    double potential(double phi) const {
        if (kind == NonlinKind::none) return 0.0;
        if (kind == NonlinKind::exp_focusing) return std::expm1(phi * phi);
        double p = std::abs(phi);
        double acc = p;
        for (int i = 1; i <= k; ++i) acc *= p;
        return 2.0 / (k + 1) * acc;
    }

    std::string describe() const {
        if (kind == NonlinKind::none) return "none";
        if (kind == NonlinKind::exp_focusing) return "exp_focusing";
        return (sign > 0 ? "power_defocusing_k" : "power_focusing_k") + std::to_string(k);
    }
};

}  // namespace nullpulse
