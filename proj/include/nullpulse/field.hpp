#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nullpulse/grid.hpp"
#include "nullpulse/nonlinearity.hpp"

namespace nullpulse {

// Derived grid functions, produced by differencing the stored fields.
// First derivatives come straight from the state arrays; higher ones are
// nested differences of those (second order interior, one-sided and first
// order at the slab boundaries).
enum class Quantity {
    phi,
    l_phi,           // L phi = d phi / d_ub
    lbar_phi,        // Lbar phi = d phi / d_u
    omega_phi,       // Omega phi = d phi / d_theta (spectral)
    snab_phi,        // r^{-1} Omega phi
    l2_phi,          // L^2 phi
    lbar2_phi,       // Lbar^2 phi
    l_omega_phi,
    lbar_omega_phi,
    omega2_phi,
    omega3_phi,
    l_omega2_phi,
    lbar_omega2_phi,
    l2_omega_phi,
    lbar2_omega_phi,
};

const char* quantity_name(Quantity q);

using ForcingFn = std::function<double(double u, double ub, double theta)>;

// Solution of one evolution run: phi plus its frame-derivative arrays on the
// full slab, flattened u-major, then ub, then theta (NullGrid::idx).
class FieldState {
  public:
    FieldState() = default;
    FieldState(NullGrid grid, Nonlinearity nonlin);

    const NullGrid& grid() const { return grid_; }
    const Nonlinearity& nonlinearity() const { return nonlin_; }

    std::vector<double>& phi() { return phi_; }
    const std::vector<double>& phi() const { return phi_; }

    // Evaluates nodal forcing values; empty vector means no forcing.
    void set_forcing(const ForcingFn& fn);
    // Adopts precomputed nodal forcing values (checkpoint reload path).
    void adopt_forcing(std::vector<double> values);
    const std::vector<double>& forcing_values() const { return forcing_; }

    // Fills l_phi / lbar_phi / omega_phi from phi. Called once after the
    // sweep; invalidates any cached derived quantities.
    void fill_frame_derivatives();

    // Lazily computed derived arrays, cached per quantity.
    const std::vector<double>& values(Quantity q) const;

    double max_abs(Quantity q) const;
    // max |phi| over nodes with ub <= ub_cut (exact-zero region checks).
    double max_abs_phi_below(double ub_cut) const;

  private:
    NullGrid grid_;
    Nonlinearity nonlin_;
    std::vector<double> phi_;
    std::vector<double> forcing_;
    mutable std::map<Quantity, std::vector<double>> cache_;
};

// Difference operators on flattened grid arrays. Central in the interior,
// second-order one-sided on the first/last line of the differenced axis.
std::vector<double> diff_u(const NullGrid& g, const std::vector<double>& f);
std::vector<double> diff_ub(const NullGrid& g, const std::vector<double>& f);
std::vector<double> diff_theta(const NullGrid& g, const std::vector<double>& f, int order);

// Checkpoint: plain-text header (key value lines, terminated by "end"),
// then the listed fields as raw little-endian float64 in index order.
void save_checkpoint(const FieldState& state, const std::string& path);
FieldState load_checkpoint(const std::string& path);

}  // namespace nullpulse
