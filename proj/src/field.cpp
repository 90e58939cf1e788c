#include "nullpulse/field.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nullpulse/util.hpp"

namespace nullpulse {

const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::phi: return "phi";
        case Quantity::l_phi: return "l_phi";
        case Quantity::lbar_phi: return "lbar_phi";
        case Quantity::omega_phi: return "omega_phi";
        case Quantity::snab_phi: return "snab_phi";
        case Quantity::l2_phi: return "l2_phi";
        case Quantity::lbar2_phi: return "lbar2_phi";
        case Quantity::l_omega_phi: return "l_omega_phi";
        case Quantity::lbar_omega_phi: return "lbar_omega_phi";
        case Quantity::omega2_phi: return "omega2_phi";
        case Quantity::omega3_phi: return "omega3_phi";
        case Quantity::l_omega2_phi: return "l_omega2_phi";
        case Quantity::lbar_omega2_phi: return "lbar_omega2_phi";
        case Quantity::l2_omega_phi: return "l2_omega_phi";
        case Quantity::lbar2_omega_phi: return "lbar2_omega_phi";
    }
    return "unknown";
}

FieldState::FieldState(NullGrid grid, Nonlinearity nonlin)
    : grid_(std::move(grid)), nonlin_(nonlin), phi_(grid_.node_count(), 0.0) {}

void FieldState::set_forcing(const ForcingFn& fn) {
    if (!fn) {
        forcing_.clear();
        return;
    }
    forcing_.assign(grid_.node_count(), 0.0);
    for (int i = 0; i <= grid_.n_u; ++i)
        for (int j = 0; j <= grid_.n_ub; ++j)
            for (int m = 0; m < grid_.n_theta; ++m)
                forcing_[grid_.idx(i, j, m)] = fn(grid_.u_at(i), grid_.ub_at(j), grid_.theta_at(m));
}

void FieldState::adopt_forcing(std::vector<double> values) {
    if (!values.empty() && values.size() != grid_.node_count())
        throw std::invalid_argument("forcing array size does not match the grid");
    forcing_ = std::move(values);
}

void FieldState::fill_frame_derivatives() {
    cache_.clear();
    cache_[Quantity::l_phi] = diff_ub(grid_, phi_);
    cache_[Quantity::lbar_phi] = diff_u(grid_, phi_);
    cache_[Quantity::omega_phi] = diff_theta(grid_, phi_, 1);
}

const std::vector<double>& FieldState::values(Quantity q) const {
    if (q == Quantity::phi) return phi_;
    auto it = cache_.find(q);
    if (it != cache_.end()) return it->second;

    std::vector<double> v;
    switch (q) {
        case Quantity::l_phi: v = diff_ub(grid_, phi_); break;
        case Quantity::lbar_phi: v = diff_u(grid_, phi_); break;
        case Quantity::omega_phi: v = diff_theta(grid_, phi_, 1); break;
        case Quantity::snab_phi: {
            v = values(Quantity::omega_phi);
            for (int i = 0; i <= grid_.n_u; ++i)
                for (int j = 0; j <= grid_.n_ub; ++j) {
                    const double inv_r = 1.0 / grid_.r_at(i, j);
                    for (int m = 0; m < grid_.n_theta; ++m) v[grid_.idx(i, j, m)] *= inv_r;
                }
            break;
        }
        case Quantity::l2_phi: v = diff_ub(grid_, values(Quantity::l_phi)); break;
        case Quantity::lbar2_phi: v = diff_u(grid_, values(Quantity::lbar_phi)); break;
        case Quantity::l_omega_phi: v = diff_ub(grid_, values(Quantity::omega_phi)); break;
        case Quantity::lbar_omega_phi: v = diff_u(grid_, values(Quantity::omega_phi)); break;
        case Quantity::omega2_phi: v = diff_theta(grid_, phi_, 2); break;
        case Quantity::omega3_phi: v = diff_theta(grid_, phi_, 3); break;
        case Quantity::l_omega2_phi: v = diff_ub(grid_, values(Quantity::omega2_phi)); break;
        case Quantity::lbar_omega2_phi: v = diff_u(grid_, values(Quantity::omega2_phi)); break;
        case Quantity::l2_omega_phi: v = diff_ub(grid_, values(Quantity::l_omega_phi)); break;
        case Quantity::lbar2_omega_phi: v = diff_u(grid_, values(Quantity::lbar_omega_phi)); break;
        case Quantity::phi: break;  // handled above
    }
    auto [pos, ok] = cache_.emplace(q, std::move(v));
    (void)ok;
    return pos->second;
}

double FieldState::max_abs(Quantity q) const {
    const auto& v = values(q);
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double FieldState::max_abs_phi_below(double ub_cut) const {
    const double cut = ub_cut * (1.0 + 1e-12) + 1e-300;
    double m = 0.0;
    for (int i = 0; i <= grid_.n_u; ++i)
        for (int j = 0; j <= grid_.n_ub; ++j) {
            if (grid_.ub_at(j) > cut) break;
            for (int mm = 0; mm < grid_.n_theta; ++mm)
                m = std::max(m, std::abs(phi_[grid_.idx(i, j, mm)]));
        }
    return m;
}

namespace {

// Differentiates along one axis of the flattened array. stride is the index
// step of the axis, count its node count, h its spacing; outer iterates the
// remaining axes. Central interior, second-order one-sided at the ends.
void diff_axis(const std::vector<double>& f, std::vector<double>& out,
               std::size_t outer_count, std::size_t stride,
               const std::vector<std::size_t>& bases, int count, double h) {
    (void)outer_count;
    const double inv2h = 1.0 / (2.0 * h);
    for (std::size_t base : bases) {
        const double* fp = f.data() + base;
        double* op = out.data() + base;
        op[0] = (-3.0 * fp[0] + 4.0 * fp[stride] - fp[2 * stride]) * inv2h;
        for (int a = 1; a < count; ++a)
            op[static_cast<std::size_t>(a) * stride] =
                (fp[(a + 1) * stride] - fp[(a - 1) * stride]) * inv2h;
        const std::size_t last = static_cast<std::size_t>(count) * stride;
        op[last] = (3.0 * fp[last] - 4.0 * fp[last - stride] + fp[last - 2 * stride]) * inv2h;
    }
}

}  // namespace

std::vector<double> diff_u(const NullGrid& g, const std::vector<double>& f) {
    std::vector<double> out(f.size(), 0.0);
    const std::size_t stride = static_cast<std::size_t>(g.n_ub + 1) * g.n_theta;
    std::vector<std::size_t> bases;
    bases.reserve(static_cast<std::size_t>(g.n_ub + 1) * g.n_theta);
    for (int j = 0; j <= g.n_ub; ++j)
        for (int m = 0; m < g.n_theta; ++m) bases.push_back(g.idx(0, j, m));
    diff_axis(f, out, bases.size(), stride, bases, g.n_u, g.h_u);
    return out;
}

std::vector<double> diff_ub(const NullGrid& g, const std::vector<double>& f) {
    std::vector<double> out(f.size(), 0.0);
    const std::size_t stride = g.n_theta;
    std::vector<std::size_t> bases;
    bases.reserve(static_cast<std::size_t>(g.n_u + 1) * g.n_theta);
    for (int i = 0; i <= g.n_u; ++i)
        for (int m = 0; m < g.n_theta; ++m) bases.push_back(g.idx(i, 0, m));
    diff_axis(f, out, bases.size(), stride, bases, g.n_ub, g.h_ub);
    return out;
}

std::vector<double> diff_theta(const NullGrid& g, const std::vector<double>& f, int order) {
    std::vector<double> out(f.size(), 0.0);
    if (g.dim == 3) return out;
    std::vector<double> line(g.n_theta), dline(g.n_theta);
    for (int i = 0; i <= g.n_u; ++i)
        for (int j = 0; j <= g.n_ub; ++j) {
            const std::size_t base = g.idx(i, j, 0);
            for (int m = 0; m < g.n_theta; ++m) line[m] = f[base + m];
            theta_derivative_line(g, order, line.data(), dline.data());
            for (int m = 0; m < g.n_theta; ++m) out[base + m] = dline[m];
        }
    return out;
}

void save_checkpoint(const FieldState& state, const std::string& path) {
    const NullGrid& g = state.grid();
    const Nonlinearity& nl = state.nonlinearity();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);
    out << "nullpulse_checkpoint 1\n";
    out << "dim " << g.dim << "\n";
    out << "u0 " << fmt_g17(g.u0) << "\n";
    out << "u_end " << fmt_g17(g.u_end) << "\n";
    out << "delta " << fmt_g17(g.delta) << "\n";
    out << "n_u " << g.n_u << "\n";
    out << "n_ub " << g.n_ub << "\n";
    out << "n_theta " << g.n_theta << "\n";
    const char* kind = nl.kind == NonlinKind::power ? "power"
                       : nl.kind == NonlinKind::exp_focusing ? "exp"
                                                             : "none";
    out << "nonlinearity " << kind << "\n";
    out << "power_k " << nl.k << "\n";
    out << "sign " << nl.sign << "\n";
    out << "fields " << (state.forcing_values().empty() ? "phi" : "phi forcing") << "\n";
    out << "end\n";
    static_assert(sizeof(double) == 8);
    out.write(reinterpret_cast<const char*>(state.phi().data()),
              static_cast<std::streamsize>(state.phi().size() * sizeof(double)));
    if (!state.forcing_values().empty())
        out.write(reinterpret_cast<const char*>(state.forcing_values().data()),
                  static_cast<std::streamsize>(state.forcing_values().size() * sizeof(double)));
    if (!out) throw std::runtime_error("short write on checkpoint: " + path);
}

FieldState load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "nullpulse_checkpoint 1")
        throw std::runtime_error("not a checkpoint file: " + path);

    int dim = 3, n_u = 0, n_ub = 0, n_theta = 1, power_k = 3, sign = 1;
    double u0 = 0, u_end = 0, delta = 0;
    std::string nonlin = "power", fields = "phi";
    while (std::getline(in, line)) {
        if (line == "end") break;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "dim") ls >> dim;
        else if (key == "u0") ls >> u0;
        else if (key == "u_end") ls >> u_end;
        else if (key == "delta") ls >> delta;
        else if (key == "n_u") ls >> n_u;
        else if (key == "n_ub") ls >> n_ub;
        else if (key == "n_theta") ls >> n_theta;
        else if (key == "nonlinearity") ls >> nonlin;
        else if (key == "power_k") ls >> power_k;
        else if (key == "sign") ls >> sign;
        else if (key == "fields") std::getline(ls >> std::ws, fields);
        // unknown keys are skipped so the format can grow
    }
    if (line != "end") throw std::runtime_error("truncated checkpoint header: " + path);

    Nonlinearity nl;
    nl.kind = (nonlin == "exp")    ? NonlinKind::exp_focusing
              : (nonlin == "none") ? NonlinKind::none
                                   : NonlinKind::power;
    nl.k = power_k;
    nl.sign = sign;
    FieldState state(build_grid(dim, u0, u_end, delta, n_u, n_ub, n_theta), nl);

    auto read_block = [&](std::vector<double>& dst) {
        dst.resize(state.grid().node_count());
        in.read(reinterpret_cast<char*>(dst.data()),
                static_cast<std::streamsize>(dst.size() * sizeof(double)));
        if (in.gcount() != static_cast<std::streamsize>(dst.size() * sizeof(double)))
            throw std::runtime_error("truncated checkpoint payload: " + path);
    };
    read_block(state.phi());
    if (fields == "phi forcing") {
        std::vector<double> forcing;
        read_block(forcing);
        state.adopt_forcing(std::move(forcing));
    }
    state.fill_frame_derivatives();
    return state;
}

}  // namespace nullpulse
