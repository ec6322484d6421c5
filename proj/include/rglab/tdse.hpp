#pragma once

// Crank-Nicolson propagation of i d(psi)/dt = H(t) psi on a uniform grid
// (units 2m = hbar = 1), with the Hamiltonian evaluated at the midpoint
// time of every step. The scheme is the Cayley transform of a real
// symmetric tridiagonal matrix, so it conserves the discrete norm to
// rounding; drift beyond that indicates a bug or a blowup and is treated
// as an instability.

#include "rglab/grid.hpp"
#include "rglab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rglab {

using Complex = std::complex<double>;

struct InstabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Real symmetric tridiagonal operator over the interior nodes.
struct Tridiag {
    std::vector<double> diag; // size n-2
    std::vector<double> off;  // size n-3, constant -1/h^2 here
};

/// 3-point Laplacian plus diagonal potential; the delta term contributes
/// lambda/h on the node nearest the origin; boundary rows are Dirichlet
/// (handled by keeping wall values pinned to zero).
inline Tridiag build_hamiltonian(const Grid1D& grid, const PotentialSpec& pot, double t) {
    pot.validate(grid);
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);
    const int m = grid.interior_count();

    Tridiag H;
    H.diag.resize(static_cast<size_t>(m));
    H.off.assign(static_cast<size_t>(m > 0 ? m - 1 : 0), -inv_h2);

    const int delta_node = pot.has_delta() ? grid.nearest_node(0.0) : -1;
    for (int i = 1; i <= m; ++i) {
        double d = 2.0 * inv_h2 + pot.static_value(i) + pot.time_value(t, grid.node(i), i);
        if (i == delta_node) d += to_double(pot.delta_strength) / h;
        H.diag[static_cast<size_t>(i - 1)] = d;
    }
    return H;
}

struct WaveField {
    Grid1D grid;
    std::vector<Complex> values; // full length n, walls stay 0

    double norm_sq() const {
        double s = 0;
        for (const auto& v : values) s += std::norm(v);
        return s * grid.spacing();
    }

    void normalize() {
        double n = std::sqrt(norm_sq());
        if (n == 0) throw std::invalid_argument("WaveField::normalize: zero field");
        for (auto& v : values) v /= n;
    }

    std::vector<double> density() const {
        std::vector<double> rho(values.size());
        for (size_t i = 0; i < values.size(); ++i) rho[i] = std::norm(values[i]);
        return rho;
    }
};

inline WaveField sample_wavefield(const Grid1D& grid, const std::function<Complex(double)>& f,
                                  bool renormalize = true) {
    WaveField w{grid, std::vector<Complex>(static_cast<size_t>(grid.n_points))};
    for (int i = 1; i < grid.n_points - 1; ++i) w.values[static_cast<size_t>(i)] = f(grid.node(i));
    if (renormalize) w.normalize();
    return w;
}

inline WaveField make_gaussian(const Grid1D& grid, double x0, double sigma0, double k0) {
    return sample_wavefield(grid, [=](double x) {
        double arg = (x - x0) / (2.0 * sigma0);
        return std::exp(Complex(-arg * arg, k0 * (x - x0)));
    });
}

namespace detail {

// Thomas solve for (complex) tridiagonal systems with constant off-diagonal.
inline void tridiag_solve(const std::vector<Complex>& diag, Complex off, std::vector<Complex>& rhs) {
    const size_t m = diag.size();
    static thread_local std::vector<Complex> c;
    c.assign(m, Complex(0));
    Complex beta = diag[0];
    rhs[0] /= beta;
    for (size_t i = 1; i < m; ++i) {
        c[i] = off / beta;
        beta = diag[i] - off * c[i];
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / beta;
    }
    for (size_t i = m - 1; i-- > 0;) rhs[i] -= c[i + 1] * rhs[i + 1];
}

inline void tridiag_solve_real(const std::vector<double>& diag, const std::vector<double>& off,
                               std::vector<double>& rhs) {
    const size_t m = diag.size();
    static thread_local std::vector<double> c;
    c.assign(m, 0.0);
    double beta = diag[0];
    rhs[0] /= beta;
    for (size_t i = 1; i < m; ++i) {
        c[i] = off[i - 1] / beta;
        beta = diag[i] - off[i - 1] * c[i];
        rhs[i] = (rhs[i] - off[i - 1] * rhs[i - 1]) / beta;
    }
    for (size_t i = m - 1; i-- > 0;) rhs[i] -= c[i + 1] * rhs[i + 1];
}

} // namespace detail

struct Observable {
    std::string name;
    std::vector<double> samples; // full grid length
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> densities; // one row per recorded time
    std::map<std::string, std::vector<double>> observables;
    double max_step_norm_drift = 0; // relative, per step
    double cumulative_norm_drift = 0;
    double max_wall_mass = 0; // probability mass near the walls, worst case
    bool reflection_ok = true;
};

struct PropagateOptions {
    bool record_densities = true;
    double norm_drift_per_step = 1e-12;
    double norm_drift_cumulative = 1e-6;
    double reflection_budget = 1e-8;
};

/// Crank-Nicolson propagation; records density rows and observable series
/// at every step (including t = 0).
inline Trajectory propagate(const WaveField& psi0, const PotentialSpec& pot, double t_end, double dt,
                            const std::vector<Observable>& observables = {},
                            const PropagateOptions& opt = {}) {
    if (!(dt > 0)) throw std::invalid_argument("propagate: dt must be positive");
    const auto steps = static_cast<long>(std::llround(t_end / dt));
    if (steps < 0 || steps > 10'000'000) throw std::invalid_argument("propagate: step budget exceeded");

    const Grid1D& grid = psi0.grid;
    pot.validate(grid);
    const double h = grid.spacing();
    const int m = grid.interior_count();
    const Complex off_factor(0.0, 0.5 * dt); // i dt/2 applied to H entries

    std::vector<Complex> psi(psi0.values.begin() + 1, psi0.values.end() - 1);

    Trajectory traj;
    const double norm0 = psi0.norm_sq();
    double prev_norm = norm0;

    auto record = [&](double t, const std::vector<Complex>& interior) {
        traj.times.push_back(t);
        std::vector<double> rho(static_cast<size_t>(grid.n_points), 0.0);
        for (int i = 0; i < m; ++i) rho[static_cast<size_t>(i + 1)] = std::norm(interior[static_cast<size_t>(i)]);
        for (const auto& obs : observables) {
            double f = 0;
            for (int i = 0; i < grid.n_points; ++i) f += rho[static_cast<size_t>(i)] * obs.samples[static_cast<size_t>(i)];
            traj.observables[obs.name].push_back(f * h);
        }
        double wall = 0;
        for (int i = 0; i < std::min(3, m); ++i)
            wall += (rho[static_cast<size_t>(i + 1)] + rho[static_cast<size_t>(grid.n_points - 2 - i)]) * h;
        traj.max_wall_mass = std::max(traj.max_wall_mass, wall);
        if (opt.record_densities) traj.densities.push_back(std::move(rho));
    };

    record(0.0, psi);

    std::vector<Complex> diag_plus(static_cast<size_t>(m));
    std::vector<Complex> rhs(static_cast<size_t>(m));
    const double inv_h2 = 1.0 / (h * h);

    for (long n = 0; n < steps; ++n) {
        const double t_mid = (static_cast<double>(n) + 0.5) * dt;
        const Tridiag H = build_hamiltonian(grid, pot, t_mid);
        const Complex off_plus = off_factor * (-inv_h2);

        for (int i = 0; i < m; ++i)
            diag_plus[static_cast<size_t>(i)] = 1.0 + off_factor * H.diag[static_cast<size_t>(i)];

        // rhs = (I - i dt/2 H) psi
        for (int i = 0; i < m; ++i) {
            Complex acc = (1.0 - off_factor * H.diag[static_cast<size_t>(i)]) * psi[static_cast<size_t>(i)];
            if (i > 0) acc -= off_plus * psi[static_cast<size_t>(i - 1)];
            if (i < m - 1) acc -= off_plus * psi[static_cast<size_t>(i + 1)];
            rhs[static_cast<size_t>(i)] = acc;
        }
        detail::tridiag_solve(diag_plus, off_plus, rhs);
        psi.swap(rhs);

        double norm = 0;
        for (const auto& v : psi) norm += std::norm(v);
        norm *= h;
        const double step_drift = std::abs(norm - prev_norm) / norm0;
        traj.max_step_norm_drift = std::max(traj.max_step_norm_drift, step_drift);
        traj.cumulative_norm_drift = std::abs(norm - norm0) / norm0;
        if (traj.cumulative_norm_drift > opt.norm_drift_cumulative)
            throw InstabilityError("propagate: cumulative norm drift exceeded budget");
        prev_norm = norm;

        record(static_cast<double>(n + 1) * dt, psi);
    }
    traj.reflection_ok = traj.max_wall_mass <= opt.reflection_budget;
    return traj;
}

/// Final wavefunction of a propagation run (no recording overhead).
inline WaveField propagate_state(const WaveField& psi0, const PotentialSpec& pot, double t_end,
                                 double dt) {
    const Grid1D& grid = psi0.grid;
    const double h = grid.spacing();
    const int m = grid.interior_count();
    const auto steps = static_cast<long>(std::llround(t_end / dt));
    const Complex off_factor(0.0, 0.5 * dt);
    const double inv_h2 = 1.0 / (h * h);

    std::vector<Complex> psi(psi0.values.begin() + 1, psi0.values.end() - 1);
    std::vector<Complex> diag_plus(static_cast<size_t>(m));
    std::vector<Complex> rhs(static_cast<size_t>(m));
    for (long n = 0; n < steps; ++n) {
        const Tridiag H = build_hamiltonian(grid, pot, (static_cast<double>(n) + 0.5) * dt);
        const Complex off_plus = off_factor * (-inv_h2);
        for (int i = 0; i < m; ++i)
            diag_plus[static_cast<size_t>(i)] = 1.0 + off_factor * H.diag[static_cast<size_t>(i)];
        for (int i = 0; i < m; ++i) {
            Complex acc = (1.0 - off_factor * H.diag[static_cast<size_t>(i)]) * psi[static_cast<size_t>(i)];
            if (i > 0) acc -= off_plus * psi[static_cast<size_t>(i - 1)];
            if (i < m - 1) acc -= off_plus * psi[static_cast<size_t>(i + 1)];
            rhs[static_cast<size_t>(i)] = acc;
        }
        detail::tridiag_solve(diag_plus, off_plus, rhs);
        psi.swap(rhs);
    }
    WaveField out{grid, std::vector<Complex>(static_cast<size_t>(grid.n_points))};
    for (int i = 0; i < m; ++i) out.values[static_cast<size_t>(i + 1)] = psi[static_cast<size_t>(i)];
    return out;
}

namespace detail {

// Eigenvalue count below sigma via the Sturm/LDL^T sign recurrence.
inline int sturm_count(const Tridiag& T, double sigma) {
    int count = 0;
    double d = 1.0;
    const size_t m = T.diag.size();
    for (size_t i = 0; i < m; ++i) {
        const double e2 = (i == 0) ? 0.0 : T.off[i - 1] * T.off[i - 1];
        d = T.diag[i] - sigma - e2 / d;
        if (d == 0) d = 1e-300;
        if (d < 0) ++count;
    }
    return count;
}

} // namespace detail

struct EigenPair {
    double value = 0;
    WaveField vector;
};

/// Lowest eigenpair of the discrete Hamiltonian at time t: bisection on
/// the Sturm count, then inverse iteration at the converged shift.
inline EigenPair ground_state(const Grid1D& grid, const PotentialSpec& pot, double t = 0.0) {
    const Tridiag H = build_hamiltonian(grid, pot, t);
    const size_t m = H.diag.size();

    double lo = H.diag[0], hi = H.diag[0];
    for (size_t i = 0; i < m; ++i) {
        const double r = (i > 0 ? std::abs(H.off[i - 1]) : 0.0) + (i + 1 < m ? std::abs(H.off[i]) : 0.0);
        lo = std::min(lo, H.diag[i] - r);
        hi = std::max(hi, H.diag[i] + r);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1 + std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (detail::sturm_count(H, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    const double e0 = 0.5 * (lo + hi);

    // Inverse iteration at a shift just off the eigenvalue.
    const double shift = e0 - 1e-8 * (1 + std::abs(e0));
    std::vector<double> diag_shift(m);
    for (size_t i = 0; i < m; ++i) diag_shift[i] = H.diag[i] - shift;
    std::vector<double> v(m);
    for (size_t i = 0; i < m; ++i) {
        const double x = grid.node(static_cast<int>(i) + 1);
        v[i] = std::exp(-0.05 * x * x) + 1e-3; // positive bump seed
    }
    for (int it = 0; it < 8; ++it) {
        detail::tridiag_solve_real(diag_shift, H.off, v);
        double n2 = 0;
        for (double x : v) n2 += x * x;
        const double inv = 1.0 / std::sqrt(n2);
        for (double& x : v) x *= inv;
    }
    // Rayleigh quotient refinement of the eigenvalue.
    double num = 0, den = 0;
    for (size_t i = 0; i < m; ++i) {
        double hv = H.diag[i] * v[i];
        if (i > 0) hv += H.off[i - 1] * v[i - 1];
        if (i + 1 < m) hv += H.off[i] * v[i + 1];
        num += v[i] * hv;
        den += v[i] * v[i];
    }

    EigenPair out;
    out.value = num / den;
    out.vector = WaveField{grid, std::vector<Complex>(static_cast<size_t>(grid.n_points))};
    for (size_t i = 0; i < m; ++i) out.vector.values[i + 1] = v[i];
    out.vector.normalize();
    return out;
}

} // namespace rglab
