#pragma once

// Numerical checks of the density-response identities at N = 1: the
// second-time-derivative commutator formula
//   f''(t) = -<psi|[H0,[H0,phi]]psi> + <psi|[V(t),[Lap,phi]]psi>,
//   [V, [Lap, phi]] = -2 grad V . grad phi,
// the nonnegative gradient functional int rho0 |grad(V1-V2)|^2, and the
// order-0 identification verdict from propagated density pairs.

#include "rglab/fd.hpp"
#include "rglab/grid.hpp"
#include "rglab/potential.hpp"
#include "rglab/tdse.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rglab {

struct ObservableSpec {
    std::string name;
    std::vector<double> samples;
    std::vector<double> gradient;

    static ObservableSpec from_function(const Grid1D& grid, std::string name,
                                        const std::function<double(double)>& f,
                                        const std::function<double(double)>& grad = nullptr) {
        ObservableSpec o;
        o.name = std::move(name);
        o.samples.resize(static_cast<size_t>(grid.n_points));
        for (int i = 0; i < grid.n_points; ++i) o.samples[static_cast<size_t>(i)] = f(grid.node(i));
        if (grad) {
            o.gradient.resize(static_cast<size_t>(grid.n_points));
            for (int i = 0; i < grid.n_points; ++i)
                o.gradient[static_cast<size_t>(i)] = grad(grid.node(i));
            // consistency of the two closures, probed by Richardson-refined
            // central differences at grid-independent steps
            for (int i = grid.n_points / 8; i < grid.n_points; i += grid.n_points / 7) {
                const double x = grid.node(i);
                const double d = 1e-5 * (1.0 + std::abs(x));
                const double fd1 = (f(x + d) - f(x - d)) / (2 * d);
                const double fd2 = (f(x + d / 2) - f(x - d / 2)) / d;
                const double fd = (4 * fd2 - fd1) / 3;
                if (std::abs(fd - grad(x)) > 1e-8 * (1.0 + std::abs(grad(x))))
                    throw std::invalid_argument("ObservableSpec: gradient closure inconsistent");
            }
        } else {
            o.gradient = centered_gradient(o.samples, grid.spacing());
        }
        return o;
    }

    static std::vector<double> centered_gradient(const std::vector<double>& v, double h) {
        std::vector<double> g(v.size(), 0.0);
        for (size_t i = 1; i + 1 < v.size(); ++i) g[i] = (v[i + 1] - v[i - 1]) / (2 * h);
        if (v.size() >= 2) {
            g.front() = (v[1] - v[0]) / h;
            g.back() = (v[v.size() - 1] - v[v.size() - 2]) / h;
        }
        return g;
    }
};

namespace detail {

inline std::vector<Complex> apply_h0(const Grid1D& grid, const std::vector<double>& v0,
                                     const std::vector<Complex>& u) {
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    std::vector<Complex> out(u.size());
    const size_t n = u.size();
    for (size_t i = 0; i < n; ++i) {
        Complex lap = -2.0 * u[i];
        if (i > 0) lap += u[i - 1];
        if (i + 1 < n) lap += u[i + 1];
        out[i] = -lap * inv_h2 + (v0.empty() ? 0.0 : v0[i]) * u[i];
    }
    return out;
}

// B = [H0, phi] expanded as -(lap phi) - 2 grad(phi) grad(.)
inline std::vector<Complex> apply_b(const Grid1D& grid, const ObservableSpec& phi,
                                    const std::vector<Complex>& u) {
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);
    const size_t n = u.size();
    std::vector<Complex> out(n);
    for (size_t i = 0; i < n; ++i) {
        double lap_phi = -2.0 * phi.samples[i];
        if (i > 0) lap_phi += phi.samples[i - 1];
        if (i + 1 < n) lap_phi += phi.samples[i + 1];
        lap_phi *= inv_h2;
        Complex grad_u = 0.0;
        if (i > 0 && i + 1 < n) grad_u = (u[i + 1] - u[i - 1]) / (2 * h);
        out[i] = -lap_phi * u[i] - 2.0 * phi.gradient[i] * grad_u;
    }
    return out;
}

inline double re_inner(const std::vector<Complex>& a, const std::vector<Complex>& b, double h) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += (std::conj(a[i]) * b[i]).real();
    return s * h;
}

} // namespace detail

/// Right-hand side of the second-derivative identity at t = 0.
inline double double_commutator_rhs(const WaveField& psi0, const ObservableSpec& phi,
                                    const PotentialSpec& pot) {
    const Grid1D& grid = psi0.grid;
    if (pot.has_delta())
        throw std::invalid_argument("double_commutator_rhs: needs a smooth potential");
    const double h = grid.spacing();

    // -<psi|[H0, B]|psi> with H0 = -lap + V0 and B = [H0, phi]
    const std::vector<Complex>& u = psi0.values;
    auto bu = detail::apply_b(grid, phi, u);
    auto h0u = detail::apply_h0(grid, pot.static_part, u);
    auto h0bu = detail::apply_h0(grid, pot.static_part, bu);
    auto bh0u = detail::apply_b(grid, phi, h0u);
    double term_kinetic = 0;
    for (size_t i = 0; i < u.size(); ++i)
        term_kinetic += (std::conj(u[i]) * (h0bu[i] - bh0u[i])).real();
    term_kinetic *= -h;

    // <psi| -2 grad V(0,.) . grad phi |psi>
    std::vector<double> vt0(static_cast<size_t>(grid.n_points), 0.0);
    for (int i = 0; i < grid.n_points; ++i)
        vt0[static_cast<size_t>(i)] = pot.time_value(0.0, grid.node(i), i);
    auto grad_v = ObservableSpec::centered_gradient(vt0, h);
    double term_gradient = 0;
    for (size_t i = 0; i < u.size(); ++i)
        term_gradient += std::norm(u[i]) * grad_v[i] * phi.gradient[i];
    term_gradient *= -2.0 * h;

    return term_kinetic + term_gradient;
}

struct RGReport {
    double lhs = 0;
    double rhs = 0;
    double relative_error = 0;
    double convergence_order = 0;
    std::vector<double> refinement_errors;
    bool identity_holds = false;
};

struct RGScenario {
    double x_min = -40.0, x_max = 40.0;
    std::function<Complex(double)> psi0;
    std::function<double(double)> phi;
    std::function<double(double)> phi_grad;               // optional
    std::function<double(double)> v_static;               // optional
    std::function<double(double, double)> v_time;         // optional V(t,x)
};

struct RefineLevel {
    int n_points = 1601;
    double dt = 1e-3;
};

inline PotentialSpec scenario_potential(const RGScenario& sc, const Grid1D& grid) {
    PotentialSpec pot;
    if (sc.v_static) pot = sampled_potential(grid, sc.v_static);
    if (sc.v_time) pot.closed_form = sc.v_time;
    return pot;
}

/// Compares the finite-difference f''(0) of a propagated observable series
/// against the commutator expectation, over (h, dt)-refinement levels.
inline RGReport rg_second_derivative_check(
    const RGScenario& sc,
    const std::vector<RefineLevel>& levels = {{1601, 1e-3}, {3201, 5e-4}, {6401, 2.5e-4}},
    double tolerance = 1e-3) {
    if (levels.empty()) throw std::invalid_argument("rg_second_derivative_check: no levels");
    RGReport report;
    for (size_t lvl = 0; lvl < levels.size(); ++lvl) {
        Grid1D grid(sc.x_min, sc.x_max, levels[lvl].n_points, Geometry::line);
        WaveField psi0 = sample_wavefield(grid, sc.psi0);
        PotentialSpec pot = scenario_potential(sc, grid);
        ObservableSpec phi = ObservableSpec::from_function(grid, "phi", sc.phi, sc.phi_grad);

        const double rhs = double_commutator_rhs(psi0, phi, pot);

        const double dt = levels[lvl].dt;
        PropagateOptions opt;
        opt.record_densities = false;
        Trajectory traj =
            propagate(psi0, pot, 20 * dt, dt, {Observable{"phi", phi.samples}}, opt);
        const double lhs = fd_time_derivative(traj.observables.at("phi"), 2, dt).value;

        const double err = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-12});
        report.refinement_errors.push_back(err);
        if (lvl == 0) {
            report.lhs = lhs;
            report.rhs = rhs;
            report.relative_error = err;
        }
    }
    auto orders = refinement_orders(report.refinement_errors);
    double mean = 0;
    for (double p : orders) mean += p;
    report.convergence_order = orders.empty() ? 0.0 : mean / static_cast<double>(orders.size());
    report.identity_holds = report.relative_error < tolerance &&
                            (report.refinement_errors.back() <= report.refinement_errors.front());
    return report;
}

struct GradientFunctional {
    double functional = 0; // int rho0 |grad v|^2
    double cross_form = 0; // -2 int rho0 grad(phi) . grad(v), phi = v
};

/// Discrete cross form -2 sum rho0 grad(phi) grad(v) h for independent phi.
inline double discrete_cross_form(const std::vector<double>& rho0, const std::vector<double>& phi,
                                  const std::vector<double>& v_diff, double h) {
    auto gp = ObservableSpec::centered_gradient(phi, h);
    auto gv = ObservableSpec::centered_gradient(v_diff, h);
    double s = 0;
    for (size_t i = 1; i + 1 < rho0.size(); ++i) s += rho0[i] * gp[i] * gv[i];
    return -2.0 * s * h;
}

inline GradientFunctional gradient_functional(const std::vector<double>& rho0,
                                              const std::vector<double>& v_diff, double h) {
    if (rho0.size() != v_diff.size())
        throw std::invalid_argument("gradient_functional: size mismatch");
    auto gv = ObservableSpec::centered_gradient(v_diff, h);
    double s = 0;
    for (size_t i = 1; i + 1 < rho0.size(); ++i) s += rho0[i] * gv[i] * gv[i];
    GradientFunctional out;
    out.functional = s * h;
    out.cross_form = discrete_cross_form(rho0, v_diff, v_diff, h);
    return out;
}

enum class RGVerdict { equal, distinguished, inconclusive };

inline const char* verdict_name(RGVerdict v) {
    switch (v) {
        case RGVerdict::equal: return "equal";
        case RGVerdict::distinguished: return "distinguished";
        case RGVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct IdentifyTolerances {
    double density_equal_rel = 1e-6; // times max rho
    double identification = 1e-4;
    double nodal_zero = 1e-15;
};

struct IdentifyResult {
    RGVerdict verdict = RGVerdict::inconclusive;
    double density_gap = 0;
    double functional = 0;
    double cross_form = 0;
    int support_components = 0; // connected runs of {rho0 > nodal threshold}
};

/// Order-0 identification: propagate both potentials from the same state
/// and decide whether the ell = 0 gradient difference is visible in the
/// densities. A difference living entirely outside the support of rho0 is
/// reported as inconclusive.
inline IdentifyResult identify_order0(const WaveField& psi0, const PotentialSpec& pot1,
                                      const PotentialSpec& pot2, double t_end, double dt,
                                      const IdentifyTolerances& tol = {}) {
    const Grid1D& grid = psi0.grid;
    const double h = grid.spacing();

    Trajectory t1 = propagate(psi0, pot1, t_end, dt);
    Trajectory t2 = propagate(psi0, pot2, t_end, dt);

    IdentifyResult out;
    for (size_t r = 0; r < t1.densities.size(); ++r)
        for (size_t i = 0; i < t1.densities[r].size(); ++i)
            out.density_gap = std::max(out.density_gap,
                                       std::abs(t1.densities[r][i] - t2.densities[r][i]));

    std::vector<double> rho0 = psi0.density();
    double max_rho = 0;
    for (double r : rho0) max_rho = std::max(max_rho, r);

    std::vector<double> v_diff(static_cast<size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) {
        const double x = grid.node(i);
        v_diff[static_cast<size_t>(i)] = (pot1.static_value(i) + pot1.time_value(0.0, x, i)) -
                                         (pot2.static_value(i) + pot2.time_value(0.0, x, i));
    }
    auto gv = ObservableSpec::centered_gradient(v_diff, h);
    double grad_scale = 1.0;
    for (double g : gv) grad_scale = std::max(grad_scale, std::abs(g));
    bool diff_on_support = false, diff_off_support = false;
    for (size_t i = 0; i < gv.size(); ++i) {
        if (std::abs(gv[i]) <= 1e-12 * grad_scale) continue;
        (rho0[i] > tol.nodal_zero ? diff_on_support : diff_off_support) = true;
    }

    bool in_support = false;
    for (double r : rho0) {
        const bool s = r > tol.nodal_zero;
        if (s && !in_support) ++out.support_components;
        in_support = s;
    }

    GradientFunctional gf = gradient_functional(rho0, v_diff, h);
    out.functional = gf.functional;
    out.cross_form = gf.cross_form;

    if (out.density_gap < tol.density_equal_rel * max_rho) {
        if (diff_on_support && out.functional >= tol.identification)
            throw std::logic_error("identify_order0: equal densities with a visible gradient gap");
        out.verdict = diff_off_support && !diff_on_support ? RGVerdict::inconclusive : RGVerdict::equal;
    } else {
        out.verdict = RGVerdict::distinguished;
    }
    return out;
}

} // namespace rglab
