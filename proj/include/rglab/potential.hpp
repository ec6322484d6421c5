#pragma once

// Potential data for the simulator: a static part V0, an optional on-site
// delta strength (line geometry), and a time-dependent part V(t, x) given
// either as a closed-form profile or as a truncated Taylor polynomial in t
// built from sampled time-derivative rows.

#include "rglab/grid.hpp"
#include "rglab/rational.hpp"

#include <cstdint>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rglab {

struct PotentialSpec {
    std::vector<double> static_part;   // V0 samples; empty means identically 0
    Rational delta_strength = Rational(0);
    // (ell, samples of d^ell/dt^ell V(0, .)); Taylor order <= 6
    std::vector<std::pair<int, std::vector<double>>> time_part;
    std::function<double(double, double)> closed_form; // V(t, x), overrides time_part

    bool has_delta() const { return delta_strength != 0; }
    bool time_dependent() const { return static_cast<bool>(closed_form) || !time_part.empty(); }

    double time_value(double t, double x, int node) const {
        if (closed_form) return closed_form(t, x);
        double v = 0;
        for (const auto& [ell, samples] : time_part) {
            double tp = 1;
            for (int i = 0; i < ell; ++i) tp *= t / (i + 1); // t^ell / ell!
            v += samples.at(static_cast<size_t>(node)) * tp;
        }
        return v;
    }

    double static_value(int node) const {
        return static_part.empty() ? 0.0 : static_part.at(static_cast<size_t>(node));
    }

    void validate(const Grid1D& grid) const {
        if (!static_part.empty() && static_part.size() != static_cast<size_t>(grid.n_points))
            throw std::invalid_argument("PotentialSpec: static sample size mismatch");
        for (const auto& [ell, samples] : time_part) {
            if (ell < 0 || ell > 6)
                throw std::invalid_argument("PotentialSpec: time Taylor order must be <= 6");
            if (samples.size() != static_cast<size_t>(grid.n_points))
                throw std::invalid_argument("PotentialSpec: time sample size mismatch");
        }
        if (has_delta() && grid.geometry != Geometry::line)
            throw std::invalid_argument("PotentialSpec: delta term needs line geometry");
        for (double v : static_part)
            if (!std::isfinite(v)) throw std::invalid_argument("PotentialSpec: non-finite sample");
    }
};

inline PotentialSpec free_potential() { return PotentialSpec{}; }

inline PotentialSpec delta_potential(const Rational& lambda) {
    PotentialSpec p;
    p.delta_strength = lambda;
    return p;
}

inline PotentialSpec sampled_potential(const Grid1D& grid, const std::function<double(double)>& v0) {
    PotentialSpec p;
    p.static_part.resize(static_cast<size_t>(grid.n_points));
    for (int i = 0; i < grid.n_points; ++i) p.static_part[static_cast<size_t>(i)] = v0(grid.node(i));
    return p;
}

/// FNV-1a over the defining samples; used in run manifests.
inline std::uint64_t potential_hash(const PotentialSpec& p, const Grid1D& grid) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix_bytes = [&](const void* data, size_t n) {
        const auto* b = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    auto mix_double = [&](double v) { mix_bytes(&v, sizeof v); };
    for (double v : p.static_part) mix_double(v);
    mix_double(to_double(p.delta_strength));
    for (const auto& [ell, samples] : p.time_part) {
        mix_double(static_cast<double>(ell));
        for (double v : samples) mix_double(v);
    }
    if (p.closed_form)
        for (int i = 0; i < grid.n_points; i += 7) mix_double(p.closed_form(0.0, grid.node(i)));
    return h;
}

} // namespace rglab
