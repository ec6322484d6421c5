#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rglab {

enum class Geometry { line, half_line };

/// Uniform 1D grid with hard Dirichlet walls at both ends. For half-line
/// geometry the origin wall encodes the psi(0) = 0 condition.
struct Grid1D {
    double x_min = 0;
    double x_max = 0;
    int n_points = 0;
    Geometry geometry = Geometry::line;

    Grid1D() = default;
    Grid1D(double xmin, double xmax, int n, Geometry geom)
        : x_min(xmin), x_max(xmax), n_points(n), geometry(geom) {
        if (n < 16) throw std::invalid_argument("Grid1D: n_points must be >= 16");
        if (!(xmax > xmin)) throw std::invalid_argument("Grid1D: empty interval");
        if (geom == Geometry::half_line && xmin != 0)
            throw std::invalid_argument("Grid1D: half-line grid must start at 0");
    }

    double spacing() const { return (x_max - x_min) / (n_points - 1); }
    double node(int i) const { return x_min + i * spacing(); }
    int interior_count() const { return n_points - 2; }

    int nearest_node(double x) const {
        int i = static_cast<int>(std::lround((x - x_min) / spacing()));
        if (i < 0) i = 0;
        if (i >= n_points) i = n_points - 1;
        return i;
    }

    std::vector<double> nodes() const {
        std::vector<double> xs(static_cast<size_t>(n_points));
        for (int i = 0; i < n_points; ++i) xs[static_cast<size_t>(i)] = node(i);
        return xs;
    }
};

inline Grid1D default_line_grid(int n = 1601) { return Grid1D(-40.0, 40.0, n, Geometry::line); }
inline Grid1D default_half_line_grid(int n = 1201) {
    return Grid1D(0.0, 60.0, n, Geometry::half_line);
}

} // namespace rglab
