#pragma once

// Product Gauss-Legendre x uniform-azimuth quadrature on the unit sphere.
// n_theta Legendre nodes in cos(theta) and n_phi equispaced azimuths give
// exactness degree min(2 n_theta - 1, n_phi - 1) for spherical polynomials.

#include "rglab/quadrature.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rglab {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

struct SphereQuadrature {
    std::vector<Vec3> nodes;     // unit vectors
    std::vector<double> weights; // sum to 4 pi
    int degree = 0;

    static SphereQuadrature product_rule(int n_theta = 8, int n_phi = 16) {
        if (n_theta < 1 || n_phi < 1)
            throw std::invalid_argument("SphereQuadrature: empty rule");
        SphereQuadrature q;
        q.degree = std::min(2 * n_theta - 1, n_phi - 1);
        const auto& gl = gauss_legendre(n_theta);
        const double wphi = 2.0 * M_PI / n_phi;
        for (int i = 0; i < n_theta; ++i) {
            const double c = gl.nodes[static_cast<size_t>(i)];
            const double s = std::sqrt(1.0 - c * c);
            for (int j = 0; j < n_phi; ++j) {
                const double phi = wphi * j;
                q.nodes.push_back(Vec3{s * std::cos(phi), s * std::sin(phi), c});
                q.weights.push_back(gl.weights[static_cast<size_t>(i)] * wphi);
            }
        }
        return q;
    }
};

/// (1/4pi) integral of omega_i omega_j over the rule; the exact value is
/// delta_ij / 3.
inline Mat3 sphere_second_moment(const SphereQuadrature& quad) {
    if (quad.degree < 2) throw std::invalid_argument("sphere_second_moment: rule degree < 2");
    Mat3 m{};
    for (size_t n = 0; n < quad.nodes.size(); ++n)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] += quad.weights[n] * quad.nodes[n][i] * quad.nodes[n][j];
    for (auto& row : m)
        for (double& v : row) v /= 4.0 * M_PI;
    return m;
}

/// (1/4pi) integral of omega_axis^4; exactly 1/5 for any degree >= 4 rule.
inline double sphere_fourth_moment(const SphereQuadrature& quad, int axis) {
    double s = 0;
    for (size_t n = 0; n < quad.nodes.size(); ++n) {
        const double w = quad.nodes[n][static_cast<size_t>(axis)];
        s += quad.weights[n] * w * w * w * w;
    }
    return s / (4.0 * M_PI);
}

} // namespace rglab
