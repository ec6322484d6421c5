#pragma once

// Gauss-Legendre nodes (Newton on the Legendre recurrence) and panel
// integration helpers shared by the sphere rule, the Hardy-chain
// quadrature and the test oracles.

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace rglab {

struct GaussLegendre {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights; // sum to 2
};

inline const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");

    GaussLegendre rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, Newton on P_n
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[static_cast<size_t>(i)] = x;
        rule.weights[static_cast<size_t>(i)] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

/// Integral over [a, b] with an n-point rule.
inline double gl_integrate(double a, double b, int n, const std::function<double(double)>& f) {
    const auto& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return s * half;
}

/// Integral over [a, b] split into npanels equal panels.
inline double gl_integrate_panels(double a, double b, int npanels, int n,
                                  const std::function<double(double)>& f) {
    double s = 0;
    const double w = (b - a) / npanels;
    for (int p = 0; p < npanels; ++p) s += gl_integrate(a + p * w, a + (p + 1) * w, n, f);
    return s;
}

} // namespace rglab
