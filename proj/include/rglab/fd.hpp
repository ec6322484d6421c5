#pragma once

// One-sided finite-difference estimates of time derivatives of a sampled
// observable series, with a three-scale (dt, 2dt, 4dt) convergence
// diagnostic and Richardson extrapolation at the measured order.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rglab {

struct FdEstimate {
    double value = 0;                    // Richardson-extrapolated
    std::array<double, 3> estimates{};   // at spacings dt, 2dt, 4dt
    double order_estimate = 0;
    bool converged = false;
};

namespace detail {

// Second-order one-sided stencils for f^(m)(0), m = 1..4.
inline const std::vector<double>& forward_stencil(int m) {
    static const std::vector<double> s1{-1.5, 2.0, -0.5};
    static const std::vector<double> s2{2.0, -5.0, 4.0, -1.0};
    static const std::vector<double> s3{-2.5, 9.0, -12.0, 7.0, -1.5};
    static const std::vector<double> s4{3.0, -14.0, 26.0, -24.0, 11.0, -2.0};
    switch (m) {
        case 1: return s1;
        case 2: return s2;
        case 3: return s3;
        case 4: return s4;
    }
    throw std::invalid_argument("forward_stencil: m must be in 1..4");
}

} // namespace detail

/// f^(m)(0) from a uniformly sampled series f(i*dt). Needs enough points
/// for the coarsest (4*dt) stencil: 4*(m+1)+1 samples.
inline FdEstimate fd_time_derivative(const std::vector<double>& series, int m, double dt) {
    const auto& stencil = detail::forward_stencil(m);
    const size_t need = 4 * (stencil.size() - 1) + 1;
    if (series.size() < need)
        throw std::invalid_argument("fd_time_derivative: series too short for the 4dt stencil");
    if (!(dt > 0)) throw std::invalid_argument("fd_time_derivative: dt must be positive");

    FdEstimate out;
    const std::array<int, 3> strides{1, 2, 4};
    double abs_sum = 0, series_scale = 0;
    for (double c : stencil) abs_sum += std::abs(c);
    for (size_t s = 0; s < strides.size(); ++s) {
        const double step = strides[s] * dt;
        double acc = 0;
        for (size_t j = 0; j < stencil.size(); ++j) {
            const double v = series[j * static_cast<size_t>(strides[s])];
            acc += stencil[j] * v;
            series_scale = std::max(series_scale, std::abs(v));
        }
        out.estimates[s] = acc / std::pow(step, m);
    }

    const double d1 = std::abs(out.estimates[0] - out.estimates[1]);
    const double d2 = std::abs(out.estimates[1] - out.estimates[2]);
    const double scale =
        std::max({std::abs(out.estimates[0]), std::abs(out.estimates[1]), std::abs(out.estimates[2]), 1e-300});
    // rounding floor of the stride-1 stencil evaluation
    const double noise = 1e-15 * abs_sum * series_scale / std::pow(dt, m);

    if ((d1 <= 1e-12 * scale && d2 <= 1e-12 * scale) || scale <= 100 * noise) {
        // estimates agree to rounding, or sit below the cancellation floor
        out.value = out.estimates[0];
        out.order_estimate = 8.0;
        out.converged = true;
        return out;
    }
    out.order_estimate = (d1 > 0 && d2 > 0) ? std::log2(d2 / d1) : 8.0;
    const double p = std::min(std::max(out.order_estimate, 0.5), 6.0);
    out.value = out.estimates[0] + (out.estimates[0] - out.estimates[1]) / (std::pow(2.0, p) - 1.0);
    out.converged = (out.order_estimate >= 0.8) && (d1 < d2);
    return out;
}

/// log2 ratio sequence of successive errors; refinement-order estimates.
inline std::vector<double> refinement_orders(const std::vector<double>& errors) {
    std::vector<double> orders;
    for (size_t i = 0; i + 1 < errors.size(); ++i) {
        if (errors[i + 1] == 0) {
            orders.push_back(8.0);
            continue;
        }
        orders.push_back(std::log2(errors[i] / errors[i + 1]));
    }
    return orders;
}

} // namespace rglab
