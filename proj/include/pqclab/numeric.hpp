// Copyright 2026 The pqclab Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Small numerical kernels used across the library: a guarded sinc, a
 * deterministic pairwise summation, and adaptive Gauss-Legendre quadrature.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "pqclab/errors.hpp"

namespace pqclab {

/// sin(x)/x with a series fallback near zero so sinc(0) = 1 exactly.
inline auto sinc(double x) -> double {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        // sin(x)/x = 1 - x^2/6 + x^4/120, truncation below 1e-25 here
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

/**
 * @brief 1 - sinc(x), evaluated without cancellation.
 *
 * The direct difference loses roughly log10(6/x^2) digits for small x, which
 * matters because the beta moment is exactly half this quantity and enters
 * the bounds multiplicatively. The series u/6 - u^2/120 + u^3/5040 in u = x^2
 * truncates below full precision for |x| < 0.01.
 */
inline auto one_minus_sinc(double x) -> double {
    if (std::abs(x) < 1e-2) {
        const double u = x * x;
        return u / 6.0 * (1.0 - u / 20.0 * (1.0 - u / 42.0));
    }
    return 1.0 - sinc(x);
}

/**
 * @brief Sum a span in a fixed cascaded order.
 *
 * The reduction tree depends only on the length of the input, never on how
 * the values were produced, so results are machine-deterministic regardless
 * of how many workers filled the buffer.
 */
inline auto pairwise_sum(std::span<const double> values) -> double {
    if (values.size() <= 8) {
        double acc = 0.0;
        for (double v : values) {
            acc += v;
        }
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace detail {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendreRule(std::size_t n) : nodes(n), weights(n) {
        // Newton iteration on P_n with the cosine initial guess; converges in
        // a handful of steps to full double precision.
        for (std::size_t k = 0; k < n; ++k) {
            double x = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.75) /
                                (static_cast<double>(n) + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 64; ++iter) {
                double p0 = 1.0;
                double p1 = x;
                for (std::size_t j = 2; j <= n; ++j) {
                    const double pj = ((2.0 * static_cast<double>(j) - 1.0) * x * p1 -
                                       (static_cast<double>(j) - 1.0) * p0) /
                                      static_cast<double>(j);
                    p0 = p1;
                    p1 = pj;
                }
                dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) {
                    break;
                }
            }
            nodes[k] = x;
            weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline auto gl20() -> const GaussLegendreRule & {
    static const GaussLegendreRule rule(20);
    return rule;
}

template <typename F, typename T>
auto gl_panel(F &&f, double lo, double hi) -> T {
    const auto &rule = gl20();
    const double mid = 0.5 * (lo + hi);
    const double halfwidth = 0.5 * (hi - lo);
    T acc{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        acc += rule.weights[k] * f(mid + halfwidth * rule.nodes[k]);
    }
    return acc * halfwidth;
}

template <typename F, typename T>
auto integrate_rec(F &&f, double lo, double hi, double tol, T whole, int depth) -> T {
    if (depth > 48) {
        throw Error("quadrature failed to converge to the requested tolerance");
    }
    const double mid = 0.5 * (lo + hi);
    const T left = gl_panel<F, T>(std::forward<F>(f), lo, mid);
    const T right = gl_panel<F, T>(std::forward<F>(f), mid, hi);
    // Roundoff floor: once the panel disagreement is at the noise level of
    // the summation itself, further subdivision cannot help.
    const double noise = 32.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(left) + std::abs(right) + std::abs(whole));
    if (std::abs(left + right - whole) <= std::max(tol, noise)) {
        return left + right;
    }
    return integrate_rec(std::forward<F>(f), lo, mid, 0.5 * tol, left, depth + 1) +
           integrate_rec(std::forward<F>(f), mid, hi, 0.5 * tol, right, depth + 1);
}

} // namespace detail

/**
 * @brief Adaptive Gauss-Legendre integral of f over [lo, hi].
 *
 * @tparam T double or std::complex<double>, deduced from the integrand.
 * Panels are subdivided until the 20-point estimate is stable to @p abs_tol.
 * The integrands used here (trigonometric polynomials times matrix traces)
 * are entire, so convergence is immediate in practice.
 */
template <typename F, typename T = std::invoke_result_t<F, double>>
auto integrate(F &&f, double lo, double hi, double abs_tol = 1e-13) -> T {
    if (!(lo < hi)) {
        throw InvalidInputError("integrate: empty or inverted interval");
    }
    const T whole = detail::gl_panel<F, T>(std::forward<F>(f), lo, hi);
    return detail::integrate_rec(std::forward<F>(f), lo, hi, abs_tol, whole, 0);
}

} // namespace pqclab
