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
 * Closed-form moment triple and the theorem 1-4 gradient-norm lower bounds.
 *
 * For angles drawn from U[-a pi, a pi]:
 *   alpha = E cos^2(theta) = (1 + sinc(2 a pi)) / 2
 *   beta  = E sin^2(theta) = (1 - sinc(2 a pi)) / 2
 *   gamma = E cos(theta)   = sinc(a pi)
 * so alpha + beta == 1 holds exactly by construction.
 *
 * Bounds involve powers like alpha^(2SL-1) that underflow for large L, so
 * every bound is computed in log space first; the linear value is exp() of
 * that, and both are exposed.
 *
 * Catalog (N qubits, L blocks, S-local terms, |terms| = n_terms):
 *   theorem 1 (nearest-neighbor ZZ chain, full gradient)
 *       4 (2N-3) L gamma^(8L-2) beta
 *   theorem 2 (S-local Hamiltonian, full gradient)
 *       2 n_terms (L-1) alpha^(2SL-1) beta^(S+1)
 *       optimized over a: 2 n_terms ((S+1)/(e S))^(S+1) (L-1) / (2L+1)^(S+1)
 *   theorem 3 (single-parameter variance, ZZ chain)
 *       edge qubit: f = alpha^(4L-1) beta          floor 1/(4 e L)
 *       bulk qubit: f = 2 alpha^(4L-1) beta
 *                       + 2 gamma^(4L) alpha^(2L-1) beta, floor 1/(e L)
 *   theorem 4 (single-parameter second moment, S-local)
 *       alpha^(2SL-1) beta^(S+1)
 *       optimized over a: ((S+1)/(e S))^(S+1) / (2L+1)^(S+1)
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "pqclab/errors.hpp"
#include "pqclab/numeric.hpp"

namespace pqclab {

struct MomentTriple {
    double alpha;
    double beta;
    double gamma;
};

/// Moment triple for the centered reduced domain, a in (0, 1].
inline auto moments(double a) -> MomentTriple {
    if (!(a > 0.0) || !(a <= 1.0)) {
        throw InvalidInputError("moments: half-width a must lie in (0, 1]");
    }
    // beta first, through the cancellation-free branch; alpha as the exact
    // complement so that small half-widths keep full relative precision in
    // beta, the factor the bounds are most sensitive to.
    const double beta = 0.5 * one_minus_sinc(2.0 * std::numbers::pi * a);
    return {1.0 - beta, beta, sinc(std::numbers::pi * a)};
}

enum class QubitPosition { kEdge, kBulk };

namespace detail {

inline auto logaddexp(double x, double y) -> double {
    if (std::isinf(x) && x < 0.0) {
        return y;
    }
    if (std::isinf(y) && y < 0.0) {
        return x;
    }
    const double m = std::max(x, y);
    return m + std::log1p(std::exp(std::min(x, y) - m));
}

inline auto check_theorem1_inputs(std::size_t n_qubits, std::size_t blocks)
    -> void {
    if (n_qubits < 2) {
        throw InvalidInputError("theorem 1: need at least 2 qubits");
    }
    if (blocks < 1) {
        throw InvalidInputError("theorem 1: need at least 1 block");
    }
}

} // namespace detail

/// log of the theorem-1 bound 4(2N-3) L gamma^(8L-2) beta.
inline auto log_bound_theorem1(std::size_t n_qubits, std::size_t blocks,
                               double a) -> double {
    detail::check_theorem1_inputs(n_qubits, blocks);
    const auto m = moments(a);
    const double n = static_cast<double>(n_qubits);
    const double l = static_cast<double>(blocks);
    return std::log(4.0 * (2.0 * n - 3.0) * l) +
           (8.0 * l - 2.0) * std::log(m.gamma) + std::log(m.beta);
}

inline auto bound_theorem1(std::size_t n_qubits, std::size_t blocks, double a)
    -> double {
    return std::exp(log_bound_theorem1(n_qubits, blocks, a));
}

/// log of the theorem-2 bound 2 n_terms (L-1) alpha^(2SL-1) beta^(S+1).
inline auto log_bound_theorem2(std::size_t n_terms, std::size_t locality,
                               std::size_t blocks, double a) -> double {
    if (n_terms < 1 || locality < 1 || blocks < 1) {
        throw InvalidInputError("theorem 2: need n_terms, S, L all >= 1");
    }
    const auto m = moments(a);
    const double s = static_cast<double>(locality);
    const double l = static_cast<double>(blocks);
    return std::log(2.0 * static_cast<double>(n_terms) * (l - 1.0)) +
           (2.0 * s * l - 1.0) * std::log(m.alpha) +
           (s + 1.0) * std::log(m.beta);
}

inline auto bound_theorem2(std::size_t n_terms, std::size_t locality,
                           std::size_t blocks, double a) -> double {
    return std::exp(log_bound_theorem2(n_terms, locality, blocks, a));
}

/// log of 2 n_terms ((S+1)/(eS))^(S+1) (L-1) / (2L+1)^(S+1).
inline auto log_bound_theorem2_optimized(std::size_t n_terms,
                                         std::size_t locality,
                                         std::size_t blocks) -> double {
    if (n_terms < 1 || locality < 1 || blocks < 1) {
        throw InvalidInputError("theorem 2: need n_terms, S, L all >= 1");
    }
    const double s = static_cast<double>(locality);
    const double l = static_cast<double>(blocks);
    return std::log(2.0 * static_cast<double>(n_terms) * (l - 1.0)) +
           (s + 1.0) * (std::log(s + 1.0) - 1.0 - std::log(s) -
                        std::log(2.0 * l + 1.0));
}

inline auto bound_theorem2_optimized(std::size_t n_terms, std::size_t locality,
                                     std::size_t blocks) -> double {
    return std::exp(log_bound_theorem2_optimized(n_terms, locality, blocks));
}

/// log of the theorem-3 variance factor f for an edge or bulk qubit.
inline auto log_f_theorem3(QubitPosition position, std::size_t blocks,
                           double a) -> double {
    if (blocks < 1) {
        throw InvalidInputError("theorem 3: need at least 1 block");
    }
    const auto m = moments(a);
    const double l = static_cast<double>(blocks);
    const double log_edge =
        (4.0 * l - 1.0) * std::log(m.alpha) + std::log(m.beta);
    if (position == QubitPosition::kEdge) {
        return log_edge;
    }
    const double log_cross = 4.0 * l * std::log(m.gamma) +
                             (2.0 * l - 1.0) * std::log(m.alpha) +
                             std::log(m.beta);
    return std::numbers::ln2 + detail::logaddexp(log_edge, log_cross);
}

inline auto f_theorem3(QubitPosition position, std::size_t blocks, double a)
    -> double {
    return std::exp(log_f_theorem3(position, blocks, a));
}

/// Guaranteed floor once a is chosen by the matching selection rule.
inline auto variance_floor_theorem3(QubitPosition position, std::size_t blocks)
    -> double {
    if (blocks < 1) {
        throw InvalidInputError("theorem 3: need at least 1 block");
    }
    const double l = static_cast<double>(blocks);
    const double bulk_floor = 1.0 / (std::numbers::e * l);
    return position == QubitPosition::kBulk ? bulk_floor : 0.25 * bulk_floor;
}

/// log of the theorem-4 bound alpha^(2SL-1) beta^(S+1).
inline auto log_bound_theorem4(std::size_t locality, std::size_t blocks,
                               double a) -> double {
    if (locality < 1 || blocks < 1) {
        throw InvalidInputError("theorem 4: need S >= 1 and L >= 1");
    }
    const auto m = moments(a);
    const double s = static_cast<double>(locality);
    const double l = static_cast<double>(blocks);
    return (2.0 * s * l - 1.0) * std::log(m.alpha) +
           (s + 1.0) * std::log(m.beta);
}

inline auto bound_theorem4(std::size_t locality, std::size_t blocks, double a)
    -> double {
    return std::exp(log_bound_theorem4(locality, blocks, a));
}

/// log of ((S+1)/(eS))^(S+1) / (2L+1)^(S+1).
inline auto log_bound_theorem4_optimized(std::size_t locality,
                                         std::size_t blocks) -> double {
    if (locality < 1 || blocks < 1) {
        throw InvalidInputError("theorem 4: need S >= 1 and L >= 1");
    }
    const double s = static_cast<double>(locality);
    const double l = static_cast<double>(blocks);
    return (s + 1.0) *
           (std::log(s + 1.0) - 1.0 - std::log(s) - std::log(2.0 * l + 1.0));
}

inline auto bound_theorem4_optimized(std::size_t locality, std::size_t blocks)
    -> double {
    return std::exp(log_bound_theorem4_optimized(locality, blocks));
}

/**
 * @brief Small-angle envelope of the theorem-1 bound in x = (a pi)^2.
 *
 * g(N, L, x) = 4 (2N-3) L (x/3 - x^2/15) (1 - x/6)^(8L-2). Its maximizer
 * over x is theorem1_envelope_peak and recovers the closed form behind
 * solve_a_theorem1 via a = sqrt(x)/pi.
 */
inline auto theorem1_envelope(std::size_t n_qubits, std::size_t blocks,
                              double x) -> double {
    detail::check_theorem1_inputs(n_qubits, blocks);
    const double n = static_cast<double>(n_qubits);
    const double l = static_cast<double>(blocks);
    return 4.0 * (2.0 * n - 3.0) * l * (x / 3.0 - x * x / 15.0) *
           std::pow(1.0 - x / 6.0, 8.0 * l - 2.0);
}

/// argmax over x of theorem1_envelope: (40L + 7 - sqrt(1600L^2 - 400L + 49)) / (16L).
inline auto theorem1_envelope_peak(std::size_t blocks) -> double {
    if (blocks < 1) {
        throw InvalidInputError("theorem 1: need at least 1 block");
    }
    const double l = static_cast<double>(blocks);
    const double radical = std::sqrt(1600.0 * l * l - 400.0 * l + 49.0);
    return (40.0 * l + 7.0 - radical) / (16.0 * l);
}

/**
 * @brief One evaluated bound with its inputs, ready for tabulation.
 *
 * optimized is NaN for theorems without a closed-form optimized variant
 * (theorem 1) and carries the guaranteed floor for theorem 3.
 */
struct BoundReport {
    std::string theorem; // "1", "2", "3edge", "3bulk", "4"
    std::size_t n_qubits = 0;
    std::size_t blocks = 0;
    std::size_t locality = 0;
    std::size_t n_terms = 0;
    double a = 0.0;
    double value = 0.0;
    double log_value = -std::numeric_limits<double>::infinity();
    double optimized = std::numeric_limits<double>::quiet_NaN();
};

inline auto report_theorem1(std::size_t n_qubits, std::size_t blocks, double a)
    -> BoundReport {
    BoundReport r;
    r.theorem = "1";
    r.n_qubits = n_qubits;
    r.blocks = blocks;
    r.a = a;
    r.log_value = log_bound_theorem1(n_qubits, blocks, a);
    r.value = std::exp(r.log_value);
    return r;
}

inline auto report_theorem2(std::size_t n_terms, std::size_t locality,
                            std::size_t blocks, double a) -> BoundReport {
    BoundReport r;
    r.theorem = "2";
    r.blocks = blocks;
    r.locality = locality;
    r.n_terms = n_terms;
    r.a = a;
    r.log_value = log_bound_theorem2(n_terms, locality, blocks, a);
    r.value = std::exp(r.log_value);
    r.optimized = bound_theorem2_optimized(n_terms, locality, blocks);
    return r;
}

inline auto report_theorem3(QubitPosition position, std::size_t blocks,
                            double a) -> BoundReport {
    BoundReport r;
    r.theorem = position == QubitPosition::kEdge ? "3edge" : "3bulk";
    r.blocks = blocks;
    r.a = a;
    r.log_value = log_f_theorem3(position, blocks, a);
    r.value = std::exp(r.log_value);
    r.optimized = variance_floor_theorem3(position, blocks);
    return r;
}

inline auto report_theorem4(std::size_t locality, std::size_t blocks, double a)
    -> BoundReport {
    BoundReport r;
    r.theorem = "4";
    r.blocks = blocks;
    r.locality = locality;
    r.a = a;
    r.log_value = log_bound_theorem4(locality, blocks, a);
    r.value = std::exp(r.log_value);
    r.optimized = bound_theorem4_optimized(locality, blocks);
    return r;
}

} // namespace pqclab
