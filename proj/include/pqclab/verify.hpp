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
 * Numerical verification of the moment identities the bounds rest on.
 *
 * Everything here checks algebra by independent quadrature, never by reusing
 * the closed forms under test. With V(theta) = exp(-i theta G / 2), G a
 * Hermitian unitary, W = V A V^dag, and theta ~ U[-a pi, a pi]:
 *
 *   anti-commuting O ({O, G} = 0):
 *     E Tr[O W]            = gamma Tr[O A]
 *     E d/dtheta Tr[O W]   = gamma Tr[i G O A]
 *     E Tr[O1 W] Tr[O2 W]  = alpha Tr[O1 A] Tr[O2 A]
 *                            + beta Tr[i G O1 A] Tr[i G O2 A]
 *     (derivative product swaps alpha and beta)
 *   commuting Ot ([Ot, G] = 0):
 *     E Tr[Ot W] = Tr[Ot A], derivative averages vanish, and mixed products
 *     factor with a single gamma.
 *
 * A companion check validates the controlled-Z conjugation table used by the
 * Pauli backpropagation against dense 4x4 matrix algebra, with an optional
 * injected fault to prove the harness can detect table corruption.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

#include "pqclab/bounds.hpp"
#include "pqclab/errors.hpp"
#include "pqclab/numeric.hpp"
#include "pqclab/pauli.hpp"
#include "pqclab/rng.hpp"

namespace pqclab {

/// Raw moments of U[-a pi, a pi] obtained by adaptive quadrature.
struct LemmaMoments {
    double e_cos;
    double e_sin;
    double e_cos2;
    double e_sin2;
    double e_sincos;
};

/// Quadrature expectation over U[-a pi, a pi]; independent of moments().
inline auto lemma_moment_oracle(double a) -> LemmaMoments {
    if (!(a > 0.0) || !(a <= 1.0)) {
        throw InvalidInputError("lemma_moment_oracle: a must lie in (0, 1]");
    }
    const double half = a * std::numbers::pi;
    const auto mean = [half](auto f) {
        return integrate(f, -half, half, 1e-14) / (2.0 * half);
    };
    return {mean([](double t) { return std::cos(t); }),
            mean([](double t) { return std::sin(t); }),
            mean([](double t) { return std::cos(t) * std::cos(t); }),
            mean([](double t) { return std::sin(t) * std::sin(t); }),
            mean([](double t) { return std::sin(t) * std::cos(t); })};
}

/// One randomized 2-qubit instance for the lemma checks.
struct LemmaTrial {
    Eigen::Matrix4cd g;   // Hermitian unitary generator
    Eigen::Matrix4cd o1;  // anti-commutes with g
    Eigen::Matrix4cd o2;  // anti-commutes with g
    Eigen::Matrix4cd oc1; // commutes with g
    Eigen::Matrix4cd oc2; // commutes with g
    Eigen::Matrix4cd a;   // arbitrary linear operator
};

namespace detail {

inline auto pauli_matrix(int code) -> Eigen::Matrix2cd {
    const std::complex<double> i{0.0, 1.0};
    Eigen::Matrix2cd m;
    switch (code) {
    case PauliString::kX:
        m << 0, 1, 1, 0;
        break;
    case PauliString::kY:
        m << 0, -i, i, 0;
        break;
    case PauliString::kZ:
        m << 1, 0, 0, -1;
        break;
    default:
        m.setIdentity();
        break;
    }
    return m;
}

/// code0 acts on qubit 0 (the low index bit), code1 on qubit 1.
inline auto pauli_kron(int code0, int code1) -> Eigen::Matrix4cd {
    const Eigen::Matrix2cd m0 = pauli_matrix(code0);
    const Eigen::Matrix2cd m1 = pauli_matrix(code1);
    Eigen::Matrix4cd out;
    for (int r1 = 0; r1 < 2; ++r1) {
        for (int r0 = 0; r0 < 2; ++r0) {
            for (int c1 = 0; c1 < 2; ++c1) {
                for (int c0 = 0; c0 < 2; ++c0) {
                    out(2 * r1 + r0, 2 * c1 + c0) = m1(r1, c1) * m0(r0, c0);
                }
            }
        }
    }
    return out;
}

inline auto anticommutator_norm(const Eigen::Matrix4cd &x,
                                const Eigen::Matrix4cd &y) -> double {
    return (x * y + y * x).norm();
}

inline auto commutator_norm(const Eigen::Matrix4cd &x, const Eigen::Matrix4cd &y)
    -> double {
    return (x * y - y * x).norm();
}

} // namespace detail

/**
 * @brief Random trial: G a single-qubit Pauli embedded in 2 qubits, the
 * observables real-weighted sums over the Pauli basis elements that
 * (anti)commute with it, and A filled with standard complex Gaussians.
 */
inline auto make_lemma_trial(SeededRng &rng) -> LemmaTrial {
    const int g_qubit = static_cast<int>(rng.next_u64() % 2);
    const int g_code = 1 + static_cast<int>(rng.next_u64() % 3);

    LemmaTrial trial;
    trial.g = g_qubit == 0 ? detail::pauli_kron(g_code, 0)
                           : detail::pauli_kron(0, g_code);

    // Pauli tensor sigma_c0 x sigma_c1 anti-commutes with the embedded G
    // exactly when the factor on G's qubit is a different non-identity Pauli.
    const auto fill = [&](bool want_anti) {
        Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
        for (int c0 = 0; c0 < 4; ++c0) {
            for (int c1 = 0; c1 < 4; ++c1) {
                const int on_g = g_qubit == 0 ? c0 : c1;
                const bool anti = on_g != 0 && on_g != g_code;
                if (anti != want_anti) {
                    continue;
                }
                sum += rng.next_gaussian() * detail::pauli_kron(c0, c1);
            }
        }
        return sum;
    };
    trial.o1 = fill(true);
    trial.o2 = fill(true);
    trial.oc1 = fill(false);
    trial.oc2 = fill(false);

    constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const double re = rng.next_gaussian();
            const double im = rng.next_gaussian();
            trial.a(r, c) = std::complex<double>{re, im} * kInvSqrt2;
        }
    }
    return trial;
}

namespace detail {

inline auto check_trial(const LemmaTrial &trial) -> void {
    constexpr double kTol = 1e-10;
    if ((trial.g - trial.g.adjoint()).norm() > kTol ||
        (trial.g * trial.g - Eigen::Matrix4cd::Identity()).norm() > kTol) {
        throw InvalidTrialError("lemma trial: G must be a Hermitian unitary");
    }
    if (anticommutator_norm(trial.o1, trial.g) > kTol ||
        anticommutator_norm(trial.o2, trial.g) > kTol) {
        throw InvalidTrialError(
            "lemma trial: O operators must anti-commute with G");
    }
    if (commutator_norm(trial.oc1, trial.g) > kTol ||
        commutator_norm(trial.oc2, trial.g) > kTol) {
        throw InvalidTrialError("lemma trial: Ot operators must commute with G");
    }
}

/// Quadrature E over U[-a pi, a pi] of a complex-valued integrand of theta.
template <typename F>
auto lemma_mean(double a, F f) -> std::complex<double> {
    const double half = a * std::numbers::pi;
    return integrate(f, -half, half, 1e-13) / (2.0 * half);
}

inline auto v_of(double theta, const Eigen::Matrix4cd &g) -> Eigen::Matrix4cd {
    return std::cos(0.5 * theta) * Eigen::Matrix4cd::Identity() -
           std::complex<double>{0.0, 1.0} * std::sin(0.5 * theta) * g;
}

struct ConjPair {
    Eigen::Matrix4cd w;    // V A V^dag
    Eigen::Matrix4cd wdot; // d/dtheta of V A V^dag
};

inline auto conj_pair(double theta, const LemmaTrial &trial) -> ConjPair {
    const Eigen::Matrix4cd v = v_of(theta, trial.g);
    const Eigen::Matrix4cd w = v * trial.a * v.adjoint();
    const std::complex<double> half_i{0.0, 0.5};
    return {w, -half_i * (trial.g * w) + half_i * (w * trial.g)};
}

} // namespace detail

/**
 * @brief Max residual of the four first-power identities on one trial.
 *
 * Left sides come from quadrature, right sides from the closed forms; the
 * identities are listed in the file header.
 */
inline auto lemma1_check(double a, const LemmaTrial &trial) -> double {
    detail::check_trial(trial);
    const auto m = moments(a);
    const std::complex<double> i{0.0, 1.0};

    const auto mean_tr =
        [&](const Eigen::Matrix4cd &obs, bool derivative) {
            return detail::lemma_mean(a, [&](double theta) {
                const auto pair = detail::conj_pair(theta, trial);
                return (obs * (derivative ? pair.wdot : pair.w)).trace();
            });
        };

    const std::complex<double> tr_oa = (trial.o1 * trial.a).trace();
    const std::complex<double> tr_igoa =
        (i * trial.g * trial.o1 * trial.a).trace();
    const std::complex<double> tr_ota = (trial.oc1 * trial.a).trace();

    double residual = 0.0;
    const auto track = [&residual](std::complex<double> lhs,
                                   std::complex<double> rhs) {
        residual = std::max(residual, std::abs(lhs - rhs));
    };
    track(mean_tr(trial.o1, false), m.gamma * tr_oa);
    track(mean_tr(trial.o1, true), m.gamma * tr_igoa);
    track(mean_tr(trial.oc1, false), tr_ota);
    track(mean_tr(trial.oc1, true), 0.0);
    return residual;
}

/**
 * @brief Max residual of the second-power identities and both corollaries.
 *
 * Covers the anti/anti product (alpha/beta mix and its derivative form with
 * the roles swapped), the squared single-observable specialization, and the
 * mixed and commuting/commuting products.
 */
inline auto lemma2_check(double a, const LemmaTrial &trial) -> double {
    detail::check_trial(trial);
    const auto m = moments(a);
    const std::complex<double> i{0.0, 1.0};

    const auto mean_prod = [&](const Eigen::Matrix4cd &obs1,
                               const Eigen::Matrix4cd &obs2, bool derivative) {
        return detail::lemma_mean(a, [&](double theta) {
            const auto pair = detail::conj_pair(theta, trial);
            const Eigen::Matrix4cd &op = derivative ? pair.wdot : pair.w;
            return (obs1 * op).trace() * (obs2 * op).trace();
        });
    };

    const auto tr_a = [&](const Eigen::Matrix4cd &obs) {
        return (obs * trial.a).trace();
    };
    const auto tr_ga = [&](const Eigen::Matrix4cd &obs) {
        return (i * trial.g * obs * trial.a).trace();
    };

    double residual = 0.0;
    const auto track = [&residual](std::complex<double> lhs,
                                   std::complex<double> rhs) {
        residual = std::max(residual, std::abs(lhs - rhs));
    };

    // Anti/anti pair and its derivative form (alpha and beta trade places).
    track(mean_prod(trial.o1, trial.o2, false),
          m.alpha * tr_a(trial.o1) * tr_a(trial.o2) +
              m.beta * tr_ga(trial.o1) * tr_ga(trial.o2));
    track(mean_prod(trial.o1, trial.o2, true),
          m.beta * tr_a(trial.o1) * tr_a(trial.o2) +
              m.alpha * tr_ga(trial.o1) * tr_ga(trial.o2));

    // Squared single observable.
    track(mean_prod(trial.o1, trial.o1, false),
          m.alpha * tr_a(trial.o1) * tr_a(trial.o1) +
              m.beta * tr_ga(trial.o1) * tr_ga(trial.o1));
    track(mean_prod(trial.o1, trial.o1, true),
          m.beta * tr_a(trial.o1) * tr_a(trial.o1) +
              m.alpha * tr_ga(trial.o1) * tr_ga(trial.o1));

    // Mixed anti/commuting products.
    track(mean_prod(trial.o1, trial.oc1, false),
          m.gamma * tr_a(trial.o1) * tr_a(trial.oc1));
    track(mean_prod(trial.o1, trial.oc1, true), 0.0);

    // Commuting/commuting products.
    track(mean_prod(trial.oc1, trial.oc2, false),
          tr_a(trial.oc1) * tr_a(trial.oc2));
    track(mean_prod(trial.oc1, trial.oc2, true), 0.0);
    return residual;
}

/**
 * @brief Max residual of the 16-entry controlled-Z conjugation table against
 * dense matrix algebra (CZ is self-inverse, so conjugation is direction-free).
 *
 * inject_fault flips the sign of one table entry to demonstrate the check
 * actually detects corruption; the residual then jumps to order 1.
 */
inline auto cz_table_residual(bool inject_fault = false) -> double {
    Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
    cz(3, 3) = -1.0;

    double residual = 0.0;
    for (int c0 = 0; c0 < 4; ++c0) {
        for (int c1 = 0; c1 < 4; ++c1) {
            const int idx = 4 * c0 + c1;
            const Eigen::Matrix4cd dense =
                cz * detail::pauli_kron(c0, c1) * cz;
            double sign = detail::kCzSign[static_cast<std::size_t>(idx)];
            if (inject_fault && c0 == PauliString::kX && c1 == PauliString::kY) {
                sign = -sign;
            }
            const Eigen::Matrix4cd tabulated =
                sign *
                detail::pauli_kron(detail::kCzCodeA[static_cast<std::size_t>(idx)],
                                   detail::kCzCodeB[static_cast<std::size_t>(idx)]);
            residual = std::max(residual, (dense - tabulated).norm() /
                                              dense.norm());
        }
    }
    return residual;
}

/// Joint residual summary used by the verification command.
struct VerifyReport {
    double moment_residual; // quadrature moments vs the closed-form triple
    double lemma1_residual; // max over trials and a values
    double lemma2_residual;
    double cz_residual;

    [[nodiscard]] auto max_residual() const -> double {
        return std::max({moment_residual, lemma1_residual, lemma2_residual,
                         cz_residual});
    }
};

/**
 * @brief Full verification sweep: moment quadrature at a dense a grid, lemma
 * and corollary trials at a in {0.1, 0.5, 1.0}, and the CZ table check.
 *
 * Trials draw from per-index streams of the given seed, so the sweep is
 * reproducible and trivially parallel.
 */
inline auto run_verification(std::size_t n_trials, std::uint64_t seed,
                             bool inject_cz_fault = false) -> VerifyReport {
    VerifyReport report{0.0, 0.0, 0.0, 0.0};

    for (double a : {0.1, 0.25, 0.5, 0.75, 1.0}) {
        const auto sampled = lemma_moment_oracle(a);
        const auto closed = moments(a);
        const double worst = std::max(
            {std::abs(sampled.e_cos - closed.gamma), std::abs(sampled.e_sin),
             std::abs(sampled.e_cos2 - closed.alpha),
             std::abs(sampled.e_sin2 - closed.beta),
             std::abs(sampled.e_sincos)});
        report.moment_residual = std::max(report.moment_residual, worst);
    }

    for (std::size_t t = 0; t < n_trials; ++t) {
        SeededRng rng(seed, t);
        const LemmaTrial trial = make_lemma_trial(rng);
        for (double a : {0.1, 0.5, 1.0}) {
            report.lemma1_residual =
                std::max(report.lemma1_residual, lemma1_check(a, trial));
            report.lemma2_residual =
                std::max(report.lemma2_residual, lemma2_check(a, trial));
        }
    }

    report.cz_residual = cz_table_residual(inject_cz_fault);
    return report;
}

} // namespace pqclab
