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
 * Training loops and their oracles.
 *
 * VQE: RMSProp over adjoint gradients with a linear learning-rate schedule
 * (0.01 down to 0.005 by default), tracking cost minus the true ground
 * energy per iteration.
 *
 * Ground energy comes from two independent routes so each can check the
 * other: an exact computational-basis scan for Z-diagonal Hamiltonians plus
 * a dense Hermitian eigensolve otherwise, and a matrix-free Lanczos with
 * full reorthogonalization whose tridiagonal eigenvalue is isolated by Sturm
 * bisection.
 *
 * QNN: the closed-form p-parameter loss
 *   L(theta) = (1/2p) sum_l [ (sin 2theta_l - sin(pi/50))^2
 *                             + (1/4)(cos 2theta_l - cos(pi/50))^2 ],
 * minimized at theta_l = pi/100 (mod pi) with loss 0, plus a grid-and-descent
 * oracle that enumerates the 2^p local minima per period for small p.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pqclab/ansatz.hpp"
#include "pqclab/errors.hpp"
#include "pqclab/init.hpp"
#include "pqclab/pauli.hpp"
#include "pqclab/rng.hpp"
#include "pqclab/statevector.hpp"

namespace pqclab {

struct RmspropOptions {
    double lr0 = 0.01;
    double lr1 = 0.005;
    double smoothing = 0.999;
    double epsilon = 1e-8;
};

struct RmspropState {
    std::vector<double> mean_square;
    double smoothing = 0.999;
    double epsilon = 1e-8;
    std::size_t step_count = 0;
};

inline auto make_rmsprop_state(std::size_t dim, double smoothing,
                               double epsilon) -> RmspropState {
    if (!(smoothing > 0.0) || !(smoothing < 1.0) || !(epsilon > 0.0)) {
        throw InvalidInputError(
            "rmsprop: smoothing must lie in (0,1) and epsilon must be positive");
    }
    return {std::vector<double>(dim, 0.0), smoothing, epsilon, 0};
}

/// acc <- s*acc + (1-s)*g^2; params <- params - lr*g/(sqrt(acc) + eps).
inline auto rmsprop_step(RmspropState &state, ParamVector &params,
                         std::span<const double> grad, double lr) -> void {
    if (params.size() != state.mean_square.size() ||
        grad.size() != state.mean_square.size()) {
        throw InvalidInputError("rmsprop_step: dimension mismatch");
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.mean_square[i] = state.smoothing * state.mean_square[i] +
                               (1.0 - state.smoothing) * grad[i] * grad[i];
        params[i] -= lr * grad[i] /
                     (std::sqrt(state.mean_square[i]) + state.epsilon);
    }
    ++state.step_count;
}

/// Linear ramp from lr0 at iter 0 to lr1 at the last iteration.
inline auto lr_schedule_linear(std::size_t iter, std::size_t total_iters,
                               double lr0 = 0.01, double lr1 = 0.005)
    -> double {
    if (total_iters == 0 || iter >= total_iters) {
        throw InvalidInputError("lr_schedule_linear: need 0 <= iter < total");
    }
    if (total_iters == 1) {
        return lr0;
    }
    return lr0 + (lr1 - lr0) * static_cast<double>(iter) /
                     static_cast<double>(total_iters - 1);
}

/// Dense diagonalization past this many qubits is refused.
inline constexpr std::size_t kDenseEigenCap = 12;

/// Lanczos workspace past this many qubits is refused.
inline constexpr std::size_t kIterativeEigenCap = 16;

namespace detail {

/// Exact ground energy of a Z-diagonal Hamiltonian by basis scan.
inline auto ground_energy_diagonal(const Hamiltonian &hamiltonian) -> double {
    struct TermMask {
        std::uint32_t parity;
        double coeff;
    };
    std::vector<TermMask> masks;
    masks.reserve(hamiltonian.size());
    for (const auto &term : hamiltonian.terms()) {
        const auto m = make_masks(term.string);
        masks.push_back({m.parity, term.coefficient * m.sign});
    }
    const std::size_t dim = std::size_t{1} << hamiltonian.n_qubits();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dim; ++k) {
        double e = 0.0;
        for (const auto &tm : masks) {
            const bool odd =
                (std::popcount(static_cast<std::uint32_t>(k) & tm.parity) & 1) !=
                0;
            e += odd ? -tm.coeff : tm.coeff;
        }
        best = std::min(best, e);
    }
    return best;
}

inline auto dense_matrix(const Hamiltonian &hamiltonian) -> Eigen::MatrixXcd {
    const std::size_t dim = std::size_t{1} << hamiltonian.n_qubits();
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                  static_cast<Eigen::Index>(dim));
    for (const auto &term : hamiltonian.terms()) {
        const auto m = make_masks(term.string);
        const auto scale = term.coefficient * global_phase(m);
        for (std::size_t k = 0; k < dim; ++k) {
            const double par =
                (std::popcount(static_cast<std::uint32_t>(k) & m.parity) & 1)
                    ? -1.0
                    : 1.0;
            mat(static_cast<Eigen::Index>(k ^ m.flip),
                static_cast<Eigen::Index>(k)) += scale * par;
        }
    }
    return mat;
}

/// Eigenvalues of a real symmetric tridiagonal below x, by Sturm counting.
inline auto sturm_count_below(std::span<const double> diag,
                              std::span<const double> off, double x)
    -> std::size_t {
    std::size_t count = 0;
    double d = diag[0] - x;
    if (d < 0.0) {
        ++count;
    }
    for (std::size_t j = 1; j < diag.size(); ++j) {
        const double b = off[j - 1];
        if (d == 0.0) {
            d = 1e-300; // graze: nudge off the pole, standard Sturm practice
        }
        d = diag[j] - x - b * b / d;
        if (d < 0.0) {
            ++count;
        }
    }
    return count;
}

/// Smallest eigenvalue of the tridiagonal (diag, off) by Sturm bisection.
inline auto tridiagonal_min_eigenvalue(std::span<const double> diag,
                                       std::span<const double> off) -> double {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t j = 0; j < diag.size(); ++j) {
        const double left = j > 0 ? std::abs(off[j - 1]) : 0.0;
        const double right = j + 1 < diag.size() ? std::abs(off[j]) : 0.0;
        lo = std::min(lo, diag[j] - left - right);
        hi = std::max(hi, diag[j] + left + right);
    }
    const double tol =
        1e-14 * std::max({1.0, std::abs(lo), std::abs(hi)});
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (sturm_count_below(diag, off, mid) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/**
 * @brief Least eigenvalue: basis scan when Z-diagonal, else dense eigensolve.
 *
 * The dense route is capped at kDenseEigenCap qubits; the Z-diagonal scan
 * only needs the statevector cap.
 */
inline auto ground_energy(const Hamiltonian &hamiltonian) -> double {
    bool diagonal = true;
    for (const auto &term : hamiltonian.terms()) {
        diagonal = diagonal && term.string.is_z_diagonal();
    }
    if (diagonal) {
        if (hamiltonian.n_qubits() > StateVector::kMaxQubits) {
            throw ResourceError("ground_energy: qubit count exceeds the "
                                "statevector cap");
        }
        return detail::ground_energy_diagonal(hamiltonian);
    }
    if (hamiltonian.n_qubits() > kDenseEigenCap) {
        throw ResourceError(
            "ground_energy: dense diagonalization capped at 12 qubits");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        detail::dense_matrix(hamiltonian), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

/**
 * @brief Least eigenvalue by matrix-free Lanczos, independent of
 * ground_energy.
 *
 * Full reorthogonalization keeps the Krylov basis numerically orthonormal;
 * the tridiagonal restriction is then solved by Sturm bisection rather than
 * any library eigensolver, so the two ground-energy routes share no code.
 */
inline auto ground_energy_iterative(const Hamiltonian &hamiltonian,
                                    std::uint64_t seed = 0x1db7,
                                    std::size_t max_rank = 200) -> double {
    if (hamiltonian.n_qubits() > kIterativeEigenCap) {
        throw ResourceError(
            "ground_energy_iterative: Lanczos capped at 16 qubits");
    }
    const std::size_t dim = std::size_t{1} << hamiltonian.n_qubits();
    const std::size_t rank = std::min(dim, max_rank);

    using Vec = std::vector<std::complex<double>>;
    SeededRng rng(seed, 0);
    Vec v(dim);
    double norm = 0.0;
    for (auto &x : v) {
        x = {rng.next_gaussian(), rng.next_gaussian()};
        norm += std::norm(x);
    }
    norm = std::sqrt(norm);
    for (auto &x : v) {
        x /= norm;
    }

    std::vector<Vec> basis;
    basis.reserve(rank);
    std::vector<double> diag;
    std::vector<double> off;
    Vec w(dim);

    for (std::size_t j = 0; j < rank; ++j) {
        basis.push_back(v);
        apply_hamiltonian(w, basis[j], hamiltonian);

        std::complex<double> alpha{0.0, 0.0};
        for (std::size_t k = 0; k < dim; ++k) {
            alpha += std::conj(basis[j][k]) * w[k];
        }
        diag.push_back(alpha.real());

        // Remove components along every stored basis vector, twice, which is
        // classical Gram-Schmidt with reorthogonalization.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &u : basis) {
                std::complex<double> overlap{0.0, 0.0};
                for (std::size_t k = 0; k < dim; ++k) {
                    overlap += std::conj(u[k]) * w[k];
                }
                for (std::size_t k = 0; k < dim; ++k) {
                    w[k] -= overlap * u[k];
                }
            }
        }

        double beta = 0.0;
        for (const auto &x : w) {
            beta += std::norm(x);
        }
        beta = std::sqrt(beta);
        if (j + 1 == rank || beta < 1e-13) {
            break;
        }
        off.push_back(beta);
        for (std::size_t k = 0; k < dim; ++k) {
            v[k] = w[k] / beta;
        }
    }
    return detail::tridiagonal_min_eigenvalue(diag, off);
}

/// One row of a training trace.
struct TraceRecord {
    std::size_t iteration;
    double cost;
    double relative_cost; // cost minus the global minimum
    double grad_norm_sq;
};

/// Full history of one training run.
struct TrainTrace {
    TrainTrace(InitSpec init_spec, std::uint64_t rng_seed)
        : init(std::move(init_spec)), seed(rng_seed) {}

    std::vector<TraceRecord> records;
    InitSpec init;
    std::uint64_t seed;
    bool converged = false;
    double ground = 0.0; // the global minimum the relative cost is against
};

/// A VQE run counts as converged below this relative cost.
inline constexpr double kVqeConvergedTol = 1e-2;

/// A QNN run counts as converged below this loss (the spurious minima of the
/// single-parameter landscape sit near 0.5, far above it).
inline constexpr double kQnnConvergedTol = 1e-4;

/**
 * @brief RMSProp training of the circuit against the Hamiltonian.
 *
 * Produces iters + 1 records; record i holds the state after i optimizer
 * steps, so iters = 0 yields exactly the initial cost. The ground energy can
 * be passed in to avoid recomputing it across rounds.
 */
inline auto train_vqe(const AnsatzSpec &spec, const Hamiltonian &hamiltonian,
                      const InitSpec &init, std::size_t iters,
                      const RmspropOptions &opts, std::uint64_t seed,
                      std::uint64_t stream = 0,
                      std::optional<double> ground = std::nullopt)
    -> TrainTrace {
    SeededRng rng(seed, stream);
    ParamVector params = sample_params(spec, init, rng);
    const double e0 = ground ? *ground : ground_energy(hamiltonian);

    TrainTrace trace(init, seed);
    trace.ground = e0;
    trace.records.reserve(iters + 1);
    RmspropState state =
        make_rmsprop_state(spec.param_count(), opts.smoothing, opts.epsilon);

    for (std::size_t iter = 0;; ++iter) {
        const auto grad = adjoint_gradient(spec, params, hamiltonian);
        double grad_sq = 0.0;
        for (double g : grad) {
            grad_sq += g * g;
        }
        const double c = cost(spec, params, hamiltonian);
        trace.records.push_back({iter, c, c - e0, grad_sq});
        if (iter == iters) {
            break;
        }
        rmsprop_step(state, params, grad,
                     lr_schedule_linear(iter, iters, opts.lr0, opts.lr1));
    }
    trace.converged = trace.records.back().relative_cost < kVqeConvergedTol;
    return trace;
}

/// The closed-form loss landscape; p is its parameter count.
struct QnnModel {
    std::size_t p;
};

namespace detail {

inline const double kQnnTargetSin = std::sin(std::numbers::pi / 50.0);
inline const double kQnnTargetCos = std::cos(std::numbers::pi / 50.0);

} // namespace detail

/// L(theta), global minimum 0 at every theta_l = pi/100 (mod pi).
inline auto qnn_loss(const QnnModel &model, std::span<const double> theta)
    -> double {
    if (model.p < 1 || theta.size() != model.p) {
        throw InvalidInputError("qnn_loss: parameter-count mismatch");
    }
    double acc = 0.0;
    for (double t : theta) {
        const double ds = std::sin(2.0 * t) - detail::kQnnTargetSin;
        const double dc = std::cos(2.0 * t) - detail::kQnnTargetCos;
        acc += ds * ds + 0.25 * dc * dc;
    }
    return acc / (2.0 * static_cast<double>(model.p));
}

/// Closed-form gradient of qnn_loss.
inline auto qnn_grad(const QnnModel &model, std::span<const double> theta)
    -> std::vector<double> {
    if (model.p < 1 || theta.size() != model.p) {
        throw InvalidInputError("qnn_grad: parameter-count mismatch");
    }
    std::vector<double> grad(model.p);
    for (std::size_t l = 0; l < model.p; ++l) {
        const double s = std::sin(2.0 * theta[l]);
        const double c = std::cos(2.0 * theta[l]);
        grad[l] = (4.0 * c * (s - detail::kQnnTargetSin) -
                   s * (c - detail::kQnnTargetCos)) /
                  (2.0 * static_cast<double>(model.p));
    }
    return grad;
}

/**
 * @brief RMSProp on the QNN loss at constant learning rate.
 *
 * converged means the final loss fell below kQnnConvergedTol, i.e. the run
 * reached the global minimum rather than a spurious one.
 */
inline auto train_qnn(const QnnModel &model, const InitSpec &init,
                      std::size_t iters, double lr, double smoothing,
                      std::uint64_t seed, std::uint64_t stream = 0)
    -> TrainTrace {
    if (model.p < 1) {
        throw InvalidInputError("train_qnn: need p >= 1");
    }
    SeededRng rng(seed, stream);
    std::vector<double> theta = sample_angles(model.p, init, rng);

    TrainTrace trace(init, seed);
    trace.ground = 0.0;
    trace.records.reserve(iters + 1);
    RmspropState state = make_rmsprop_state(model.p, smoothing, 1e-8);

    for (std::size_t iter = 0;; ++iter) {
        const auto grad = qnn_grad(model, theta);
        double grad_sq = 0.0;
        for (double g : grad) {
            grad_sq += g * g;
        }
        const double loss = qnn_loss(model, theta);
        trace.records.push_back({iter, loss, loss, grad_sq});
        if (iter == iters) {
            break;
        }
        rmsprop_step(state, theta, grad, lr);
    }
    trace.converged = trace.records.back().cost < kQnnConvergedTol;
    return trace;
}

/// One local minimum of the QNN loss, canonicalized into [-pi/2, pi/2)^p.
struct QnnMinimum {
    std::vector<double> theta;
    double loss;
};

/**
 * @brief Enumerate local minima over one period by dense grid plus descent.
 *
 * Capped at p <= 3: the grid has 16^p starting points, each refined by plain
 * gradient descent, wrapped into the canonical period cell, deduplicated up
 * to the pi periodicity, and kept only if small probes in every coordinate
 * confirm a genuine minimum.
 */
inline auto qnn_local_minima(std::size_t p) -> std::vector<QnnMinimum> {
    if (p < 1) {
        throw InvalidInputError("qnn_local_minima: need p >= 1");
    }
    if (p > 3) {
        throw ResourceError("qnn_local_minima: grid oracle limited to p <= 3");
    }
    const QnnModel model{p};
    constexpr double kPi = std::numbers::pi;
    constexpr std::size_t kGrid = 16;

    const auto wrap = [](double t) {
        return t - kPi * std::floor((t + kPi / 2.0) / kPi);
    };

    std::vector<QnnMinimum> minima;
    std::vector<std::size_t> index(p, 0);
    const std::size_t total = [p] {
        std::size_t n = 1;
        for (std::size_t i = 0; i < p; ++i) {
            n *= kGrid;
        }
        return n;
    }();

    std::vector<double> theta(p);
    for (std::size_t start = 0; start < total; ++start) {
        std::size_t rem = start;
        for (std::size_t i = 0; i < p; ++i) {
            index[i] = rem % kGrid;
            rem /= kGrid;
            theta[i] = -kPi / 2.0 +
                       (static_cast<double>(index[i]) + 0.37) * kPi /
                           static_cast<double>(kGrid);
        }

        // Plain gradient descent; the per-coordinate curvature is bounded by
        // ~15/p, so lr = 0.05 p is stable and contracts near every minimum.
        const double lr = 0.05 * static_cast<double>(p);
        bool stationary = false;
        for (std::size_t iter = 0; iter < 20000; ++iter) {
            const auto grad = qnn_grad(model, theta);
            double max_abs = 0.0;
            for (std::size_t i = 0; i < p; ++i) {
                theta[i] -= lr * grad[i];
                max_abs = std::max(max_abs, std::abs(grad[i]));
            }
            if (max_abs < 1e-13) {
                stationary = true;
                break;
            }
        }
        if (!stationary) {
            continue;
        }

        std::vector<double> canon(p);
        for (std::size_t i = 0; i < p; ++i) {
            canon[i] = wrap(theta[i]);
        }

        // Probe each coordinate to reject maxima and saddles.
        const double base = qnn_loss(model, canon);
        bool is_min = true;
        std::vector<double> probe = canon;
        for (std::size_t i = 0; i < p && is_min; ++i) {
            for (double h : {1e-4, -1e-4}) {
                probe[i] = canon[i] + h;
                is_min = is_min && qnn_loss(model, probe) >= base - 1e-12;
            }
            probe[i] = canon[i];
        }
        if (!is_min) {
            continue;
        }

        bool duplicate = false;
        for (const auto &known : minima) {
            double dist = 0.0;
            for (std::size_t i = 0; i < p; ++i) {
                dist = std::max(
                    dist, std::abs(std::remainder(canon[i] - known.theta[i], kPi)));
            }
            if (dist < 1e-4) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            minima.push_back({canon, base});
        }
    }

    std::sort(minima.begin(), minima.end(),
              [](const QnnMinimum &a, const QnnMinimum &b) {
                  return a.loss < b.loss;
              });
    return minima;
}

/// Number of distinct local minima in one period cell.
inline auto count_qnn_minima(std::size_t p) -> std::size_t {
    return qnn_local_minima(p).size();
}

} // namespace pqclab
