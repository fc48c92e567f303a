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
 * Gradient oracles and Monte Carlo statistics of gradients at initialization.
 *
 * parameter_shift_gradient is the slow, independent oracle: it never touches
 * the adjoint machinery, so agreement between the two is a real check.
 *
 * The Monte Carlo estimators draw each sample from its own RNG stream
 * (stream id = sample index) and reduce with a fixed-order pairwise sum, so
 * the result is bit-identical no matter how many worker threads ran.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <thread>
#include <vector>

#include "pqclab/ansatz.hpp"
#include "pqclab/errors.hpp"
#include "pqclab/init.hpp"
#include "pqclab/numeric.hpp"
#include "pqclab/pauli.hpp"
#include "pqclab/rng.hpp"
#include "pqclab/statevector.hpp"

namespace pqclab {

/**
 * @brief Exact gradient via the shift rule, one parameter at a time.
 *
 * dC/dtheta_v = (C(theta + (pi/2) e_v) - C(theta - (pi/2) e_v)) / 2, exact
 * for half-period generators like RX and RY.
 */
inline auto parameter_shift_gradient(const AnsatzSpec &spec,
                                     const ParamVector &params,
                                     const Hamiltonian &hamiltonian)
    -> std::vector<double> {
    validate_params(spec, params);
    constexpr double kShift = std::numbers::pi / 2.0;
    std::vector<double> grad(spec.param_count());
    ParamVector shifted = params;
    for (std::size_t v = 0; v < spec.param_count(); ++v) {
        shifted[v] = params[v] + kShift;
        const double plus = cost(spec, shifted, hamiltonian);
        shifted[v] = params[v] - kShift;
        const double minus = cost(spec, shifted, hamiltonian);
        shifted[v] = params[v];
        grad[v] = 0.5 * (plus - minus);
    }
    return grad;
}

/// Sample mean of ||grad C||^2 over random initializations, with its stderr.
struct GradNormEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

namespace detail {

/// Run f(i) for i in [0, count) over the requested number of threads.
template <typename F>
auto parallel_for(std::size_t count, std::size_t n_threads, F f) -> void {
    if (n_threads <= 1 || count < 2 * n_threads) {
        for (std::size_t i = 0; i < count; ++i) {
            f(i);
        }
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    const std::size_t chunk = (count + n_threads - 1) / n_threads;
    for (std::size_t w = 0; w < n_threads; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) {
            break;
        }
        workers.emplace_back([=] {
            for (std::size_t i = lo; i < hi; ++i) {
                f(i);
            }
        });
    }
    for (auto &t : workers) {
        t.join();
    }
}

struct MeanStderr {
    double mean;
    double std_error;
};

/// Two-pass mean and stderr of the mean, both via pairwise sums.
inline auto mean_and_stderr(std::span<const double> values) -> MeanStderr {
    const auto n = static_cast<double>(values.size());
    const double mean = pairwise_sum(values) / n;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - mean;
        sq[i] = d * d;
    }
    const double sample_var = pairwise_sum(sq) / (n - 1.0);
    return {mean, std::sqrt(sample_var / n)};
}

} // namespace detail

/**
 * @brief Monte Carlo estimate of E ||grad C||^2 at initialization.
 *
 * Per-sample parameters come from SeededRng(seed, sample index), gradients
 * from the adjoint method. n_threads = 1 is the default; any thread count
 * yields the identical estimate.
 */
inline auto mc_grad_norm_sq(const AnsatzSpec &spec,
                            const Hamiltonian &hamiltonian,
                            const InitSpec &init, std::size_t n_samples,
                            std::uint64_t seed, std::size_t n_threads = 1)
    -> GradNormEstimate {
    if (n_samples < 2) {
        throw InvalidInputError("mc_grad_norm_sq: need at least 2 samples");
    }
    std::vector<double> norms(n_samples);
    detail::parallel_for(n_samples, n_threads, [&](std::size_t i) {
        SeededRng rng(seed, i);
        const ParamVector params = sample_params(spec, init, rng);
        const auto grad = adjoint_gradient(spec, params, hamiltonian);
        double acc = 0.0;
        for (double g : grad) {
            acc += g * g;
        }
        norms[i] = acc;
    });
    const auto stats = detail::mean_and_stderr(norms);
    return {stats.mean, stats.std_error, n_samples, seed};
}

/// Monte Carlo statistics of one partial derivative at initialization.
struct PartialStats {
    std::size_t q = 0; // 1-based layer ordinal, in [1, 2L]
    std::size_t n = 0; // 1-based qubit ordinal, in [1, N]
    double mean = 0.0;
    double variance = 0.0;      // population form: second_moment - mean^2
    double second_moment = 0.0; // E (dC)^2
    double mean_std_error = 0.0;
    double variance_std_error = 0.0;
    double second_moment_std_error = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

/**
 * @brief Mean, variance, and second moment of dC/dtheta_{q,n} at init.
 *
 * Variance uses the two-pass central sum; its stderr is the asymptotic
 * sqrt((m4 - var^2)/n) with m4 the central fourth moment.
 */
inline auto mc_partial_stats(const AnsatzSpec &spec,
                             const Hamiltonian &hamiltonian,
                             const InitSpec &init, std::size_t q,
                             std::size_t n, std::size_t n_samples,
                             std::uint64_t seed, std::size_t n_threads = 1)
    -> PartialStats {
    if (n_samples < 2) {
        throw InvalidInputError("mc_partial_stats: need at least 2 samples");
    }
    const std::size_t v = param_index(spec, q, n); // validates q, n

    std::vector<double> partials(n_samples);
    detail::parallel_for(n_samples, n_threads, [&](std::size_t i) {
        SeededRng rng(seed, i);
        const ParamVector params = sample_params(spec, init, rng);
        partials[i] = adjoint_gradient(spec, params, hamiltonian)[v];
    });

    const auto count = static_cast<double>(n_samples);
    const auto mean_stats = detail::mean_and_stderr(partials);

    std::vector<double> centered_sq(n_samples);
    std::vector<double> squares(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double d = partials[i] - mean_stats.mean;
        centered_sq[i] = d * d;
        squares[i] = partials[i] * partials[i];
    }
    const double variance = pairwise_sum(centered_sq) / count;
    const auto second_stats = detail::mean_and_stderr(squares);

    std::vector<double> centered_4th(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        centered_4th[i] = centered_sq[i] * centered_sq[i];
    }
    const double m4 = pairwise_sum(centered_4th) / count;
    const double var_of_var = std::max(m4 - variance * variance, 0.0) / count;

    PartialStats stats;
    stats.q = q;
    stats.n = n;
    stats.mean = mean_stats.mean;
    stats.variance = variance;
    stats.second_moment = second_stats.mean;
    stats.mean_std_error = mean_stats.std_error;
    stats.variance_std_error = std::sqrt(var_of_var);
    stats.second_moment_std_error = second_stats.std_error;
    stats.n_samples = n_samples;
    stats.seed = seed;
    return stats;
}

} // namespace pqclab
