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
 * Initialization strategies and the hyperparameter selection equations.
 *
 * Four ways to draw the 2NL rotation angles:
 *   uniform     U[-pi, pi] per angle (the conventional choice)
 *   reduced     U[-a pi, a pi] with 0 < a < 1
 *   gaussian    N(0, sigma^2)
 *   translated  U[center - a pi, center + a pi]
 *
 * The solve_a_* functions pick the reduced-domain half-width a that maximizes
 * the matching gradient-norm lower bound (bounds.hpp):
 *   theorem 1   closed form in L
 *   theorem 2   unique root of sin(2 a pi)/(2 a pi) = (S(2L-1)-2)/(S(2L+1))
 *               on the monotone branch a in (0, 1/2]
 *   theorem 3   edge equation sin(a pi)/(a pi) = (2L-1)/L, whose right side
 *               is >= 1 for every L >= 1, so it never has a solution; the
 *               solver reports NoValidHyperparameterError carrying the target
 *               rather than silently substituting a fixed-up equation.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "pqclab/ansatz.hpp"
#include "pqclab/errors.hpp"
#include "pqclab/numeric.hpp"
#include "pqclab/rng.hpp"

namespace pqclab {

class InitSpec {
  public:
    enum class Kind { kUniform, kReduced, kGaussian, kTranslated };

    static auto uniform() -> InitSpec {
        return InitSpec(Kind::kUniform, 1.0, 0.0, 0.0);
    }

    static auto reduced(double a) -> InitSpec {
        check_a(a);
        return InitSpec(Kind::kReduced, a, 0.0, 0.0);
    }

    static auto gaussian(double sigma2) -> InitSpec {
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
            throw InvalidInputError("InitSpec: gaussian variance must be a "
                                    "positive finite real");
        }
        return InitSpec(Kind::kGaussian, 0.0, sigma2, 0.0);
    }

    static auto translated(double center, double a) -> InitSpec {
        check_a(a);
        if (!std::isfinite(center)) {
            throw InvalidInputError("InitSpec: translated center must be finite");
        }
        return InitSpec(Kind::kTranslated, a, 0.0, center);
    }

    [[nodiscard]] auto kind() const -> Kind { return kind_; }
    [[nodiscard]] auto a() const -> double { return a_; }
    [[nodiscard]] auto sigma2() const -> double { return sigma2_; }
    [[nodiscard]] auto center() const -> double { return center_; }

    [[nodiscard]] auto name() const -> std::string {
        switch (kind_) {
        case Kind::kUniform:
            return "uniform";
        case Kind::kReduced:
            return "reduced";
        case Kind::kGaussian:
            return "gaussian";
        default:
            return "translated";
        }
    }

  private:
    InitSpec(Kind kind, double a, double sigma2, double center)
        : kind_(kind), a_(a), sigma2_(sigma2), center_(center) {}

    static auto check_a(double a) -> void {
        if (!(a > 0.0) || !(a < 1.0)) {
            throw InvalidInputError(
                "InitSpec: reduced-domain half-width a must lie in (0, 1)");
        }
    }

    Kind kind_;
    double a_;      // uniform keeps a = 1 so uniform == reduced(1)
    double sigma2_; // gaussian only
    double center_; // translated only
};

/// One angle drawn from the strategy; consumes rng deterministically.
inline auto sample_angle(const InitSpec &init, SeededRng &rng) -> double {
    constexpr double kPi = std::numbers::pi;
    switch (init.kind()) {
    case InitSpec::Kind::kGaussian:
        return std::sqrt(init.sigma2()) * rng.next_gaussian();
    case InitSpec::Kind::kTranslated:
        return rng.next_uniform(init.center() - init.a() * kPi,
                                init.center() + init.a() * kPi);
    default: // uniform (a = 1) and reduced share the centered interval
        return rng.next_uniform(-init.a() * kPi, init.a() * kPi);
    }
}

inline auto sample_angles(std::size_t count, const InitSpec &init,
                          SeededRng &rng) -> std::vector<double> {
    std::vector<double> angles(count);
    for (auto &theta : angles) {
        theta = sample_angle(init, rng);
    }
    return angles;
}

/// All 2NL circuit parameters, in flat parameter-index order.
inline auto sample_params(const AnsatzSpec &spec, const InitSpec &init,
                          SeededRng &rng) -> ParamVector {
    return sample_angles(spec.param_count(), init, rng);
}

/**
 * @brief Half-width maximizing the theorem-1 bound, closed form.
 *
 * a(L) = (1/4pi) sqrt((40L + 7 - sqrt(1600 L^2 - 400 L + 49)) / L),
 * which scales as sqrt(3)/(2 pi sqrt(L)) for large L.
 */
inline auto solve_a_theorem1(std::size_t blocks) -> double {
    if (blocks < 1) {
        throw InvalidInputError("solve_a_theorem1: need at least one block");
    }
    const double l = static_cast<double>(blocks);
    const double radical = std::sqrt(1600.0 * l * l - 400.0 * l + 49.0);
    return std::sqrt((40.0 * l + 7.0 - radical) / l) /
           (4.0 * std::numbers::pi);
}

namespace detail {

/**
 * Unique root of sinc(f(a)) = target by bisection on a bracket where the
 * map is continuous and strictly decreasing. Terminates at ULP resolution.
 */
template <typename F>
auto bisect_decreasing(F f, double lo, double hi, double target) -> double {
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            return mid;
        }
        if (f(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

} // namespace detail

/**
 * @brief Half-width maximizing the theorem-2 bound.
 *
 * Solves sin(2 a pi)/(2 a pi) = t with t = (S(2L-1) - 2)/(S(2L+1)) on the
 * branch a in (0, 1/2], where the left side falls strictly from 1 to 0.
 * Residual after bisection is below 1e-12.
 */
inline auto solve_a_theorem2(std::size_t locality, std::size_t blocks)
    -> double {
    if (locality < 1 || blocks < 1) {
        throw InvalidInputError("solve_a_theorem2: need S >= 1 and L >= 1");
    }
    const double s = static_cast<double>(locality);
    const double l = static_cast<double>(blocks);
    const double target = (s * (2.0 * l - 1.0) - 2.0) / (s * (2.0 * l + 1.0));
    if (target < 0.0) {
        throw NoValidHyperparameterError(
            "solve_a_theorem2: target sinc value is negative for S=" +
                std::to_string(locality) + ", L=" + std::to_string(blocks),
            target);
    }
    if (target == 0.0) {
        return 0.5;
    }
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    return detail::bisect_decreasing(
        [](double a) { return sinc(kTwoPi * a); }, 0.0, 0.5, target);
}

/**
 * @brief Root of sin(a pi)/(a pi) = target over a in (0, 1).
 *
 * Requires 0 < target < 1; anything else has no solution on the interval and
 * raises NoValidHyperparameterError carrying the offending target.
 */
inline auto solve_sinc_target(double target) -> double {
    if (!(target > 0.0) || !(target < 1.0)) {
        if (target == 1.0) {
            throw NoValidHyperparameterError(
                "solve_sinc_target: degenerate target 1 (attained only in "
                "the a -> 0 limit)",
                target);
        }
        throw NoValidHyperparameterError(
            "solve_sinc_target: no a in (0,1) attains sinc target " +
                std::to_string(target),
            target);
    }
    return detail::bisect_decreasing(
        [](double a) { return sinc(std::numbers::pi * a); }, 0.0, 1.0, target);
}

/**
 * @brief Edge-qubit selection equation of theorem 3.
 *
 * The stated equation asks for sin(a pi)/(a pi) = (2L-1)/L, but that right
 * side is >= 1 for every L >= 1 while the left side is < 1 for all a > 0, so
 * there is never a solution. The error carries the computed target so callers
 * can report it.
 */
inline auto solve_a_theorem3_edge(std::size_t blocks) -> double {
    if (blocks < 1) {
        throw InvalidInputError("solve_a_theorem3_edge: need at least one block");
    }
    const double l = static_cast<double>(blocks);
    const double target = (2.0 * l - 1.0) / l;
    return solve_sinc_target(target); // always throws: target >= 1
}

/// Default gaussian variance sigma^2 = 1/(8 S L).
inline auto gaussian_sigma_default(std::size_t locality, std::size_t blocks)
    -> double {
    if (locality < 1 || blocks < 1) {
        throw InvalidInputError("gaussian_sigma_default: need S >= 1, L >= 1");
    }
    return 1.0 / (8.0 * static_cast<double>(locality) *
                  static_cast<double>(blocks));
}

} // namespace pqclab
