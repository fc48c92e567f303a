// Copyright 2026 The pqclab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pqclab/init.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "pqclab/ansatz.hpp"
#include "pqclab/bounds.hpp"
#include "pqclab/errors.hpp"

namespace pqclab {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(InitSpecTest, FactoriesExposeKindAndName) {
    EXPECT_EQ(InitSpec::uniform().kind(), InitSpec::Kind::kUniform);
    EXPECT_EQ(InitSpec::uniform().name(), "uniform");
    EXPECT_DOUBLE_EQ(InitSpec::uniform().a(), 1.0);

    const auto reduced = InitSpec::reduced(0.25);
    EXPECT_EQ(reduced.kind(), InitSpec::Kind::kReduced);
    EXPECT_EQ(reduced.name(), "reduced");
    EXPECT_DOUBLE_EQ(reduced.a(), 0.25);

    const auto gaussian = InitSpec::gaussian(0.5);
    EXPECT_EQ(gaussian.kind(), InitSpec::Kind::kGaussian);
    EXPECT_EQ(gaussian.name(), "gaussian");
    EXPECT_DOUBLE_EQ(gaussian.sigma2(), 0.5);

    const auto translated = InitSpec::translated(kPi / 4.0, 0.05);
    EXPECT_EQ(translated.kind(), InitSpec::Kind::kTranslated);
    EXPECT_EQ(translated.name(), "translated");
    EXPECT_DOUBLE_EQ(translated.center(), kPi / 4.0);
    EXPECT_DOUBLE_EQ(translated.a(), 0.05);
}

TEST(InitSpecTest, FactoriesValidateArguments) {
    EXPECT_THROW(InitSpec::reduced(0.0), InvalidInputError);
    EXPECT_THROW(InitSpec::reduced(1.0), InvalidInputError);
    EXPECT_THROW(InitSpec::reduced(-0.1), InvalidInputError);
    EXPECT_THROW(InitSpec::gaussian(0.0), InvalidInputError);
    EXPECT_THROW(InitSpec::gaussian(-1.0), InvalidInputError);
    EXPECT_THROW(InitSpec::translated(kPi, 1.5), InvalidInputError);
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_THROW(InitSpec::translated(inf, 0.1), InvalidInputError);
}

TEST(SampleAngleTest, ReducedStaysInsideHalfWidth) {
    SeededRng rng(7, 0);
    const auto init = InitSpec::reduced(0.3);
    for (int i = 0; i < 20000; ++i) {
        const double theta = sample_angle(init, rng);
        EXPECT_GE(theta, -0.3 * kPi);
        EXPECT_LT(theta, 0.3 * kPi);
    }
}

TEST(SampleAngleTest, TranslatedStaysInsideShiftedWindow) {
    SeededRng rng(7, 1);
    const double center = kPi / 4.0;
    const auto init = InitSpec::translated(center, 0.05);
    for (int i = 0; i < 20000; ++i) {
        const double theta = sample_angle(init, rng);
        EXPECT_GE(theta, center - 0.05 * kPi);
        EXPECT_LT(theta, center + 0.05 * kPi);
    }
}

TEST(SampleAngleTest, UniformCoversFullCircleSymmetrically) {
    SeededRng rng(11, 0);
    const auto init = InitSpec::uniform();
    double lo = 0.0;
    double hi = 0.0;
    for (int i = 0; i < 50000; ++i) {
        const double theta = sample_angle(init, rng);
        lo = std::min(lo, theta);
        hi = std::max(hi, theta);
        ASSERT_GE(theta, -kPi);
        ASSERT_LT(theta, kPi);
    }
    // With 5e4 draws the extremes approach the interval ends.
    EXPECT_LT(lo, -0.999 * kPi);
    EXPECT_GT(hi, 0.999 * kPi);
}

TEST(SampleAngleTest, ReducedCosineMeanMatchesGamma) {
    // E[cos theta] over U[-a pi, a pi] is sinc(a pi) = gamma(a).
    const double a = 0.35;
    SeededRng rng(13, 2);
    const auto init = InitSpec::reduced(a);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += std::cos(sample_angle(init, rng));
    }
    const double gamma = moments(a).gamma;
    EXPECT_NEAR(sum / n, gamma, 5e-3);
}

TEST(SampleAngleTest, GaussianMatchesRequestedVariance) {
    const double sigma2 = 0.04;
    SeededRng rng(17, 3);
    const auto init = InitSpec::gaussian(sigma2);
    const int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double theta = sample_angle(init, rng);
        sum += theta;
        sum_sq += theta * theta;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    EXPECT_NEAR(mean, 0.0, 3e-3);
    EXPECT_NEAR(var, sigma2, 0.02 * sigma2);
}

TEST(SampleParamsTest, FillsEveryCircuitParameter) {
    const AnsatzSpec spec = build_ansatz(4, 3, Topology::kChainClosed);
    SeededRng rng(19, 0);
    const auto params = sample_params(spec, InitSpec::reduced(0.2), rng);
    ASSERT_EQ(params.size(), spec.param_count());
    for (const double theta : params) {
        EXPECT_NE(theta, 0.0);
        EXPECT_LE(std::abs(theta), 0.2 * kPi);
    }
}

TEST(SolveATheorem1Test, MatchesFrozenValues) {
    // Independently frozen from the closed form evaluated in extended
    // precision.
    EXPECT_NEAR(solve_a_theorem1(8), 0.09730728480184774, 1e-15);
    EXPECT_NEAR(solve_a_theorem1(4), 0.13738699567028366, 1e-15);
    // Two-decimal check used by the command-line smoke tests.
    EXPECT_NEAR(solve_a_theorem1(8), 0.0973, 5e-4);
}

TEST(SolveATheorem1Test, NearlyMaximizesTheExactBoundOnAGrid) {
    // The selection rule maximizes the small-angle envelope exactly (that
    // grid check lives next to theorem1_envelope_peak); against the exact
    // bound it is near-optimal, giving up O(x^2) of the gamma factor, which
    // at L = 8 is a few parts in 1e5.
    const std::size_t n = 8;
    const std::size_t l = 8;
    const double a_star = solve_a_theorem1(l);
    const double at_rule = bound_theorem1(n, l, a_star);
    double best = 0.0;
    for (double a = 1e-3; a < 1.0; a += 1e-3) {
        best = std::max(best, bound_theorem1(n, l, a));
    }
    EXPECT_GE(at_rule, best * (1.0 - 1e-4));
    EXPECT_LE(at_rule, best * (1.0 + 1e-12));
}

TEST(SolveATheorem1Test, ScalesAsInverseSquareRootOfBlocks) {
    // a(L) -> sqrt(3) / (2 pi sqrt(L)); the ratio settles quickly.
    const double limit = std::sqrt(3.0) / (2.0 * kPi);
    for (std::size_t l : {100, 400, 1600, 6400}) {
        const double scaled = solve_a_theorem1(l) * std::sqrt(static_cast<double>(l));
        EXPECT_GT(scaled, 0.9 * limit);
        EXPECT_LT(scaled, 1.1 * limit);
    }
}

TEST(SolveATheorem1Test, RejectsZeroBlocks) {
    EXPECT_THROW(solve_a_theorem1(0), InvalidInputError);
}

TEST(SolveATheorem2Test, MatchesFrozenValues) {
    EXPECT_NEAR(solve_a_theorem2(2, 8), 0.16842505962609653, 1e-14);
    EXPECT_NEAR(solve_a_theorem2(2, 4), 0.23806103036829424, 1e-14);
    // Two-decimal check used by the command-line smoke tests.
    EXPECT_NEAR(solve_a_theorem2(2, 8), 0.1685, 5e-4);
}

TEST(SolveATheorem2Test, SincResidualIsTiny) {
    for (std::size_t s : {1, 2, 3}) {
        for (std::size_t l : {2, 4, 8, 32}) {
            const double sd = static_cast<double>(s);
            const double ld = static_cast<double>(l);
            const double target =
                (sd * (2.0 * ld - 1.0) - 2.0) / (sd * (2.0 * ld + 1.0));
            if (target < 0.0) {
                continue;
            }
            const double a = solve_a_theorem2(s, l);
            EXPECT_NEAR(sinc(2.0 * kPi * a), target, 1e-12)
                << "S=" << s << " L=" << l;
        }
    }
}

TEST(SolveATheorem2Test, MaximizesTheBoundOnAGrid) {
    const std::size_t s = 2;
    const std::size_t l = 8;
    const double a_star = solve_a_theorem2(s, l);
    const double best = bound_theorem4(s, l, a_star);
    for (double a = 1e-4; a < 1.0; a += 1e-4) {
        EXPECT_LE(bound_theorem4(s, l, a), best * (1.0 + 1e-9));
    }
}

TEST(SolveATheorem2Test, HandlesDegenerateTargets) {
    // S=2, L=1 gives target 0 whose root is exactly a = 1/2.
    EXPECT_DOUBLE_EQ(solve_a_theorem2(2, 1), 0.5);
    // S=1, L=1 gives a negative target: no valid half-width exists.
    try {
        solve_a_theorem2(1, 1);
        FAIL() << "expected NoValidHyperparameterError";
    } catch (const NoValidHyperparameterError &e) {
        EXPECT_LT(e.target(), 0.0);
    }
    EXPECT_THROW(solve_a_theorem2(0, 8), InvalidInputError);
    EXPECT_THROW(solve_a_theorem2(2, 0), InvalidInputError);
}

TEST(SolveSincTargetTest, MatchesFrozenValue) {
    const double a = solve_sinc_target(0.9);
    EXPECT_NEAR(a, 0.25040899912669945, 1e-14);
    EXPECT_NEAR(sinc(kPi * a), 0.9, 1e-12);
}

TEST(SolveSincTargetTest, RejectsTargetsOutsideOpenUnitInterval) {
    for (const double target : {-0.5, 0.0, 1.0, 1.875, 2.0}) {
        try {
            solve_sinc_target(target);
            FAIL() << "expected NoValidHyperparameterError for " << target;
        } catch (const NoValidHyperparameterError &e) {
            EXPECT_DOUBLE_EQ(e.target(), target);
        }
    }
}

TEST(SolveATheorem3EdgeTest, AlwaysThrowsWithComputedTarget) {
    // The edge selection equation asks sinc to reach (2L-1)/L >= 1, which no
    // half-width in (0,1) attains.
    try {
        solve_a_theorem3_edge(8);
        FAIL() << "expected NoValidHyperparameterError";
    } catch (const NoValidHyperparameterError &e) {
        EXPECT_DOUBLE_EQ(e.target(), 1.875);
        EXPECT_NE(std::string(e.what()).find("1.875"), std::string::npos);
    }
    try {
        solve_a_theorem3_edge(1);
        FAIL() << "expected NoValidHyperparameterError";
    } catch (const NoValidHyperparameterError &e) {
        EXPECT_DOUBLE_EQ(e.target(), 1.0);
        EXPECT_NE(std::string(e.what()).find("degenerate"), std::string::npos);
    }
    EXPECT_THROW(solve_a_theorem3_edge(0), InvalidInputError);
}

TEST(GaussianSigmaDefaultTest, MatchesClosedForm) {
    EXPECT_DOUBLE_EQ(gaussian_sigma_default(2, 8), 1.0 / 128.0);
    EXPECT_DOUBLE_EQ(gaussian_sigma_default(1, 1), 0.125);
    EXPECT_DOUBLE_EQ(gaussian_sigma_default(3, 10), 1.0 / 240.0);
    EXPECT_THROW(gaussian_sigma_default(0, 8), InvalidInputError);
    EXPECT_THROW(gaussian_sigma_default(2, 0), InvalidInputError);
}

} // namespace
} // namespace pqclab
