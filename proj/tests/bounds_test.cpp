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

#include "pqclab/bounds.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "pqclab/errors.hpp"
#include "pqclab/init.hpp"

namespace pqclab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

TEST(MomentsTest, MatchesFrozenValues) {
    const auto quarter = moments(0.25);
    EXPECT_NEAR(quarter.alpha, 0.81830988618379067, 1e-15);
    EXPECT_NEAR(quarter.beta, 0.18169011381620933, 1e-15);
    EXPECT_NEAR(quarter.gamma, 0.90031631615710607, 1e-15);

    const auto half = moments(0.5);
    EXPECT_NEAR(half.alpha, 0.5, 1e-16);
    EXPECT_NEAR(half.beta, 0.5, 1e-16);
    EXPECT_NEAR(half.gamma, 0.63661977236758134, 1e-15);

    const auto full = moments(1.0);
    EXPECT_NEAR(full.alpha, 0.5, 1e-16);
    EXPECT_NEAR(full.beta, 0.5, 1e-16);
    EXPECT_NEAR(full.gamma, 0.0, 1e-15);

    const auto tiny = moments(1e-4);
    EXPECT_NEAR(tiny.alpha, 0.99999996710131931, 1e-15);
    EXPECT_NEAR(tiny.beta, 3.2898680687570595e-8, 1e-22);
    EXPECT_NEAR(tiny.gamma, 0.99999998355065941, 1e-15);
}

TEST(MomentsTest, RejectsHalfWidthOutsideUnitInterval) {
    EXPECT_THROW(moments(0.0), InvalidInputError);
    EXPECT_THROW(moments(-0.25), InvalidInputError);
    EXPECT_THROW(moments(1.0 + 1e-12), InvalidInputError);
    EXPECT_NO_THROW(moments(1.0));
}

TEST(MomentsTest, AlphaPlusBetaIsOne) {
    for (double a = 1e-3; a <= 1.0; a += 1e-3) {
        const auto m = moments(a);
        EXPECT_NEAR(m.alpha + m.beta, 1.0, 1e-15) << "a=" << a;
    }
}

TEST(MomentsTest, DifferenceRecoversSinc) {
    // alpha - beta = sinc(2 a pi), so 4(alpha - beta) = 2 sin(2 a pi)/(a pi).
    for (double a : {0.01, 0.1, 0.25, 0.33, 0.49, 0.75, 0.99}) {
        const auto m = moments(a);
        EXPECT_NEAR(4.0 * (m.alpha - m.beta),
                    2.0 * std::sin(2.0 * a * kPi) / (a * kPi), 1e-14)
            << "a=" << a;
    }
}

TEST(MomentsTest, JensenInequalityAlphaDominatesGammaSquared) {
    // Var[cos theta] >= 0 means E[cos^2] >= (E[cos])^2.
    for (double a = 1e-3; a < 1.0; a += 1e-3) {
        const auto m = moments(a);
        EXPECT_GE(m.alpha, m.gamma * m.gamma - 1e-16) << "a=" << a;
    }
}

TEST(BoundTheorem1Test, MatchesFrozenValues) {
    const double a8 = solve_a_theorem1(8);
    EXPECT_NEAR(bound_theorem1(8, 8, a8), 4.8277004224824141, 1e-12);
    // Guaranteed floor (2N-3)/e at the optimizing half-width.
    EXPECT_GE(bound_theorem1(8, 8, a8), (2.0 * 8 - 3.0) / kE);
    // Small-a regime: bound ~ 4(2N-3) L (a pi)^2 / 3.
    EXPECT_NEAR(bound_theorem1(2, 5, 1e-8), 6.5797363e-15, 1e-20);
}

TEST(BoundTheorem1Test, LogAndLinearFormsAgree) {
    for (double a : {0.05, 0.1, 0.3}) {
        const double direct = 4.0 * (2.0 * 6 - 3.0) * 4 *
                              std::pow(moments(a).gamma, 8.0 * 4 - 2.0) *
                              moments(a).beta;
        EXPECT_NEAR(bound_theorem1(6, 4, a), direct,
                    1e-12 * std::abs(direct) + 1e-300);
        EXPECT_NEAR(log_bound_theorem1(6, 4, a), std::log(direct), 1e-10);
    }
}

TEST(BoundTheorem1Test, LogFormSurvivesUnderflow) {
    // gamma^(8L-2) underflows the linear value long before the log does.
    const double lg = log_bound_theorem1(4, 4000, 0.5);
    EXPECT_TRUE(std::isfinite(lg));
    EXPECT_LT(lg, -7000.0);
    EXPECT_EQ(bound_theorem1(4, 4000, 0.5), 0.0);
}

TEST(BoundTheorem1Test, ValidatesInputs) {
    EXPECT_THROW(bound_theorem1(1, 4, 0.1), InvalidInputError);
    EXPECT_THROW(bound_theorem1(4, 0, 0.1), InvalidInputError);
    EXPECT_THROW(bound_theorem1(4, 4, 0.0), InvalidInputError);
}

TEST(BoundTheorem2Test, MatchesFrozenHeisenbergValues) {
    // nterms = 3(N-1) for the nearest-neighbor Heisenberg chain, S = 2.
    struct Row {
        std::size_t n;
        std::size_t l;
        double bound;
        double optimized;
    };
    const Row rows[] = {
        {4, 4, 0.016226367879718618, 0.012446767091965986},
        {4, 8, 0.0049392799132584868, 0.0043093732594003952},
        {6, 4, 0.027043946466197696, 0.020744611819943310},
        {6, 8, 0.0082321331887641446, 0.0071822887656673254},
    };
    for (const auto &row : rows) {
        const std::size_t n_terms = 3 * (row.n - 1);
        const double a = solve_a_theorem2(2, row.l);
        EXPECT_NEAR(bound_theorem2(n_terms, 2, row.l, a), row.bound,
                    1e-12 * row.bound)
            << "N=" << row.n << " L=" << row.l;
        EXPECT_NEAR(bound_theorem2_optimized(n_terms, 2, row.l), row.optimized,
                    1e-12 * row.optimized)
            << "N=" << row.n << " L=" << row.l;
        // The evaluated bound at the solved a dominates the closed-form
        // optimized expression, which drops small terms.
        EXPECT_GE(bound_theorem2(n_terms, 2, row.l, a),
                  bound_theorem2_optimized(n_terms, 2, row.l));
    }
}

TEST(BoundTheorem2Test, FactorsThroughTheorem4) {
    for (std::size_t s : {1, 2, 3}) {
        for (std::size_t l : {2, 4, 8}) {
            for (double a : {0.05, 0.17, 0.4}) {
                const std::size_t n_terms = 9;
                const double lhs = bound_theorem2(n_terms, s, l, a);
                const double rhs = 2.0 * static_cast<double>(n_terms) *
                                   (static_cast<double>(l) - 1.0) *
                                   bound_theorem4(s, l, a);
                EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs))
                    << "S=" << s << " L=" << l << " a=" << a;
            }
        }
    }
}

TEST(BoundTheorem2Test, OptimizedRatioApproachesTwoToTheMinusS) {
    // Doubling L multiplies the optimized bound by roughly
    // 2 (L-1)/(2L-...) asymptotics; frozen at S=2, L=1000.
    const double ratio = bound_theorem2_optimized(9, 2, 2000) /
                         bound_theorem2_optimized(9, 2, 1000);
    EXPECT_NEAR(ratio, 0.2503127189611555, 1e-12);
}

TEST(BoundTheorem2Test, ValidatesInputs) {
    EXPECT_THROW(bound_theorem2(0, 2, 4, 0.1), InvalidInputError);
    EXPECT_THROW(bound_theorem2(9, 0, 4, 0.1), InvalidInputError);
    EXPECT_THROW(bound_theorem2(9, 2, 0, 0.1), InvalidInputError);
    EXPECT_THROW(bound_theorem2_optimized(0, 2, 4), InvalidInputError);
}

TEST(FTheorem3Test, MatchesFrozenValues) {
    const double a8 = solve_a_theorem1(8);
    EXPECT_NEAR(f_theorem3(QubitPosition::kEdge, 8, a8),
                0.011676340170848417, 1e-15);
    EXPECT_NEAR(f_theorem3(QubitPosition::kBulk, 8, a8),
                0.046631660857817414, 1e-15);
}

TEST(FTheorem3Test, FloorsHoldAtTheTheorem1HalfWidth) {
    for (std::size_t l : {1, 2, 4, 8, 16, 32, 64}) {
        const double a = solve_a_theorem1(l);
        EXPECT_GE(f_theorem3(QubitPosition::kEdge, l, a),
                  variance_floor_theorem3(QubitPosition::kEdge, l))
            << "L=" << l;
        EXPECT_GE(f_theorem3(QubitPosition::kBulk, l, a),
                  variance_floor_theorem3(QubitPosition::kBulk, l))
            << "L=" << l;
    }
}

TEST(FTheorem3Test, BulkDominatesTwiceTheEdge) {
    // The bulk factor is 2 alpha^(4L-1) beta plus a nonnegative cross term.
    for (std::size_t l : {1, 2, 8, 32}) {
        for (double a : {0.05, 0.1, 0.3, 0.6}) {
            EXPECT_GE(f_theorem3(QubitPosition::kBulk, l, a),
                      2.0 * f_theorem3(QubitPosition::kEdge, l, a) *
                          (1.0 - 1e-14))
                << "L=" << l << " a=" << a;
        }
    }
}

TEST(FTheorem3Test, FloorsHaveClosedForm) {
    for (std::size_t l : {1, 5, 8, 64}) {
        const double ld = static_cast<double>(l);
        EXPECT_DOUBLE_EQ(variance_floor_theorem3(QubitPosition::kBulk, l),
                         1.0 / (kE * ld));
        EXPECT_DOUBLE_EQ(variance_floor_theorem3(QubitPosition::kEdge, l),
                         1.0 / (4.0 * kE * ld));
    }
    EXPECT_THROW(variance_floor_theorem3(QubitPosition::kBulk, 0),
                 InvalidInputError);
    EXPECT_THROW(f_theorem3(QubitPosition::kEdge, 0, 0.1), InvalidInputError);
}

TEST(BoundTheorem4Test, MatchesFrozenValues) {
    const double a = solve_a_theorem2(2, 8);
    EXPECT_NEAR(bound_theorem4(2, 8, a), 3.9200634232210213e-5, 1e-18);
    // At a = 1 (uniform), alpha = beta = 1/2 and the bound collapses to
    // 2^-(2SL+S).
    EXPECT_NEAR(bound_theorem4(2, 8, 1.0), std::pow(2.0, -34.0), 1e-23);
}

TEST(BoundTheorem4Test, OptimizedIsDominatedByEvaluatedBound) {
    for (std::size_t s : {1, 2, 3}) {
        for (std::size_t l : {2, 4, 8, 16}) {
            const double a = solve_a_theorem2(s, l);
            EXPECT_GE(bound_theorem4(s, l, a),
                      bound_theorem4_optimized(s, l))
                << "S=" << s << " L=" << l;
        }
    }
}

TEST(BoundTheorem4Test, ValidatesInputs) {
    EXPECT_THROW(bound_theorem4(0, 4, 0.1), InvalidInputError);
    EXPECT_THROW(bound_theorem4(2, 0, 0.1), InvalidInputError);
    EXPECT_THROW(bound_theorem4_optimized(0, 4), InvalidInputError);
}

TEST(EnvelopeTest, PeakMatchesClosedFormAndGridArgmax) {
    EXPECT_NEAR(theorem1_envelope_peak(8), 0.093452398946821456, 1e-15);
    for (std::size_t l : {1, 2, 8, 32}) {
        const double x_star = theorem1_envelope_peak(l);
        const double best = theorem1_envelope(5, l, x_star);
        for (double x = 1e-4; x < 3.0; x += 1e-4) {
            EXPECT_LE(theorem1_envelope(5, l, x), best * (1.0 + 1e-9))
                << "L=" << l << " x=" << x;
        }
        // The envelope peak recovers the theorem-1 half-width a = sqrt(x)/pi.
        EXPECT_NEAR(std::sqrt(x_star) / kPi, solve_a_theorem1(l), 1e-14)
            << "L=" << l;
    }
}

TEST(MonotoneLimitTest, Theorem1NormalizedBoundFallsToOneOverE) {
    // Normalized by (2N-3), both the small-angle envelope at its peak and
    // the exact bound at the selected half-width are strictly decreasing in
    // L and settle just above 1/e. The frozen endpoints describe the
    // envelope, the quantity the selection rule optimizes; the exact bound
    // sits slightly above it because the envelope truncates gamma downward.
    double prev_env = std::numeric_limits<double>::infinity();
    double prev_exact = std::numeric_limits<double>::infinity();
    for (std::size_t l = 1; l <= 64; ++l) {
        const double env =
            theorem1_envelope(6, l, theorem1_envelope_peak(l)) /
            (2.0 * 6 - 3.0);
        const double exact =
            bound_theorem1(6, l, solve_a_theorem1(l)) / (2.0 * 6 - 3.0);
        EXPECT_LT(env, prev_env) << "L=" << l;
        EXPECT_GE(env, 1.0 / kE) << "L=" << l;
        EXPECT_LT(exact, prev_exact) << "L=" << l;
        EXPECT_GE(exact, env) << "L=" << l;
        prev_env = env;
        prev_exact = exact;
    }
    EXPECT_NEAR(theorem1_envelope(6, 1, theorem1_envelope_peak(1)) / 9.0,
                0.38165985089042825, 1e-12);
    EXPECT_NEAR(theorem1_envelope(6, 64, theorem1_envelope_peak(64)) / 9.0,
                0.36809501163059026, 1e-12);
}

TEST(MonotoneLimitTest, Theorem2AlphaPowerFallsToExpMinusSPlusOne) {
    // At the theorem-2 half-width, alpha^(2SL-1) equals
    // [(2SL-1)/(S(2L+1))]^(2SL-1), strictly decreasing toward e^-(S+1).
    struct Probe {
        std::size_t s;
        double first;
        double last;
    };
    const Probe probes[] = {
        {1, 0.216, 0.13746095392},
        {2, 0.0823543, 0.050666509964},
        {3, 0.032984939142, 0.018699535889},
    };
    for (const auto &probe : probes) {
        const double limit = std::exp(-(static_cast<double>(probe.s) + 1.0));
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t l = 2; l <= 64; ++l) {
            const double a = solve_a_theorem2(probe.s, l);
            const double value =
                std::pow(moments(a).alpha,
                         2.0 * static_cast<double>(probe.s) *
                                 static_cast<double>(l) -
                             1.0);
            EXPECT_LT(value, prev) << "S=" << probe.s << " L=" << l;
            EXPECT_GT(value, limit) << "S=" << probe.s << " L=" << l;
            prev = value;
        }
        const double a2 = solve_a_theorem2(probe.s, 2);
        const double a64 = solve_a_theorem2(probe.s, 64);
        const double sd = static_cast<double>(probe.s);
        EXPECT_NEAR(std::pow(moments(a2).alpha, 2.0 * sd * 2.0 - 1.0),
                    probe.first, 1e-9);
        EXPECT_NEAR(std::pow(moments(a64).alpha, 2.0 * sd * 64.0 - 1.0),
                    probe.last, 1e-9);
    }
}

TEST(BoundReportTest, CarriesTheoremSpecificFields) {
    const auto r1 = report_theorem1(8, 8, 0.1);
    EXPECT_EQ(r1.theorem, "1");
    EXPECT_EQ(r1.n_qubits, 8u);
    EXPECT_EQ(r1.blocks, 8u);
    EXPECT_DOUBLE_EQ(r1.a, 0.1);
    EXPECT_NEAR(r1.value, std::exp(r1.log_value), 1e-15);
    EXPECT_TRUE(std::isnan(r1.optimized));

    const auto r2 = report_theorem2(9, 2, 8, 0.1685);
    EXPECT_EQ(r2.theorem, "2");
    EXPECT_EQ(r2.n_terms, 9u);
    EXPECT_EQ(r2.locality, 2u);
    EXPECT_NEAR(r2.optimized, bound_theorem2_optimized(9, 2, 8), 1e-18);

    const auto r3e = report_theorem3(QubitPosition::kEdge, 8, 0.0973);
    EXPECT_EQ(r3e.theorem, "3edge");
    EXPECT_NEAR(r3e.optimized, 1.0 / (4.0 * kE * 8.0), 1e-15);
    const auto r3b = report_theorem3(QubitPosition::kBulk, 8, 0.0973);
    EXPECT_EQ(r3b.theorem, "3bulk");
    EXPECT_GT(r3b.value, r3e.value);

    const auto r4 = report_theorem4(2, 8, 0.1685);
    EXPECT_EQ(r4.theorem, "4");
    EXPECT_NEAR(r4.optimized, bound_theorem4_optimized(2, 8), 1e-18);
}

} // namespace
} // namespace pqclab
