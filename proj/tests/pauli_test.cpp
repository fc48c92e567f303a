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

#include "pqclab/pauli.hpp"

#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "dense_reference.hpp"

namespace pqclab {
namespace {

TEST(PauliString, TextRoundTripAndAccessors) {
    const auto p = PauliString::from_text("ZXIY");
    EXPECT_EQ(p.size(), 4U);
    EXPECT_EQ(p.code(0), PauliString::kZ);
    EXPECT_EQ(p.code(1), PauliString::kX);
    EXPECT_EQ(p.code(2), PauliString::kI);
    EXPECT_EQ(p.code(3), PauliString::kY);
    EXPECT_EQ(p.text(), "ZXIY");
    EXPECT_EQ(p.locality(), 3U);
    EXPECT_FALSE(p.is_identity());
    EXPECT_TRUE(PauliString::identity(5).is_identity());
    EXPECT_THROW(PauliString::from_text("ZQ"), InvalidInputError);
    EXPECT_THROW(PauliString::from_text(""), InvalidInputError);
}

TEST(PauliString, ZeroStateExpectation) {
    EXPECT_EQ(expectation_on_zero(PauliString::from_text("ZZ")), 1.0);
    EXPECT_EQ(expectation_on_zero(PauliString::from_text("ZX")), 0.0);
    EXPECT_EQ(expectation_on_zero(PauliString::from_text("YX", -1)), 0.0);
    EXPECT_EQ(expectation_on_zero(PauliString::from_text("IZ", -1)), -1.0);
}

// CZ conjugation table against the explicit 4x4 matrix oracle, all 16 cases.
TEST(CzConjugate, MatchesDenseMatrixOracle) {
    testing::MatrixXcd cz(4, 4);
    cz.setIdentity();
    cz(3, 3) = -1.0;
    for (std::uint8_t c0 = 0; c0 < 4; ++c0) {
        for (std::uint8_t c1 = 0; c1 < 4; ++c1) {
            const PauliString p({c0, c1});
            const PauliString q = cz_conjugate(p, {0, 1});
            const testing::MatrixXcd want =
                cz * testing::pauli_full(p) * cz;
            const testing::MatrixXcd got = testing::pauli_full(q);
            EXPECT_LT((want - got).norm(), 1e-12)
                << "codes " << int(c0) << "," << int(c1);
        }
    }
}

TEST(CzConjugate, IsAnInvolution) {
    for (std::uint8_t c0 = 0; c0 < 4; ++c0) {
        for (std::uint8_t c1 = 0; c1 < 4; ++c1) {
            for (int sign : {+1, -1}) {
                const PauliString p({c0, c1}, sign);
                const PauliString pp = cz_conjugate(cz_conjugate(p, {0, 1}),
                                                    {0, 1});
                EXPECT_TRUE(pp.codes_equal(p));
                EXPECT_EQ(pp.sign(), p.sign());
            }
        }
    }
}

TEST(CzConjugate, LayerActsOnDisjointPairs) {
    // X on qubit 1 inside a 4-qubit register, CZ layer {(0,1),(2,3)}:
    // the (0,1) gate maps IX -> ZX, the (2,3) gate leaves II alone.
    const auto p = PauliString::from_text("IXII");
    const std::vector<QubitPair> layer{{0, 1}, {2, 3}};
    const auto q = cz_layer_conjugate(p, layer);
    EXPECT_EQ(q.text(), "ZXII");
    EXPECT_EQ(q.sign(), 1);
}

TEST(Hamiltonian, CanonicalizationMergesAndDropsZeros) {
    const auto zz = PauliString::from_text("ZZ");
    const auto xx = PauliString::from_text("XX");
    const Hamiltonian h(2, {{1.0, zz}, {1.0, zz}, {2.0, xx}, {-2.0, xx}});
    ASSERT_EQ(h.size(), 1U);
    EXPECT_EQ(h.terms()[0].string.text(), "ZZ");
    EXPECT_EQ(h.terms()[0].coefficient, 2.0);
    EXPECT_FALSE(h.has_unit_coefficients());
}

TEST(Hamiltonian, SignsFoldIntoCoefficients) {
    const Hamiltonian h(2, {{2.5, PauliString::from_text("ZY", -1)}});
    ASSERT_EQ(h.size(), 1U);
    EXPECT_EQ(h.terms()[0].coefficient, -2.5);
    EXPECT_EQ(h.terms()[0].string.sign(), 1);
}

TEST(Hamiltonian, RejectsIdentityAndMismatchedTerms) {
    EXPECT_THROW(Hamiltonian(2, {{1.0, PauliString::identity(2)}}),
                 InvalidInputError);
    EXPECT_THROW(Hamiltonian(3, {{1.0, PauliString::from_text("ZZ")}}),
                 InvalidInputError);
}

TEST(ChainFamilies, TermCountsAndLocality) {
    const auto zz8 = zz_chain(8);
    EXPECT_EQ(zz8.size(), 7U);
    EXPECT_EQ(zz8.max_locality(), 2U);
    EXPECT_TRUE(zz8.has_unit_coefficients());

    const auto zz2 = zz_chain(2);
    EXPECT_EQ(zz2.size(), 1U);

    const auto heis = heisenberg_chain(8);
    EXPECT_EQ(heis.size(), 21U);
    EXPECT_EQ(heis.max_locality(), 2U);
    for (const auto &term : heis.terms()) {
        EXPECT_EQ(term.string.locality(), 2U);
    }
    EXPECT_THROW(zz_chain(1), InvalidInputError);
    EXPECT_THROW(heisenberg_chain(1), InvalidInputError);
}

TEST(ParseHamiltonian, AcceptsChainEquivalents) {
    const auto h = parse_hamiltonian("1.0 ZZ");
    EXPECT_EQ(h.n_qubits(), 2U);
    ASSERT_EQ(h.size(), 1U);
    EXPECT_EQ(h.terms()[0].string.text(), "ZZ");

    const auto heis = parse_hamiltonian("1 XX\n1 YY\n1 ZZ");
    const auto want = heisenberg_chain(2);
    ASSERT_EQ(heis.size(), want.size());
    for (std::size_t i = 0; i < heis.size(); ++i) {
        EXPECT_TRUE(
            heis.terms()[i].string.codes_equal(want.terms()[i].string));
        EXPECT_EQ(heis.terms()[i].coefficient, want.terms()[i].coefficient);
    }

    const auto merged = parse_hamiltonian("1 ZZ\n1 ZZ");
    ASSERT_EQ(merged.size(), 1U);
    EXPECT_EQ(merged.terms()[0].coefficient, 2.0);
}

TEST(ParseHamiltonian, CommentsAndBlankLines) {
    const auto h = parse_hamiltonian("# a comment\n\n  1.0  ZZ \n");
    EXPECT_EQ(h.size(), 1U);
}

TEST(ParseHamiltonian, ErrorsCarryLineNumbers) {
    try {
        parse_hamiltonian("1.0 ZZ\n2.0 ZZZ");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2U);
    }
    try {
        parse_hamiltonian("1.0 ZZ\nbogus ZZ\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2U);
    }
    EXPECT_THROW(parse_hamiltonian("1.0 ZQ"), ParseError);
    EXPECT_THROW(parse_hamiltonian(""), ParseError);
}

} // namespace
} // namespace pqclab
