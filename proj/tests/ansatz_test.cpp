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

#include "pqclab/ansatz.hpp"

#include <vector>

#include <gtest/gtest.h>

namespace pqclab {
namespace {

TEST(Topology, ChainClosedPairs) {
    const auto spec = build_ansatz(4, 1, Topology::kChainClosed);
    const auto &layer = spec.cz_layers()[0];
    const std::vector<QubitPair> want{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    ASSERT_EQ(layer.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_EQ(layer[i].first, want[i].first);
        EXPECT_EQ(layer[i].second, want[i].second);
    }
}

TEST(Topology, TwoQubitChainHasSingleCz) {
    // At N=2 the wrap-around pair would duplicate (0,1); CZ^2 = identity,
    // so the layer must contain the pair exactly once.
    const auto spec = build_ansatz(2, 3, Topology::kChainClosed);
    for (const auto &layer : spec.cz_layers()) {
        ASSERT_EQ(layer.size(), 1U);
        EXPECT_EQ(layer[0].first, 0U);
        EXPECT_EQ(layer[0].second, 1U);
    }
}

TEST(Topology, FullGraphPairCount) {
    const auto spec = build_ansatz(5, 1, Topology::kFull);
    EXPECT_EQ(spec.cz_layers()[0].size(), 10U);
}

TEST(AnsatzSpec, ParamCountAndValidation) {
    const auto spec = build_ansatz(4, 8, Topology::kChainClosed);
    EXPECT_EQ(spec.param_count(), 64U);
    EXPECT_THROW(build_ansatz(0, 8, Topology::kChainClosed),
                 InvalidInputError);
    EXPECT_THROW(build_ansatz(4, 0, Topology::kChainClosed),
                 InvalidInputError);

    ParamVector short_params(63, 0.0);
    EXPECT_THROW(validate_params(spec, short_params), InvalidInputError);
}

TEST(AnsatzSpec, ParamIndexRowMajorOneBased) {
    const auto spec = build_ansatz(4, 8, Topology::kChainClosed);
    // Row q, qubit slot n, both 1-based: flat = (q-1)*N + (n-1).
    EXPECT_EQ(param_index(spec, 1, 1), 0U);
    EXPECT_EQ(param_index(spec, 2, 1), 4U);
    EXPECT_EQ(param_index(spec, 2, 3), 6U);
    EXPECT_EQ(param_index(spec, 16, 4), 63U);
    EXPECT_THROW(param_index(spec, 0, 1), InvalidInputError);
    EXPECT_THROW(param_index(spec, 17, 1), InvalidInputError);
    EXPECT_THROW(param_index(spec, 1, 5), InvalidInputError);
}

TEST(GateSequence, BlockStructureAndParamCoverage) {
    const std::size_t n = 3;
    const std::size_t blocks = 2;
    const auto spec = build_ansatz(n, blocks, Topology::kChainClosed);
    const auto ops = gate_sequence(spec);
    // Per block: |layer| CZ gates, then N RX, then N RY.
    const std::size_t per_block = spec.cz_layers()[0].size() + 2 * n;
    ASSERT_EQ(ops.size(), per_block * blocks);

    std::vector<bool> seen(spec.param_count(), false);
    std::size_t cursor = 0;
    for (std::size_t l = 0; l < blocks; ++l) {
        for (std::size_t c = 0; c < spec.cz_layers()[l].size(); ++c) {
            EXPECT_EQ(ops[cursor++].kind, GateOp::Kind::kCz);
        }
        for (std::size_t q = 0; q < n; ++q) {
            const auto &op = ops[cursor++];
            EXPECT_EQ(op.kind, GateOp::Kind::kRx);
            EXPECT_EQ(op.qubit0, q);
            EXPECT_EQ(op.param, param_index(spec, 2 * l + 1, q + 1));
            seen[op.param] = true;
        }
        for (std::size_t q = 0; q < n; ++q) {
            const auto &op = ops[cursor++];
            EXPECT_EQ(op.kind, GateOp::Kind::kRy);
            EXPECT_EQ(op.qubit0, q);
            EXPECT_EQ(op.param, param_index(spec, 2 * l + 2, q + 1));
            seen[op.param] = true;
        }
    }
    for (bool s : seen) {
        EXPECT_TRUE(s);
    }
}

TEST(BuildAnsatz, ExplicitLayersOverload) {
    const std::vector<std::vector<QubitPair>> layers{{{0, 2}}, {{1, 2}}};
    const auto spec = build_ansatz(3, 2, layers);
    EXPECT_EQ(spec.cz_layers()[0][0].second, 2U);
    EXPECT_THROW(build_ansatz(3, 1, layers), InvalidInputError);
}

} // namespace
} // namespace pqclab
