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
 * The layered hardware-efficient circuit family used throughout: L blocks,
 * each consisting of a CZ entanglement layer followed by a full row of RX
 * rotations and then a full row of RY rotations.
 *
 * Parameters are indexed theta_{q,n} with layer ordinal q in [2L] and qubit
 * ordinal n in [N], both 1-based at the API boundary; odd q are the RX rows,
 * even q the RY rows. Flat storage is row-major: (q-1)*N + (n-1).
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "pqclab/errors.hpp"
#include "pqclab/pauli.hpp"

namespace pqclab {

/// Flat vector of 2*N*L rotation angles in radians.
using ParamVector = std::vector<double>;

/// Named entanglement-layer topologies.
enum class Topology {
    /// Nearest-neighbor pairs with closed boundary: (0,1), ..., (N-2,N-1), (N-1,0).
    kChainClosed,
    /// All N(N-1)/2 pairs.
    kFull,
};

/**
 * @brief Immutable description of one circuit: sizes plus per-block CZ layers.
 */
class AnsatzSpec {
  public:
    AnsatzSpec(std::size_t n_qubits, std::size_t n_blocks,
               std::vector<std::vector<QubitPair>> cz_layers)
        : n_qubits_(n_qubits), n_blocks_(n_blocks),
          cz_layers_(std::move(cz_layers)) {
        if (n_qubits_ == 0 || n_blocks_ == 0) {
            throw InvalidInputError("AnsatzSpec: N and L must be positive");
        }
        if (cz_layers_.size() != n_blocks_) {
            throw InvalidInputError(
                "AnsatzSpec: need exactly one CZ layer per block");
        }
        for (const auto &layer : cz_layers_) {
            for (const auto &pair : layer) {
                if (pair.first == pair.second) {
                    throw InvalidInputError(
                        "AnsatzSpec: CZ pair members must be distinct");
                }
                if (pair.first >= n_qubits_ || pair.second >= n_qubits_) {
                    throw InvalidInputError(
                        "AnsatzSpec: CZ pair index out of range");
                }
            }
        }
    }

    [[nodiscard]] auto n_qubits() const -> std::size_t { return n_qubits_; }
    [[nodiscard]] auto n_blocks() const -> std::size_t { return n_blocks_; }
    [[nodiscard]] auto cz_layers() const
        -> const std::vector<std::vector<QubitPair>> & {
        return cz_layers_;
    }

    /// Total trainable parameter count, 2*N*L.
    [[nodiscard]] auto param_count() const -> std::size_t {
        return 2 * n_qubits_ * n_blocks_;
    }

  private:
    std::size_t n_qubits_;
    std::size_t n_blocks_;
    std::vector<std::vector<QubitPair>> cz_layers_;
};

namespace detail {

inline auto topology_pairs(std::size_t n, Topology topology)
    -> std::vector<QubitPair> {
    std::vector<QubitPair> pairs;
    switch (topology) {
    case Topology::kChainClosed:
        if (n < 2) {
            throw InvalidInputError("build_ansatz: chain_closed needs N >= 2");
        }
        for (std::size_t j = 0; j + 1 < n; ++j) {
            pairs.push_back({j, j + 1});
        }
        // Closed boundary; for N = 2 the wrap pair would duplicate (0,1), and
        // a doubled CZ is the identity, so it is emitted once.
        if (n > 2) {
            pairs.push_back({n - 1, 0});
        }
        break;
    case Topology::kFull:
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                pairs.push_back({i, j});
            }
        }
        break;
    }
    return pairs;
}

} // namespace detail

/// Build a spec whose L blocks all share one named entanglement layer.
inline auto build_ansatz(std::size_t n_qubits, std::size_t n_blocks,
                         Topology topology) -> AnsatzSpec {
    const auto pairs = detail::topology_pairs(n_qubits, topology);
    return {n_qubits, n_blocks,
            std::vector<std::vector<QubitPair>>(n_blocks, pairs)};
}

/// Build a spec with explicit per-block CZ layers (layers may differ).
inline auto build_ansatz(std::size_t n_qubits, std::size_t n_blocks,
                         std::vector<std::vector<QubitPair>> cz_layers)
    -> AnsatzSpec {
    return {n_qubits, n_blocks, std::move(cz_layers)};
}

/**
 * @brief Flat index of theta_{q,n}; q in [2L] and n in [N], 1-based.
 */
inline auto param_index(const AnsatzSpec &spec, std::size_t q, std::size_t n)
    -> std::size_t {
    if (q < 1 || q > 2 * spec.n_blocks()) {
        throw InvalidInputError("param_index: layer ordinal out of range");
    }
    if (n < 1 || n > spec.n_qubits()) {
        throw InvalidInputError("param_index: qubit ordinal out of range");
    }
    return (q - 1) * spec.n_qubits() + (n - 1);
}

/// One gate of the flattened circuit trace.
struct GateOp {
    enum class Kind { kCz, kRx, kRy };

    Kind kind;
    /// Acted qubit for rotations; the pair for CZ.
    std::size_t qubit0;
    std::size_t qubit1;
    /// Flat parameter index for rotations, unused for CZ.
    std::size_t param;
};

/**
 * @brief The full ordered gate list: per block l, the CZ layer, then RX on
 * qubits 1..N with row 2l-1, then RY with row 2l. Single source of truth for
 * simulation and differentiation.
 */
inline auto gate_sequence(const AnsatzSpec &spec) -> std::vector<GateOp> {
    std::vector<GateOp> ops;
    const std::size_t n = spec.n_qubits();
    for (std::size_t l = 1; l <= spec.n_blocks(); ++l) {
        for (const auto &pair : spec.cz_layers()[l - 1]) {
            ops.push_back({GateOp::Kind::kCz, pair.first, pair.second, 0});
        }
        for (std::size_t q = 0; q < n; ++q) {
            ops.push_back(
                {GateOp::Kind::kRx, q, 0, param_index(spec, 2 * l - 1, q + 1)});
        }
        for (std::size_t q = 0; q < n; ++q) {
            ops.push_back(
                {GateOp::Kind::kRy, q, 0, param_index(spec, 2 * l, q + 1)});
        }
    }
    return ops;
}

/// Validate a parameter vector against a spec (length and finiteness).
inline auto validate_params(const AnsatzSpec &spec, const ParamVector &params)
    -> void {
    if (params.size() != spec.param_count()) {
        throw InvalidInputError("params: length does not match 2*N*L");
    }
    for (double v : params) {
        if (!std::isfinite(v)) {
            throw InvalidInputError("params: values must be finite");
        }
    }
}

} // namespace pqclab
