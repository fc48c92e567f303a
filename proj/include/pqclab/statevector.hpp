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
 * Exact 2^N complex-amplitude simulation.
 *
 * Basis convention: qubit q occupies bit q of the amplitude index, so qubit 0
 * is the least significant bit (and the leftmost letter of a Pauli word).
 *
 * Pauli observables act through bit manipulation of basis indices only:
 * Z contributes a parity phase, X flips the index, Y flips with a +/-i phase.
 * No 2^N x 2^N matrix is ever materialized; memory stays O(2^N).
 *
 * The adjoint-mode gradient performs one forward sweep, one observable
 * application, and one reverse sweep that un-applies each gate from both the
 * state and the costate; it is the workhorse differentiator, with the
 * parameter-shift rule (gradient.hpp) as the independent oracle.
 */
#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pqclab/ansatz.hpp"
#include "pqclab/errors.hpp"
#include "pqclab/pauli.hpp"

namespace pqclab {

class StateVector {
  public:
    /// Desk-scale cap; 2^20 amplitudes (16 MiB) keeps everything in memory.
    static constexpr std::size_t kMaxQubits = 20;

    static auto zero_state(std::size_t n_qubits) -> StateVector {
        if (n_qubits < 1) {
            throw InvalidInputError("zero_state: need at least 1 qubit");
        }
        if (n_qubits > kMaxQubits) {
            throw ResourceError("zero_state: qubit count exceeds the 2^20 "
                                "amplitude cap");
        }
        StateVector state;
        state.n_ = n_qubits;
        state.amp_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
        state.amp_[0] = {1.0, 0.0};
        return state;
    }

    [[nodiscard]] auto n_qubits() const -> std::size_t { return n_; }
    [[nodiscard]] auto dim() const -> std::size_t { return amp_.size(); }

    [[nodiscard]] auto amplitudes() -> std::span<std::complex<double>> {
        return amp_;
    }
    [[nodiscard]] auto amplitudes() const
        -> std::span<const std::complex<double>> {
        return amp_;
    }

    [[nodiscard]] auto operator[](std::size_t k) const
        -> const std::complex<double> & {
        return amp_[k];
    }

    /// Squared 2-norm, summed in fixed index order.
    [[nodiscard]] auto norm_sq() const -> double {
        double acc = 0.0;
        for (const auto &a : amp_) {
            acc += std::norm(a);
        }
        return acc;
    }

  private:
    StateVector() = default;

    std::size_t n_ = 0;
    std::vector<std::complex<double>> amp_;
};

namespace detail {

inline auto check_qubit(const StateVector &state, std::size_t qubit) -> void {
    if (qubit >= state.n_qubits()) {
        throw InvalidInputError("gate: qubit index out of range");
    }
}

} // namespace detail

/// RX(angle) = exp(-i angle X/2) on one qubit, in place.
inline auto apply_rx(StateVector &state, std::size_t qubit, double angle)
    -> void {
    detail::check_qubit(state, qubit);
    const double c = std::cos(0.5 * angle);
    const std::complex<double> ms{0.0, -std::sin(0.5 * angle)};
    const std::size_t bit = std::size_t{1} << qubit;
    auto amp = state.amplitudes();
    for (std::size_t base = 0; base < amp.size(); base += 2 * bit) {
        for (std::size_t k = base; k < base + bit; ++k) {
            const auto a0 = amp[k];
            const auto a1 = amp[k | bit];
            amp[k] = c * a0 + ms * a1;
            amp[k | bit] = ms * a0 + c * a1;
        }
    }
}

/// RY(angle) = exp(-i angle Y/2) on one qubit, in place.
inline auto apply_ry(StateVector &state, std::size_t qubit, double angle)
    -> void {
    detail::check_qubit(state, qubit);
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const std::size_t bit = std::size_t{1} << qubit;
    auto amp = state.amplitudes();
    for (std::size_t base = 0; base < amp.size(); base += 2 * bit) {
        for (std::size_t k = base; k < base + bit; ++k) {
            const auto a0 = amp[k];
            const auto a1 = amp[k | bit];
            amp[k] = c * a0 - s * a1;
            amp[k | bit] = s * a0 + c * a1;
        }
    }
}

/// Controlled-Z on a pair: negates amplitudes with both bits set, in place.
inline auto apply_cz(StateVector &state, const QubitPair &pair) -> void {
    detail::check_qubit(state, pair.first);
    detail::check_qubit(state, pair.second);
    if (pair.first == pair.second) {
        throw InvalidInputError("apply_cz: pair members must be distinct");
    }
    const std::size_t mask =
        (std::size_t{1} << pair.first) | (std::size_t{1} << pair.second);
    auto amp = state.amplitudes();
    for (std::size_t k = 0; k < amp.size(); ++k) {
        if ((k & mask) == mask) {
            amp[k] = -amp[k];
        }
    }
}

namespace detail {

/// Bit-mask form of a Pauli string for index arithmetic on N <= 20 qubits.
struct PauliMasks {
    std::uint32_t flip;   // X and Y factor positions (index flip)
    std::uint32_t parity; // Z and Y factor positions (parity phase)
    unsigned y_count;     // global i^y_count factor
    double sign;
};

inline auto make_masks(const PauliString &p) -> PauliMasks {
    if (p.size() > StateVector::kMaxQubits) {
        throw ResourceError("pauli masks: string longer than the qubit cap");
    }
    PauliMasks m{0, 0, 0, static_cast<double>(p.sign())};
    for (std::size_t q = 0; q < p.size(); ++q) {
        switch (p.code(q)) {
        case PauliString::kX:
            m.flip |= std::uint32_t{1} << q;
            break;
        case PauliString::kY:
            m.flip |= std::uint32_t{1} << q;
            m.parity |= std::uint32_t{1} << q;
            ++m.y_count;
            break;
        case PauliString::kZ:
            m.parity |= std::uint32_t{1} << q;
            break;
        default:
            break;
        }
    }
    return m;
}

/// sign * i^y_count as a complex unit.
inline auto global_phase(const PauliMasks &m) -> std::complex<double> {
    static constexpr std::array<std::complex<double>, 4> kPowI{
        std::complex<double>{1.0, 0.0}, std::complex<double>{0.0, 1.0},
        std::complex<double>{-1.0, 0.0}, std::complex<double>{0.0, -1.0}};
    return m.sign * kPowI[m.y_count % 4];
}

} // namespace detail

/**
 * @brief <psi| sigma |psi> as a complex number.
 *
 * Hermiticity makes the physical value real; the imaginary part is exposed so
 * tests can assert it vanishes to tolerance.
 */
inline auto pauli_expectation(const StateVector &state, const PauliString &p)
    -> std::complex<double> {
    if (p.size() != state.n_qubits()) {
        throw InvalidInputError("pauli_expectation: qubit-count mismatch");
    }
    const auto m = detail::make_masks(p);
    const auto unit = detail::global_phase(m);
    const auto amp = state.amplitudes();
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < amp.size(); ++k) {
        const double par =
            (std::popcount(static_cast<std::uint32_t>(k) & m.parity) & 1) ? -1.0
                                                                          : 1.0;
        acc += std::conj(amp[k ^ m.flip]) * (par * amp[k]);
    }
    return unit * acc;
}

/// dst += coeff * (sigma src), elementwise over basis indices.
inline auto accumulate_pauli(std::span<std::complex<double>> dst,
                             std::span<const std::complex<double>> src,
                             const PauliString &p, double coeff) -> void {
    const auto m = detail::make_masks(p);
    const auto scale = coeff * detail::global_phase(m);
    for (std::size_t k = 0; k < src.size(); ++k) {
        const double par =
            (std::popcount(static_cast<std::uint32_t>(k) & m.parity) & 1) ? -1.0
                                                                          : 1.0;
        dst[k ^ m.flip] += scale * (par * src[k]);
    }
}

/// dst = H src, term by term.
inline auto apply_hamiltonian(std::span<std::complex<double>> dst,
                              std::span<const std::complex<double>> src,
                              const Hamiltonian &hamiltonian) -> void {
    for (auto &v : dst) {
        v = {0.0, 0.0};
    }
    for (const auto &term : hamiltonian.terms()) {
        accumulate_pauli(dst, src, term.string, term.coefficient);
    }
}

/// Run the full circuit on |0...0>.
inline auto run_circuit(const AnsatzSpec &spec, const ParamVector &params)
    -> StateVector {
    validate_params(spec, params);
    StateVector state = StateVector::zero_state(spec.n_qubits());
    for (const auto &op : gate_sequence(spec)) {
        switch (op.kind) {
        case GateOp::Kind::kCz:
            apply_cz(state, {op.qubit0, op.qubit1});
            break;
        case GateOp::Kind::kRx:
            apply_rx(state, op.qubit0, params[op.param]);
            break;
        case GateOp::Kind::kRy:
            apply_ry(state, op.qubit0, params[op.param]);
            break;
        }
    }
    return state;
}

/// C(theta) = sum_terms coeff * <psi| sigma |psi>, term order fixed.
inline auto cost(const AnsatzSpec &spec, const ParamVector &params,
                 const Hamiltonian &hamiltonian) -> double {
    if (hamiltonian.n_qubits() != spec.n_qubits()) {
        throw InvalidInputError("cost: Hamiltonian/ansatz qubit-count mismatch");
    }
    const StateVector state = run_circuit(spec, params);
    double acc = 0.0;
    for (const auto &term : hamiltonian.terms()) {
        acc += term.coefficient * pauli_expectation(state, term.string).real();
    }
    return acc;
}

namespace detail {

/// Im <phi| X_q |ket>, accumulated in fixed index order.
inline auto im_bra_x_ket(std::span<const std::complex<double>> phi,
                         std::span<const std::complex<double>> ket,
                         std::size_t qubit) -> double {
    const std::size_t bit = std::size_t{1} << qubit;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < phi.size(); ++k) {
        acc += std::conj(phi[k]) * ket[k ^ bit];
    }
    return acc.imag();
}

/// Im <phi| Y_q |ket>; (Y ket)[k] = -i (-1)^{k_q} ket[k ^ bit].
inline auto im_bra_y_ket(std::span<const std::complex<double>> phi,
                         std::span<const std::complex<double>> ket,
                         std::size_t qubit) -> double {
    const std::size_t bit = std::size_t{1} << qubit;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < phi.size(); ++k) {
        const double par = (k & bit) ? 1.0 : -1.0;
        // par folds the -i(-1)^{k_q} phase: -i for k_q = 0, +i for k_q = 1.
        acc += std::conj(phi[k]) * (std::complex<double>{0.0, par} * ket[k ^ bit]);
    }
    return acc.imag();
}

} // namespace detail

/**
 * @brief Exact gradient of cost() for every parameter via the adjoint method.
 *
 * Cost: one forward run, one Hamiltonian application, then one reverse sweep
 * over the gates, for O((gates + terms + params) * 2^N) work total.
 * For a rotation gate exp(-i theta P/2) sitting at position m of the circuit,
 * dC/dtheta = Im <phi_m| P |ket_m> with ket_m the state just after gate m and
 * phi_m the costate H U |0> pulled back through the gates after m.
 */
inline auto adjoint_gradient(const AnsatzSpec &spec, const ParamVector &params,
                             const Hamiltonian &hamiltonian) -> std::vector<double> {
    if (hamiltonian.n_qubits() != spec.n_qubits()) {
        throw InvalidInputError(
            "adjoint_gradient: Hamiltonian/ansatz qubit-count mismatch");
    }
    StateVector ket = run_circuit(spec, params);
    StateVector phi = StateVector::zero_state(spec.n_qubits());
    apply_hamiltonian(phi.amplitudes(), ket.amplitudes(), hamiltonian);

    std::vector<double> grad(spec.param_count(), 0.0);
    const auto ops = gate_sequence(spec);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        switch (it->kind) {
        case GateOp::Kind::kCz:
            apply_cz(ket, {it->qubit0, it->qubit1});
            apply_cz(phi, {it->qubit0, it->qubit1});
            break;
        case GateOp::Kind::kRx:
            grad[it->param] = detail::im_bra_x_ket(phi.amplitudes(),
                                                   ket.amplitudes(), it->qubit0);
            apply_rx(ket, it->qubit0, -params[it->param]);
            apply_rx(phi, it->qubit0, -params[it->param]);
            break;
        case GateOp::Kind::kRy:
            grad[it->param] = detail::im_bra_y_ket(phi.amplitudes(),
                                                   ket.amplitudes(), it->qubit0);
            apply_ry(ket, it->qubit0, -params[it->param]);
            apply_ry(phi, it->qubit0, -params[it->param]);
            break;
        }
    }
    return grad;
}

} // namespace pqclab
