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
 * N-qubit Pauli strings and Hamiltonians.
 *
 * A Pauli string stores one factor code per qubit (0=I, 1=X, 2=Y, 3=Z) packed
 * two bits per qubit, plus a sign in {+1, -1}. Qubit 0 is the leftmost letter
 * in the text form, e.g. "ZZII" has Z factors on qubits 0 and 1.
 *
 * Conjugation by a controlled-Z gate maps Pauli strings to Pauli strings; the
 * full 16-case two-qubit table is hard-coded here and is checked against a
 * 4x4 matrix oracle by the test suite (see verify.hpp).
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pqclab/errors.hpp"

namespace pqclab {

/// An unordered pair of distinct qubit indices acted on by one CZ gate.
struct QubitPair {
    std::size_t first;
    std::size_t second;

    friend auto operator==(const QubitPair &, const QubitPair &) -> bool = default;
};

/**
 * @brief Immutable N-qubit Pauli string with a sign.
 *
 * Factor codes are packed 2 bits per qubit into 64-bit words in little-endian
 * qubit order, giving O(1) per-factor access and deterministic serialization.
 */
class PauliString {
  public:
    static constexpr std::uint8_t kI = 0;
    static constexpr std::uint8_t kX = 1;
    static constexpr std::uint8_t kY = 2;
    static constexpr std::uint8_t kZ = 3;

    /// Build from explicit factor codes; sign defaults to +1.
    explicit PauliString(std::span<const std::uint8_t> codes, int sign = +1) {
        if (codes.empty()) {
            throw InvalidInputError("PauliString: empty code sequence");
        }
        if (sign != 1 && sign != -1) {
            throw InvalidInputError("PauliString: sign must be +1 or -1");
        }
        n_ = codes.size();
        sign_ = static_cast<std::int8_t>(sign);
        words_.assign((n_ + kCodesPerWord - 1) / kCodesPerWord, 0);
        for (std::size_t q = 0; q < n_; ++q) {
            if (codes[q] > 3) {
                throw InvalidInputError("PauliString: factor code out of range");
            }
            words_[q / kCodesPerWord] |= static_cast<std::uint64_t>(codes[q])
                                         << (2 * (q % kCodesPerWord));
        }
    }

    PauliString(std::initializer_list<std::uint8_t> codes, int sign = +1)
        : PauliString(std::span<const std::uint8_t>(codes.begin(), codes.size()),
                      sign) {}

    /// Parse a word like "ZZII"; qubit 0 is the leftmost letter.
    static auto from_text(std::string_view word, int sign = +1) -> PauliString {
        std::vector<std::uint8_t> codes;
        codes.reserve(word.size());
        for (char c : word) {
            switch (c) {
            case 'I':
                codes.push_back(kI);
                break;
            case 'X':
                codes.push_back(kX);
                break;
            case 'Y':
                codes.push_back(kY);
                break;
            case 'Z':
                codes.push_back(kZ);
                break;
            default:
                throw InvalidInputError(
                    std::string("PauliString: invalid letter '") + c + "'");
            }
        }
        return PauliString(codes, sign);
    }

    /// Identity string of length n.
    static auto identity(std::size_t n) -> PauliString {
        return PauliString(std::vector<std::uint8_t>(n, kI), +1);
    }

    /// Number of qubits.
    [[nodiscard]] auto size() const -> std::size_t { return n_; }

    /// Factor code on one qubit.
    [[nodiscard]] auto code(std::size_t qubit) const -> std::uint8_t {
        if (qubit >= n_) {
            throw InvalidInputError("PauliString: qubit index out of range");
        }
        return static_cast<std::uint8_t>(
            (words_[qubit / kCodesPerWord] >> (2 * (qubit % kCodesPerWord))) & 3U);
    }

    [[nodiscard]] auto sign() const -> int { return sign_; }

    /// Count of non-identity factors (the string's locality).
    [[nodiscard]] auto locality() const -> std::size_t {
        std::size_t count = 0;
        for (std::size_t q = 0; q < n_; ++q) {
            count += (code(q) != kI) ? 1 : 0;
        }
        return count;
    }

    [[nodiscard]] auto is_identity() const -> bool { return locality() == 0; }

    /// True when every factor is I or Z (diagonal in the computational basis).
    [[nodiscard]] auto is_z_diagonal() const -> bool {
        for (std::size_t q = 0; q < n_; ++q) {
            const auto c = code(q);
            if (c == kX || c == kY) {
                return false;
            }
        }
        return true;
    }

    /// Text form without the sign, e.g. "ZZII".
    [[nodiscard]] auto text() const -> std::string {
        static constexpr std::array<char, 4> kLetters{'I', 'X', 'Y', 'Z'};
        std::string out(n_, 'I');
        for (std::size_t q = 0; q < n_; ++q) {
            out[q] = kLetters[code(q)];
        }
        return out;
    }

    /// Copy with the given sign.
    [[nodiscard]] auto with_sign(int sign) const -> PauliString {
        PauliString out = *this;
        if (sign != 1 && sign != -1) {
            throw InvalidInputError("PauliString: sign must be +1 or -1");
        }
        out.sign_ = static_cast<std::int8_t>(sign);
        return out;
    }

    /// Equality compares codes and sign.
    friend auto operator==(const PauliString &a, const PauliString &b) -> bool {
        return a.n_ == b.n_ && a.sign_ == b.sign_ && a.words_ == b.words_;
    }

    /// Lexicographic order on the code words, ignoring the sign; used to
    /// canonicalize Hamiltonian term order.
    [[nodiscard]] auto codes_less(const PauliString &other) const -> bool {
        if (n_ != other.n_) {
            return n_ < other.n_;
        }
        return words_ < other.words_;
    }

    [[nodiscard]] auto codes_equal(const PauliString &other) const -> bool {
        return n_ == other.n_ && words_ == other.words_;
    }

  private:
    static constexpr std::size_t kCodesPerWord = 32;

    std::size_t n_ = 0;
    std::int8_t sign_ = 1;
    std::vector<std::uint64_t> words_;
};

namespace detail {

// CZ conjugation of a two-qubit Pauli pair: CZ sigma CZ = sign * sigma'.
// Indexed by 4*code_a + code_b. Derived from the matrix oracle; the mapping
// is an involution and the sign flips exactly for the (X,Y)/(Y,X) cases.
inline constexpr std::array<std::uint8_t, 16> kCzCodeA = {
    0, 3, 3, 0, // (I,I) (I,X) (I,Y) (I,Z)
    1, 2, 2, 1, // (X,I) (X,X) (X,Y) (X,Z)
    2, 1, 1, 2, // (Y,I) (Y,X) (Y,Y) (Y,Z)
    3, 0, 0, 3, // (Z,I) (Z,X) (Z,Y) (Z,Z)
};
inline constexpr std::array<std::uint8_t, 16> kCzCodeB = {
    0, 1, 2, 3, //
    3, 2, 1, 0, //
    3, 2, 1, 0, //
    0, 1, 2, 3, //
};
inline constexpr std::array<std::int8_t, 16> kCzSign = {
    1, 1, 1, 1, //
    1, 1, -1, 1, //
    1, -1, 1, 1, //
    1, 1, 1, 1, //
};

} // namespace detail

/**
 * @brief Conjugate a Pauli string by one CZ gate: returns CZ sigma CZ.
 *
 * Only the two indexed factors change; the sign flips exactly when the pair
 * of factors is of (X,Y)/(Y,X) type.
 */
inline auto cz_conjugate(const PauliString &p, const QubitPair &pair)
    -> PauliString {
    if (pair.first == pair.second) {
        throw InvalidInputError("cz_conjugate: pair members must be distinct");
    }
    if (pair.first >= p.size() || pair.second >= p.size()) {
        throw InvalidInputError("cz_conjugate: qubit index out of range");
    }
    const std::size_t idx =
        4U * p.code(pair.first) + p.code(pair.second);
    std::vector<std::uint8_t> codes(p.size());
    for (std::size_t q = 0; q < p.size(); ++q) {
        codes[q] = p.code(q);
    }
    codes[pair.first] = detail::kCzCodeA[idx];
    codes[pair.second] = detail::kCzCodeB[idx];
    return PauliString(codes, p.sign() * detail::kCzSign[idx]);
}

/// Conjugate through a whole CZ layer, applying the pairs left to right.
/// Strings whose non-identity factors are all Z are fixed points.
inline auto cz_layer_conjugate(const PauliString &p,
                               std::span<const QubitPair> pairs) -> PauliString {
    PauliString out = p;
    for (const auto &pair : pairs) {
        out = cz_conjugate(out, pair);
    }
    return out;
}

/// <0...0| sigma |0...0>: the sign when the string is Z-diagonal, else 0.
inline auto expectation_on_zero(const PauliString &p) -> double {
    return p.is_z_diagonal() ? static_cast<double>(p.sign()) : 0.0;
}

/// One weighted term of a Hamiltonian.
struct PauliTerm {
    double coefficient;
    PauliString string;
};

/**
 * @brief A real-weighted sum of non-identity Pauli strings on n qubits.
 *
 * Construction canonicalizes: string signs are folded into the coefficients,
 * terms are sorted by factor codes, duplicates are merged by summing, and
 * exact-zero coefficients are dropped. All-identity terms are rejected (they
 * shift the cost by a constant and corrupt the term count).
 */
class Hamiltonian {
  public:
    Hamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms)
        : n_qubits_(n_qubits) {
        if (n_qubits == 0) {
            throw InvalidInputError("Hamiltonian: n_qubits must be positive");
        }
        for (auto &term : terms) {
            if (term.string.size() != n_qubits) {
                throw InvalidInputError(
                    "Hamiltonian: term length does not match n_qubits");
            }
            if (term.string.is_identity()) {
                throw InvalidInputError(
                    "Hamiltonian: all-identity terms are not allowed");
            }
            if (term.string.sign() < 0) {
                term.coefficient = -term.coefficient;
                term.string = term.string.with_sign(+1);
            }
        }
        std::sort(terms.begin(), terms.end(),
                  [](const PauliTerm &a, const PauliTerm &b) {
                      return a.string.codes_less(b.string);
                  });
        for (auto &term : terms) {
            if (!terms_.empty() &&
                terms_.back().string.codes_equal(term.string)) {
                terms_.back().coefficient += term.coefficient;
            } else {
                terms_.push_back(std::move(term));
            }
        }
        std::erase_if(terms_,
                      [](const PauliTerm &t) { return t.coefficient == 0.0; });
    }

    [[nodiscard]] auto n_qubits() const -> std::size_t { return n_qubits_; }

    [[nodiscard]] auto terms() const -> const std::vector<PauliTerm> & {
        return terms_;
    }

    /// Term count |N|.
    [[nodiscard]] auto size() const -> std::size_t { return terms_.size(); }

    /// Largest term locality (the S of an S-local Hamiltonian).
    [[nodiscard]] auto max_locality() const -> std::size_t {
        std::size_t s = 0;
        for (const auto &term : terms_) {
            s = std::max(s, term.string.locality());
        }
        return s;
    }

    /// True when every coefficient is exactly 1 (the unweighted-sum form the
    /// closed-form gradient bounds are stated for).
    [[nodiscard]] auto has_unit_coefficients() const -> bool {
        for (const auto &term : terms_) {
            if (term.coefficient != 1.0) {
                return false;
            }
        }
        return true;
    }

  private:
    std::size_t n_qubits_;
    std::vector<PauliTerm> terms_;
};

/// Nearest-neighbor ZZ chain with open ends: sum of Z_j Z_{j+1}, unit weights.
inline auto zz_chain(std::size_t n) -> Hamiltonian {
    if (n < 2) {
        throw InvalidInputError("zz_chain: need at least 2 qubits");
    }
    std::vector<PauliTerm> terms;
    terms.reserve(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        std::vector<std::uint8_t> codes(n, PauliString::kI);
        codes[j] = PauliString::kZ;
        codes[j + 1] = PauliString::kZ;
        terms.push_back({1.0, PauliString(codes)});
    }
    return {n, std::move(terms)};
}

/// Open-boundary Heisenberg chain: sum of XX + YY + ZZ on neighbors.
inline auto heisenberg_chain(std::size_t n) -> Hamiltonian {
    if (n < 2) {
        throw InvalidInputError("heisenberg_chain: need at least 2 qubits");
    }
    std::vector<PauliTerm> terms;
    terms.reserve(3 * (n - 1));
    for (std::size_t j = 0; j + 1 < n; ++j) {
        for (std::uint8_t c :
             {PauliString::kX, PauliString::kY, PauliString::kZ}) {
            std::vector<std::uint8_t> codes(n, PauliString::kI);
            codes[j] = c;
            codes[j + 1] = c;
            terms.push_back({1.0, PauliString(codes)});
        }
    }
    return {n, std::move(terms)};
}

/**
 * @brief Parse the line-oriented text Hamiltonian format.
 *
 * Each line is "coeff PAULI_WORD" with whitespace-separated fields, e.g.
 * "1.0 ZZII". Lines that are blank or start with '#' are skipped. Duplicate
 * words merge by summing coefficients. The qubit count is the word length,
 * which must be consistent across lines. Errors carry the 1-based line.
 */
inline auto parse_hamiltonian(std::string_view text) -> Hamiltonian {
    std::vector<PauliTerm> terms;
    std::size_t n_qubits = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') {
            continue;
        }
        std::vector<std::string> fields;
        std::size_t cursor = first;
        while (cursor < line.size()) {
            const auto end = line.find_first_of(" \t\r", cursor);
            const auto len =
                (end == std::string_view::npos) ? line.size() - cursor : end - cursor;
            fields.emplace_back(line.substr(cursor, len));
            if (end == std::string_view::npos) {
                break;
            }
            cursor = line.find_first_not_of(" \t\r", end);
            if (cursor == std::string_view::npos) {
                break;
            }
        }
        if (fields.size() != 2) {
            throw ParseError(line_no, "expected 'coeff PAULI_WORD'");
        }
        double coeff = 0.0;
        try {
            std::size_t consumed = 0;
            coeff = std::stod(fields[0], &consumed);
            if (consumed != fields[0].size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception &) {
            throw ParseError(line_no,
                             "invalid coefficient '" + fields[0] + "'");
        }
        PauliString string = [&] {
            try {
                return PauliString::from_text(fields[1]);
            } catch (const InvalidInputError &e) {
                throw ParseError(line_no, e.what());
            }
        }();
        if (n_qubits == 0) {
            n_qubits = string.size();
        } else if (string.size() != n_qubits) {
            throw ParseError(line_no, "word length differs from earlier lines");
        }
        if (string.is_identity()) {
            throw ParseError(line_no, "all-identity terms are not allowed");
        }
        terms.push_back({coeff, std::move(string)});
    }
    if (terms.empty()) {
        throw ParseError(line_no, "no terms found");
    }
    return {n_qubits, std::move(terms)};
}

} // namespace pqclab
