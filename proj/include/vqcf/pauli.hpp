// Copyright 2026 The vqcf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqcf/exact.hpp"

namespace vqcf {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char letter_char(PauliLetter l) { return "IXYZ"[static_cast<int>(l)]; }

/// An n-qubit Pauli string with a fourth-root-of-unity phase, stored as an
/// integer exponent of i (mod 4). The phase never becomes a float anywhere
/// in the algebra.
class SignedPauli {
  public:
    SignedPauli() = default;

    explicit SignedPauli(std::size_t n_qubits, int phase_exp = 0)
        : letters_(n_qubits, PauliLetter::I), phase_exp_(mod4(phase_exp)) {}

    SignedPauli(std::vector<PauliLetter> letters, int phase_exp = 0)
        : letters_(std::move(letters)), phase_exp_(mod4(phase_exp)) {}

    /// Parses e.g. "XZ", "-YI", "+iZZ", "-iX".
    static SignedPauli from_string(const std::string& s) {
        std::size_t pos = 0;
        int phase = 0;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') phase = 2;
            ++pos;
        }
        if (pos < s.size() && s[pos] == 'i') {
            phase += 1;
            ++pos;
        }
        std::vector<PauliLetter> letters;
        for (; pos < s.size(); ++pos) {
            switch (s[pos]) {
                case 'I': letters.push_back(PauliLetter::I); break;
                case 'X': letters.push_back(PauliLetter::X); break;
                case 'Y': letters.push_back(PauliLetter::Y); break;
                case 'Z': letters.push_back(PauliLetter::Z); break;
                default:
                    throw std::invalid_argument(
                        std::string("invalid pauli character '") + s[pos] + "'");
            }
        }
        return SignedPauli(std::move(letters), phase);
    }

    static SignedPauli single(std::size_t n_qubits, std::size_t qubit, PauliLetter l) {
        SignedPauli p(n_qubits);
        p.set_letter(qubit, l);
        return p;
    }

    std::size_t n_qubits() const { return letters_.size(); }
    PauliLetter letter(std::size_t q) const { return letters_[q]; }
    void set_letter(std::size_t q, PauliLetter l) { letters_[q] = l; }
    const std::vector<PauliLetter>& letters() const { return letters_; }

    /// Phase as an exponent of i, in {0, 1, 2, 3}.
    int phase_exponent() const { return phase_exp_; }
    std::complex<double> phase() const {
        constexpr std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return table[phase_exp_];
    }
    ExactComplex exact_phase() const { return ExactComplex::unit_phase(phase_exp_); }

    SignedPauli with_extra_phase(int extra_exp) const {
        SignedPauli p = *this;
        p.phase_exp_ = mod4(p.phase_exp_ + extra_exp);
        return p;
    }

    bool is_identity_letters() const {
        for (auto l : letters_)
            if (l != PauliLetter::I) return false;
        return true;
    }

    bool operator==(const SignedPauli& o) const {
        return phase_exp_ == o.phase_exp_ && letters_ == o.letters_;
    }

    std::string str() const {
        static const char* prefix[4] = {"+", "+i", "-", "-i"};
        std::string out = prefix[phase_exp_];
        for (auto l : letters_) out += letter_char(l);
        return out;
    }

    /// Exact product with phase bookkeeping.
    friend SignedPauli multiply(const SignedPauli& a, const SignedPauli& b) {
        if (a.n_qubits() != b.n_qubits())
            throw std::invalid_argument("pauli width mismatch in multiply");
        SignedPauli r(a.n_qubits(), a.phase_exp_ + b.phase_exp_);
        for (std::size_t q = 0; q < a.n_qubits(); ++q) {
            auto [l, k] = letter_product(a.letters_[q], b.letters_[q]);
            r.letters_[q] = l;
            r.phase_exp_ = mod4(r.phase_exp_ + k);
        }
        return r;
    }

    /// True iff the strings commute: even parity of positions where both
    /// letters are non-identity and differ.
    friend bool commutes(const SignedPauli& a, const SignedPauli& b) {
        if (a.n_qubits() != b.n_qubits())
            throw std::invalid_argument("pauli width mismatch in commutes");
        int anti = 0;
        for (std::size_t q = 0; q < a.n_qubits(); ++q) {
            PauliLetter la = a.letters_[q], lb = b.letters_[q];
            if (la != PauliLetter::I && lb != PauliLetter::I && la != lb) ++anti;
        }
        return (anti & 1) == 0;
    }

    /// i^k such that the string is phase * product of X^x Z^z per qubit;
    /// each Y contributes a factor i (Y = i X Z).
    int y_count() const {
        int c = 0;
        for (auto l : letters_)
            if (l == PauliLetter::Y) ++c;
        return c;
    }

    /// <0...0| P |0...0>: the phase if every letter is I or Z, else 0.
    std::optional<int> zero_state_phase_exponent() const {
        for (auto l : letters_)
            if (l == PauliLetter::X || l == PauliLetter::Y) return std::nullopt;
        return phase_exp_;
    }

    std::complex<double> zero_state_expectation() const {
        auto k = zero_state_phase_exponent();
        return k ? ExactComplex::unit_phase(*k).to_complex() : std::complex<double>(0, 0);
    }

    ExactComplex exact_zero_state_expectation() const {
        auto k = zero_state_phase_exponent();
        return k ? ExactComplex::unit_phase(*k) : ExactComplex::zero();
    }

  private:
    static int mod4(int k) { return ((k % 4) + 4) % 4; }

    // Result letter and extra phase exponent of the single-qubit product a*b.
    static std::pair<PauliLetter, int> letter_product(PauliLetter a, PauliLetter b) {
        using L = PauliLetter;
        if (a == L::I) return {b, 0};
        if (b == L::I) return {a, 0};
        if (a == b) return {L::I, 0};
        // X*Y = iZ, Y*Z = iX, Z*X = iY; reversed order flips the sign.
        static constexpr L third[4][4] = {
            {L::I, L::I, L::I, L::I},
            {L::I, L::I, L::Z, L::Y},
            {L::I, L::Z, L::I, L::X},
            {L::I, L::Y, L::X, L::I},
        };
        int ia = static_cast<int>(a), ib = static_cast<int>(b);
        bool cyclic = (ib - ia + 3) % 3 == 1;  // X->Y->Z->X
        return {third[ia][ib], cyclic ? 1 : 3};
    }

    std::vector<PauliLetter> letters_;
    int phase_exp_ = 0;
};

enum class CliffordKind { H, S, CNOT, CZ };

/// Constant gate from the supported Clifford set {H, S, CNOT, CZ}.
struct CliffordGate {
    CliffordKind kind;
    std::vector<std::size_t> qubits;

    static CliffordGate h(std::size_t q) { return {CliffordKind::H, {q}}; }
    static CliffordGate s(std::size_t q) { return {CliffordKind::S, {q}}; }
    static CliffordGate cnot(std::size_t c, std::size_t t) {
        return {CliffordKind::CNOT, {c, t}};
    }
    static CliffordGate cz(std::size_t a, std::size_t b) {
        return {CliffordKind::CZ, {a, b}};
    }

    std::string name() const {
        switch (kind) {
            case CliffordKind::H: return "h";
            case CliffordKind::S: return "s";
            case CliffordKind::CNOT: return "cnot";
            case CliffordKind::CZ: return "cz";
        }
        return "?";
    }
};

enum class ConjugateDirection {
    PushRight,  // g p g^dagger
    Absorb,     // g^dagger p g
};

namespace detail {

// Image of a single X_q or Z_q generator under conjugation by g.
inline SignedPauli conjugate_basis(const CliffordGate& g, std::size_t n,
                                   std::size_t q, bool is_x,
                                   ConjugateDirection dir) {
    using K = CliffordKind;
    SignedPauli p(n);
    switch (g.kind) {
        case K::H:
            if (q == g.qubits[0]) {
                p.set_letter(q, is_x ? PauliLetter::Z : PauliLetter::X);
            } else {
                p.set_letter(q, is_x ? PauliLetter::X : PauliLetter::Z);
            }
            return p;
        case K::S:
            if (q == g.qubits[0] && is_x) {
                // S X S^dag = Y;  S^dag X S = -Y.
                p.set_letter(q, PauliLetter::Y);
                if (dir == ConjugateDirection::Absorb) p = p.with_extra_phase(2);
                return p;
            }
            p.set_letter(q, is_x ? PauliLetter::X : PauliLetter::Z);
            return p;
        case K::CNOT: {
            std::size_t c = g.qubits[0], t = g.qubits[1];
            p.set_letter(q, is_x ? PauliLetter::X : PauliLetter::Z);
            if (is_x && q == c) p.set_letter(t, PauliLetter::X);
            if (!is_x && q == t) p.set_letter(c, PauliLetter::Z);
            return p;
        }
        case K::CZ: {
            std::size_t a = g.qubits[0], b = g.qubits[1];
            p.set_letter(q, is_x ? PauliLetter::X : PauliLetter::Z);
            if (is_x && q == a) p.set_letter(b, PauliLetter::Z);
            if (is_x && q == b) p.set_letter(a, PauliLetter::Z);
            return p;
        }
    }
    return p;
}

}  // namespace detail

/// Clifford conjugation of a signed Pauli string. PushRight computes
/// g p g^dagger, Absorb computes g^dagger p g; the two are mutually inverse.
inline SignedPauli clifford_conjugate(const CliffordGate& g, const SignedPauli& p,
                                      ConjugateDirection dir) {
    const std::size_t n = p.n_qubits();
    for (auto q : g.qubits) {
        if (q >= n) throw std::invalid_argument("clifford gate qubit out of range");
    }
    // p = phase * i^{#Y} * prod X_q^{x_q} * prod Z_q^{z_q}; conjugation is a
    // homomorphism, so conjugate each basis factor and multiply back together.
    SignedPauli result(n, p.phase_exponent() + p.y_count());
    for (std::size_t q = 0; q < n; ++q) {
        PauliLetter l = p.letter(q);
        if (l == PauliLetter::X || l == PauliLetter::Y)
            result = multiply(result, detail::conjugate_basis(g, n, q, true, dir));
    }
    for (std::size_t q = 0; q < n; ++q) {
        PauliLetter l = p.letter(q);
        if (l == PauliLetter::Z || l == PauliLetter::Y)
            result = multiply(result, detail::conjugate_basis(g, n, q, false, dir));
    }
    return result;
}

}  // namespace vqcf
