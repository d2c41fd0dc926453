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

#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vqcf/pauli.hpp"

namespace vqcf {

enum class ParamKind { Feature, Variational };

/// Reference to either input feature x_j or variational parameter theta_k.
struct ParamRef {
    ParamKind kind;
    std::size_t index;

    static ParamRef feature(std::size_t j) { return {ParamKind::Feature, j}; }
    static ParamRef theta(std::size_t k) { return {ParamKind::Variational, k}; }

    bool operator==(const ParamRef& o) const {
        return kind == o.kind && index == o.index;
    }
};

enum class RotationAxis { X, Y, Z };

inline PauliLetter axis_letter(RotationAxis a) {
    switch (a) {
        case RotationAxis::X: return PauliLetter::X;
        case RotationAxis::Y: return PauliLetter::Y;
        case RotationAxis::Z: return PauliLetter::Z;
    }
    return PauliLetter::I;
}

/// Single-qubit Pauli rotation R_P(phi) = exp(-i phi P / 2) whose angle is
/// the referenced parameter, used raw.
struct PauliRotation {
    RotationAxis axis;
    std::size_t qubit;
    ParamRef param;
};

using Gate = std::variant<CliffordGate, PauliRotation>;

/// Circuit IR: ordered gates (time order, first gate applied first),
/// d input features and w variational parameters.
struct Circuit {
    std::size_t n_qubits = 0;
    std::size_t d = 0;
    std::size_t w = 0;
    std::vector<Gate> gates;

    /// How often each feature appears as a rotation angle.
    std::vector<int> encoding_counts() const {
        std::vector<int> counts(d, 0);
        for (const auto& g : gates) {
            if (const auto* r = std::get_if<PauliRotation>(&g)) {
                if (r->param.kind == ParamKind::Feature) ++counts[r->param.index];
            }
        }
        return counts;
    }

    std::size_t rotation_count() const {
        std::size_t c = 0;
        for (const auto& g : gates)
            if (std::holds_alternative<PauliRotation>(g)) ++c;
        return c;
    }
};

/// Real-weighted sum of Pauli strings. Hermitian by construction when the
/// string phases are +/-1 (enforced by validate).
struct Observable {
    struct Term {
        double weight;
        SignedPauli pauli;
    };
    std::vector<Term> terms;

    static Observable single(SignedPauli p, double weight = 1.0) {
        return Observable{{{weight, std::move(p)}}};
    }
};

/// Canonical normal form (P_1, ..., P_L | O): pure Pauli rotations followed
/// by the Clifford-conjugated observable.
struct NormalForm {
    struct Generator {
        SignedPauli pauli;
        ParamRef param;
    };
    std::size_t n_qubits = 0;
    std::size_t d = 0;
    std::size_t w = 0;
    std::vector<Generator> generators;
    SignedPauli observable;
};

inline std::vector<std::string> validate(const Circuit& c) {
    std::vector<std::string> errors;
    std::vector<bool> feature_seen(c.d, false), theta_seen(c.w, false);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const std::string where = "gate " + std::to_string(i) + ": ";
        if (const auto* g = std::get_if<CliffordGate>(&c.gates[i])) {
            std::set<std::size_t> seen;
            for (auto q : g->qubits) {
                if (q >= c.n_qubits)
                    errors.push_back(where + "qubit index out of range");
                if (!seen.insert(q).second)
                    errors.push_back(where + "duplicate qubit");
            }
            std::size_t expect = (g->kind == CliffordKind::H || g->kind == CliffordKind::S) ? 1 : 2;
            if (g->qubits.size() != expect)
                errors.push_back(where + "wrong qubit count for " + g->name());
        } else {
            const auto& r = std::get<PauliRotation>(c.gates[i]);
            if (r.qubit >= c.n_qubits)
                errors.push_back(where + "qubit index out of range");
            if (r.param.kind == ParamKind::Feature) {
                if (r.param.index >= c.d)
                    errors.push_back(where + "feature index out of range");
                else
                    feature_seen[r.param.index] = true;
            } else {
                if (r.param.index >= c.w)
                    errors.push_back(where + "variational index out of range");
                else
                    theta_seen[r.param.index] = true;
            }
        }
    }
    for (std::size_t j = 0; j < c.d; ++j)
        if (!feature_seen[j])
            errors.push_back("feature index " + std::to_string(j) + " never used");
    for (std::size_t k = 0; k < c.w; ++k)
        if (!theta_seen[k])
            errors.push_back("variational index " + std::to_string(k) + " never used");
    return errors;
}

inline void validate_observable(const Observable& obs, std::size_t n_qubits) {
    if (obs.terms.empty())
        throw std::invalid_argument("observable has no terms");
    for (const auto& t : obs.terms) {
        if (t.pauli.n_qubits() != n_qubits)
            throw std::invalid_argument("observable width does not match circuit");
        if (t.pauli.phase_exponent() % 2 != 0)
            throw std::invalid_argument("observable term has imaginary phase");
        if (!std::isfinite(t.weight))
            throw std::invalid_argument("observable weight not finite");
    }
}

/// Sweeps all Clifford gates to the end of the circuit. Each rotation
/// generator is conjugated by the Clifford word accumulated before it and
/// the full word is absorbed into each observable term. One normal form
/// per observable term; the represented function is unchanged.
inline std::vector<std::pair<double, NormalForm>> to_normal_forms(
    const Circuit& c, const Observable& obs) {
    auto errors = validate(c);
    if (!errors.empty())
        throw std::invalid_argument("invalid circuit: " + errors.front());
    validate_observable(obs, c.n_qubits);

    std::vector<CliffordGate> word;  // Cliffords seen so far, time order
    std::vector<NormalForm::Generator> generators;
    for (const auto& g : c.gates) {
        if (const auto* cg = std::get_if<CliffordGate>(&g)) {
            word.push_back(*cg);
        } else {
            const auto& r = std::get<PauliRotation>(g);
            SignedPauli p = SignedPauli::single(c.n_qubits, r.qubit, axis_letter(r.axis));
            // Moving the word W past R_P turns it into R_{W^dag P W};
            // apply the most recent gate first.
            for (auto it = word.rbegin(); it != word.rend(); ++it)
                p = clifford_conjugate(*it, p, ConjugateDirection::Absorb);
            generators.push_back({std::move(p), r.param});
        }
    }

    std::vector<std::pair<double, NormalForm>> out;
    out.reserve(obs.terms.size());
    for (const auto& term : obs.terms) {
        SignedPauli o = term.pauli;
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            o = clifford_conjugate(*it, o, ConjugateDirection::Absorb);
        NormalForm nf;
        nf.n_qubits = c.n_qubits;
        nf.d = c.d;
        nf.w = c.w;
        nf.generators = generators;
        nf.observable = std::move(o);
        out.emplace_back(term.weight, std::move(nf));
    }
    return out;
}

}  // namespace vqcf
