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

// Test-only oracles kept independent of the implementation paths they check.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "vqcf/circuit.hpp"
#include "vqcf/pauli.hpp"

namespace vqcf::testing {

/// Dense matrix of a signed Pauli string (independent multiplication route).
inline Eigen::MatrixXcd pauli_matrix(const SignedPauli& p) {
    using M2 = Eigen::Matrix2cd;
    const std::complex<double> i(0, 1);
    M2 mats[4];
    mats[0] << 1, 0, 0, 1;        // I
    mats[1] << 0, 1, 1, 0;        // X
    mats[2] << 0, -i, i, 0;       // Y
    mats[3] << 1, 0, 0, -1;       // Z
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1) * p.phase();
    // Qubit q is bit q of the basis index, so qubit n-1 is the leftmost
    // tensor factor; it must end up as the outermost Kronecker block.
    for (std::size_t q = 0; q < p.n_qubits(); ++q) {
        const M2& m = mats[static_cast<int>(p.letter(q))];
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        next << m(0, 0) * out, m(0, 1) * out, m(1, 0) * out, m(1, 1) * out;
        out = next;
    }
    return out;
}

inline SignedPauli random_pauli(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> letter(0, 3), phase(0, 3);
    std::vector<PauliLetter> letters(n);
    for (auto& l : letters) l = static_cast<PauliLetter>(letter(rng));
    return SignedPauli(std::move(letters), phase(rng));
}

inline CliffordGate random_clifford(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, n >= 2 ? 3 : 1);
    std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
    switch (kind(rng)) {
        case 0: return CliffordGate::h(qubit(rng));
        case 1: return CliffordGate::s(qubit(rng));
        default: {
            std::size_t a = qubit(rng), b = qubit(rng);
            while (b == a) b = qubit(rng);
            return kind(rng) % 2 ? CliffordGate::cz(a, b) : CliffordGate::cnot(a, b);
        }
    }
}

struct RandomCircuitOptions {
    std::size_t max_qubits = 3;
    std::size_t max_rotations = 8;
    std::size_t max_cliffords = 6;
    std::size_t max_d = 2;
    std::size_t max_w = 3;
};

/// Random valid Clifford+Pauli circuit with a random single-string
/// observable; every declared feature/theta index is used at least once.
inline std::pair<Circuit, Observable> random_circuit(std::mt19937_64& rng,
                                                     const RandomCircuitOptions& opts = {}) {
    std::uniform_int_distribution<std::size_t> nq(1, opts.max_qubits);
    Circuit c;
    c.n_qubits = nq(rng);
    std::uniform_int_distribution<std::size_t> nrot(1, opts.max_rotations);
    std::uniform_int_distribution<std::size_t> nclif(0, opts.max_cliffords);
    std::size_t rotations = nrot(rng);
    std::size_t cliffords = nclif(rng);
    std::uniform_int_distribution<std::size_t> dd(0, std::min(opts.max_d, rotations));
    c.d = dd(rng);
    std::uniform_int_distribution<std::size_t> ww(rotations > c.d ? 1 : 0,
                                                  std::min(opts.max_w, std::max<std::size_t>(
                                                                           1, rotations - c.d)));
    c.w = c.d >= rotations ? 0 : ww(rng);

    // Guarantee contiguous parameter usage: first d rotations use features
    // 0..d-1, next w use thetas, the rest are random references.
    std::vector<ParamRef> params;
    for (std::size_t j = 0; j < c.d; ++j) params.push_back(ParamRef::feature(j));
    for (std::size_t k = 0; k < c.w; ++k) params.push_back(ParamRef::theta(k));
    std::uniform_int_distribution<std::size_t> pick(0, c.d + c.w - 1);
    while (params.size() < rotations) {
        std::size_t i = pick(rng);
        params.push_back(i < c.d ? ParamRef::feature(i) : ParamRef::theta(i - c.d));
    }
    std::shuffle(params.begin(), params.end(), rng);

    std::uniform_int_distribution<int> axis(0, 2);
    std::uniform_int_distribution<std::size_t> qubit(0, c.n_qubits - 1);
    std::vector<Gate> rot_gates;
    for (const auto& p : params)
        rot_gates.push_back(PauliRotation{static_cast<RotationAxis>(axis(rng)), qubit(rng), p});
    std::vector<Gate> clif_gates;
    for (std::size_t i = 0; i < cliffords; ++i)
        clif_gates.push_back(random_clifford(c.n_qubits, rng));
    // Interleave.
    std::size_t ri = 0, ci = 0;
    std::bernoulli_distribution coin(static_cast<double>(rotations) /
                                     (rotations + cliffords + 1e-9));
    while (ri < rot_gates.size() || ci < clif_gates.size()) {
        if (ci >= clif_gates.size() || (ri < rot_gates.size() && coin(rng)))
            c.gates.push_back(rot_gates[ri++]);
        else
            c.gates.push_back(clif_gates[ci++]);
    }

    // Random nonzero Hermitian single-string observable.
    SignedPauli o = random_pauli(c.n_qubits, rng);
    o = SignedPauli(o.letters(), o.phase_exponent() & 2 ? 2 : 0);
    return {std::move(c), Observable::single(std::move(o))};
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng,
                                         double lo = -M_PI, double hi = M_PI) {
    std::uniform_real_distribution<double> uni(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = uni(rng);
    return v;
}

/// Uniform periodic product quadrature of g over [-pi, pi]^w, normalized by
/// (2 pi)^w. Exact for trigonometric polynomials of per-dimension degree
/// below `nodes`.
template <typename F>
std::complex<double> periodic_mean(F&& g, std::size_t w, std::size_t nodes = 64) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < w; ++k) total *= nodes;
    std::complex<double> acc = 0;
    std::vector<double> theta(w);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t k = 0; k < w; ++k) {
            theta[k] = -M_PI + 2.0 * M_PI * (rem % nodes) / nodes;
            rem /= nodes;
        }
        acc += g(theta);
    }
    return acc / static_cast<double>(total);
}

}  // namespace vqcf::testing
