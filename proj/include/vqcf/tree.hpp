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

#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "vqcf/circuit.hpp"
#include "vqcf/exact.hpp"

namespace vqcf {

/// One merged term of the trigonometric-polynomial decomposition:
/// k * prod_j sin(x_j)^{s_j} cos(x_j)^{c_j}
///   * prod_k sin(theta_k)^{sp_k} cos(theta_k)^{cp_k}.
struct LeafTerm {
    std::vector<int> s, c;    // length d
    std::vector<int> sp, cp;  // length w
    ExactComplex k;

    std::vector<int> signature() const {
        std::vector<int> key;
        key.reserve(s.size() + c.size() + sp.size() + cp.size());
        key.insert(key.end(), s.begin(), s.end());
        key.insert(key.end(), c.begin(), c.end());
        key.insert(key.end(), sp.begin(), sp.end());
        key.insert(key.end(), cp.begin(), cp.end());
        return key;
    }
};

struct TreeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct TreeExpander {
    const NormalForm& nf;
    ExactComplex weight;
    std::size_t leaf_cap;
    std::size_t leaves_seen = 0;
    std::map<std::vector<int>, LeafTerm> merged;

    void bump(LeafTerm& sig, const ParamRef& p, bool sine) {
        auto& vec = (p.kind == ParamKind::Feature) ? (sine ? sig.s : sig.c)
                                                   : (sine ? sig.sp : sig.cp);
        ++vec[p.index];
    }

    void unbump(LeafTerm& sig, const ParamRef& p, bool sine) {
        auto& vec = (p.kind == ParamKind::Feature) ? (sine ? sig.s : sig.c)
                                                   : (sine ? sig.sp : sig.cp);
        --vec[p.index];
    }

    // Depth-first from the last generator down; zero-expectation leaves are
    // pruned only at leaf depth (later branches change the observable, so
    // mid-tree pruning would be unsound).
    void expand(std::size_t remaining, const SignedPauli& obs, LeafTerm& sig) {
        if (remaining == 0) {
            if (++leaves_seen > leaf_cap)
                throw TreeLimitError("leaf cap exceeded during tree expansion");
            ExactComplex k = obs.exact_zero_state_expectation() * weight;
            if (k.is_zero()) return;
            auto key = sig.signature();
            auto it = merged.find(key);
            if (it == merged.end()) {
                LeafTerm leaf = sig;
                leaf.k = k;
                merged.emplace(std::move(key), std::move(leaf));
            } else {
                it->second.k += k;
            }
            return;
        }
        const auto& gen = nf.generators[remaining - 1];
        if (commutes(gen.pauli, obs)) {
            expand(remaining - 1, obs, sig);
            return;
        }
        // cos child: observable unchanged.
        bump(sig, gen.param, false);
        expand(remaining - 1, obs, sig);
        unbump(sig, gen.param, false);
        // sin child: observable <- i P O.
        bump(sig, gen.param, true);
        SignedPauli next = multiply(gen.pauli, obs).with_extra_phase(1);
        expand(remaining - 1, next, sig);
        unbump(sig, gen.param, true);
    }
};

}  // namespace detail

/// Expands the binary tree of one normal form into merged leaf terms.
/// `weight` scales every k (for observable terms entering by linearity).
inline std::vector<LeafTerm> build_leaves(const NormalForm& nf,
                                          const ExactComplex& weight = ExactComplex::one(),
                                          std::size_t leaf_cap = std::size_t{1} << 22) {
    detail::TreeExpander ex{nf, weight, leaf_cap};
    LeafTerm sig;
    sig.s.assign(nf.d, 0);
    sig.c.assign(nf.d, 0);
    sig.sp.assign(nf.w, 0);
    sig.cp.assign(nf.w, 0);
    ex.expand(nf.generators.size(), nf.observable, sig);
    std::vector<LeafTerm> out;
    out.reserve(ex.merged.size());
    for (auto& [key, leaf] : ex.merged)
        if (!leaf.k.is_zero()) out.push_back(std::move(leaf));
    return out;
}

/// Leaves of a full circuit with a weighted observable: one tree per term,
/// k scaled by the (exactly converted) weight, results merged.
inline std::vector<LeafTerm> build_circuit_leaves(
    const Circuit& c, const Observable& obs,
    std::size_t leaf_cap = std::size_t{1} << 22) {
    auto nfs = to_normal_forms(c, obs);
    std::map<std::vector<int>, LeafTerm> merged;
    for (const auto& [weight, nf] : nfs) {
        auto leaves = build_leaves(nf, ExactComplex(rational_from_double(weight)), leaf_cap);
        for (auto& leaf : leaves) {
            auto key = leaf.signature();
            auto it = merged.find(key);
            if (it == merged.end())
                merged.emplace(std::move(key), std::move(leaf));
            else
                it->second.k += leaf.k;
        }
    }
    std::vector<LeafTerm> out;
    for (auto& [key, leaf] : merged)
        if (!leaf.k.is_zero()) out.push_back(std::move(leaf));
    return out;
}

/// Numeric value of the reconstruction identity at one point. Equals the
/// circuit expectation (oracle-checked); the imaginary parts of the k's
/// cancel for real-valued models.
inline double evaluate_reconstruction(std::span<const LeafTerm> leaves,
                                      std::span<const double> x,
                                      std::span<const double> theta) {
    std::complex<double> total = 0;
    for (const auto& leaf : leaves) {
        if (leaf.s.size() != x.size() || leaf.sp.size() != theta.size())
            throw std::invalid_argument("dimension mismatch in reconstruction");
        double factor = 1.0;
        for (std::size_t j = 0; j < x.size(); ++j)
            factor *= std::pow(std::sin(x[j]), leaf.s[j]) *
                      std::pow(std::cos(x[j]), leaf.c[j]);
        for (std::size_t k = 0; k < theta.size(); ++k)
            factor *= std::pow(std::sin(theta[k]), leaf.sp[k]) *
                      std::pow(std::cos(theta[k]), leaf.cp[k]);
        total += leaf.k.to_complex() * factor;
    }
    return total.real();
}

}  // namespace vqcf
