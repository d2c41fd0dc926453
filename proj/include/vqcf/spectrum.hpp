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
#include <complex>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vqcf/tree.hpp"

namespace vqcf {

using FrequencyVector = std::vector<int>;

/// Full symmetric hypergrid {omega : |omega_j| <= N(x_j)}, lexicographic.
inline std::vector<FrequencyVector> naive_spectrum(const std::vector<int>& counts) {
    std::vector<FrequencyVector> out;
    FrequencyVector omega(counts.size());
    auto rec = [&](auto&& self, std::size_t j) -> void {
        if (j == counts.size()) {
            out.push_back(omega);
            return;
        }
        for (int w = -counts[j]; w <= counts[j]; ++w) {
            omega[j] = w;
            self(self, j + 1);
        }
    };
    rec(rec, 0);
    return out;
}

namespace detail {

// Single-dimension double binomial sum: the weight with which
// sin^s cos^c feeds frequency omega.
inline BigInt weight_1d(int s, int c, int omega) {
    BigInt total = 0;
    for (int a = 0; a <= s; ++a) {
        for (int b = 0; b <= c; ++b) {
            if (2 * a + 2 * b - s - c != omega) continue;
            BigInt term = binomial(s, a) * binomial(c, b);
            if ((s - a) & 1) term = -term;
            total += term;
        }
    }
    return total;
}

// Terminating Gauss hypergeometric series 2F1(a, b; c; -1) with a <= 0.
inline Rational hyp2f1_neg1(int a, int b, int c) {
    Rational sum = 0;
    Rational term = 1;
    for (int t = 0;; ++t) {
        sum += term;
        if (a + t == 0) break;  // next Pochhammer factor vanishes
        term *= Rational(a + t) * Rational(b + t);
        term /= Rational(c + t) * Rational(t + 1);
        term = -term;
    }
    return sum;
}

// Closed-form evaluation of weight_1d via the hypergeometric identity.
inline BigInt weight_1d_closed_form(int s, int c, int omega) {
    if (((s + c + omega) & 1) != 0) return 0;
    Rational value;
    if (-c - s <= omega && omega <= c - s) {
        value = Rational(binomial(c, (s + c + omega) / 2)) *
                hyp2f1_neg1(-s, -(s + c + omega) / 2, (2 - omega - s + c) / 2);
        if (s & 1) value = -value;
    } else if (c - s < omega && omega <= c + s) {
        // i^{s+c-omega} with an even exponent is (-1)^{(s+c-omega)/2}.
        value = Rational(binomial(s, (omega + s - c) / 2)) *
                hyp2f1_neg1((omega - s - c) / 2, -c, (2 + omega + s - c) / 2);
        if (((s + c - omega) / 2) & 1) value = -value;
    } else {
        return 0;
    }
    if (boost::multiprecision::denominator(value) != 1)
        throw std::logic_error("closed-form weight is not an integer");
    return boost::multiprecision::numerator(value);
}

}  // namespace detail

/// p(s, c, omega): exact product over dimensions of the double binomial
/// sums. Zero whenever |omega_j| > s_j + c_j or s_j + c_j + omega_j is odd
/// for any j.
inline BigInt combinatorial_weight(const std::vector<int>& s,
                                   const std::vector<int>& c,
                                   const FrequencyVector& omega) {
    if (s.size() != c.size() || s.size() != omega.size())
        throw std::invalid_argument("dimension mismatch in combinatorial_weight");
    BigInt p = 1;
    for (std::size_t j = 0; j < s.size(); ++j) {
        p *= detail::weight_1d(s[j], c[j], omega[j]);
        if (p == 0) return 0;
    }
    return p;
}

/// Same value through the terminating hypergeometric closed form.
inline BigInt combinatorial_weight_closed_form(const std::vector<int>& s,
                                               const std::vector<int>& c,
                                               const FrequencyVector& omega) {
    if (s.size() != c.size() || s.size() != omega.size())
        throw std::invalid_argument("dimension mismatch in combinatorial_weight");
    BigInt p = 1;
    for (std::size_t j = 0; j < s.size(); ++j) {
        p *= detail::weight_1d_closed_form(s[j], c[j], omega[j]);
        if (p == 0) return 0;
    }
    return p;
}

/// Frequencies a single (s, c) node can contribute: parity and range
/// constraints hold and p(s, c, omega) != 0.
inline std::vector<FrequencyVector> node_spectrum(const std::vector<int>& s,
                                                  const std::vector<int>& c) {
    std::vector<std::vector<int>> per_dim(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        int range = s[j] + c[j];
        for (int w = -range; w <= range; ++w)
            if (detail::weight_1d(s[j], c[j], w) != 0) per_dim[j].push_back(w);
        if (per_dim[j].empty()) return {};
    }
    std::vector<FrequencyVector> out;
    FrequencyVector omega(s.size());
    auto rec = [&](auto&& self, std::size_t j) -> void {
        if (j == omega.size()) {
            out.push_back(omega);
            return;
        }
        for (int w : per_dim[j]) {
            omega[j] = w;
            self(self, j + 1);
        }
    };
    rec(rec, 0);
    return out;
}

/// Trigonometric polynomial in theta for one frequency: a sum of
/// amplitude * prod_k sin(theta_k)^{sp_k} cos(theta_k)^{cp_k} terms,
/// grouped by unique (sp, cp), all amplitudes nonzero and exact.
struct CoefficientPolynomial {
    struct Term {
        std::vector<int> sp, cp;
        ExactComplex amplitude;
    };
    FrequencyVector frequency;
    std::vector<Term> terms;
};

inline std::complex<double> evaluate_coefficient(const CoefficientPolynomial& poly,
                                                 std::span<const double> theta) {
    std::complex<double> total = 0;
    for (const auto& t : poly.terms) {
        if (t.sp.size() != theta.size())
            throw std::invalid_argument("theta dimension mismatch");
        double factor = 1.0;
        for (std::size_t k = 0; k < theta.size(); ++k)
            factor *= std::pow(std::sin(theta[k]), t.sp[k]) *
                      std::pow(std::cos(theta[k]), t.cp[k]);
        total += t.amplitude.to_complex() * factor;
    }
    return total;
}

/// Exact spectrum and per-frequency coefficient polynomials of one circuit.
struct SpectrumReport {
    std::string circuit_id;
    std::size_t d = 0;
    std::size_t w = 0;
    std::vector<int> encoding_counts;
    std::size_t leaf_count = 0;
    std::vector<CoefficientPolynomial> coefficients;  // sorted lexicographic
    double elapsed_seconds = 0.0;                     // not serialized

    std::vector<FrequencyVector> spectrum() const {
        std::vector<FrequencyVector> out;
        out.reserve(coefficients.size());
        for (const auto& c : coefficients) out.push_back(c.frequency);
        return out;
    }
};

/// Computes Omega and the coefficient polynomials from merged leaf terms.
/// A frequency survives iff for some (s', c') group the exact amplitude
/// A(omega, s', c') = sum_{s,c} k 2^{-sum(s+c)} (-i)^{sum s} p(s, c, omega)
/// is nonzero; candidate frequencies are enumerated from the leaf
/// signatures actually present, not the whole naive grid.
inline SpectrumReport exact_spectrum(std::span<const LeafTerm> leaves,
                                     std::size_t d, std::size_t w,
                                     std::vector<int> encoding_counts,
                                     std::string circuit_id = {}) {
    SpectrumReport report;
    report.circuit_id = std::move(circuit_id);
    report.d = d;
    report.w = w;
    report.encoding_counts = std::move(encoding_counts);
    report.leaf_count = leaves.size();

    std::set<FrequencyVector> candidates;
    std::set<std::pair<std::vector<int>, std::vector<int>>> signatures;
    for (const auto& leaf : leaves) {
        if (signatures.insert({leaf.s, leaf.c}).second)
            for (auto& omega : node_spectrum(leaf.s, leaf.c))
                candidates.insert(std::move(omega));
    }
    for (const auto& omega : candidates) {
        std::map<std::pair<std::vector<int>, std::vector<int>>, ExactComplex> groups;
        for (const auto& leaf : leaves) {
            BigInt p = combinatorial_weight(leaf.s, leaf.c, omega);
            if (p == 0) continue;
            int sum_sc = 0, sum_s = 0;
            for (std::size_t j = 0; j < d; ++j) {
                sum_sc += leaf.s[j] + leaf.c[j];
                sum_s += leaf.s[j];
            }
            ExactComplex contrib = leaf.k * ExactComplex::unit_phase(-sum_s) *
                                   Rational(BigInt(p), BigInt(1) << sum_sc);
            groups[{leaf.sp, leaf.cp}] += contrib;
        }
        CoefficientPolynomial poly;
        poly.frequency = omega;
        for (auto& [key, amp] : groups) {
            if (amp.is_zero()) continue;
            poly.terms.push_back({key.first, key.second, std::move(amp)});
        }
        if (!poly.terms.empty()) report.coefficients.push_back(std::move(poly));
    }
    return report;
}

/// (1/2pi) * integral_{-pi}^{pi} sin^s cos^c, as an exact rational.
/// Nonzero only for s and c both even.
inline Rational trig_moment_over_2pi(int s, int c) {
    if ((s & 1) || (c & 1)) return 0;
    Rational r(factorial(s) * factorial(c),
               factorial(s / 2) * factorial(c / 2) * factorial((s + c) / 2));
    r /= Rational(BigInt(1) << (s + c));
    return r;
}

/// The raw integral value 2*pi * m(s, c).
inline double trig_moment(int s, int c) {
    return 2.0 * M_PI * rational_to_double(trig_moment_over_2pi(s, c));
}

/// E[c_omega(theta)] under theta uniform on [-pi, pi]^w, exact.
inline ExactComplex coefficient_mean_exact(const CoefficientPolynomial& poly) {
    ExactComplex mean;
    for (const auto& t : poly.terms) {
        Rational prod = 1;
        for (std::size_t k = 0; k < t.sp.size(); ++k) {
            prod *= trig_moment_over_2pi(t.sp[k], t.cp[k]);
            if (prod == 0) break;
        }
        if (prod != 0) mean += t.amplitude * prod;
    }
    return mean;
}

inline std::complex<double> coefficient_mean(const CoefficientPolynomial& poly) {
    return coefficient_mean_exact(poly).to_complex();
}

/// E[a(theta) * conj(b(theta))], exact: the product polynomial's exponents
/// add per parameter and each factor integrates by the same moment rule.
inline ExactComplex coefficient_cross_moment_exact(const CoefficientPolynomial& a,
                                                   const CoefficientPolynomial& b) {
    ExactComplex total;
    for (const auto& ta : a.terms) {
        for (const auto& tb : b.terms) {
            Rational prod = 1;
            for (std::size_t k = 0; k < ta.sp.size(); ++k) {
                prod *= trig_moment_over_2pi(ta.sp[k] + tb.sp[k], ta.cp[k] + tb.cp[k]);
                if (prod == 0) break;
            }
            if (prod != 0) total += ta.amplitude * tb.amplitude.conj() * prod;
        }
    }
    return total;
}

/// Cov(a, b) = E[a b*] - E[a] E[b]*.
inline ExactComplex coefficient_covariance_exact(const CoefficientPolynomial& a,
                                                 const CoefficientPolynomial& b) {
    return coefficient_cross_moment_exact(a, b) -
           coefficient_mean_exact(a) * coefficient_mean_exact(b).conj();
}

inline std::complex<double> coefficient_covariance(const CoefficientPolynomial& a,
                                                   const CoefficientPolynomial& b) {
    return coefficient_covariance_exact(a, b).to_complex();
}

}  // namespace vqcf
