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

#include "vqcf/spectrum.hpp"

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "vqcf/simulator.hpp"

using namespace vqcf;

namespace {

Circuit double_encoding_circuit() {
    Circuit c;
    c.n_qubits = 2;
    c.d = 2;
    c.gates = {PauliRotation{RotationAxis::X, 0, ParamRef::feature(0)},
               PauliRotation{RotationAxis::X, 0, ParamRef::feature(0)},
               PauliRotation{RotationAxis::X, 1, ParamRef::feature(1)}};
    return c;
}

Observable z0(std::size_t n) {
    std::vector<PauliLetter> letters(n, PauliLetter::I);
    letters[0] = PauliLetter::Z;
    return Observable::single(SignedPauli(std::move(letters), 0));
}

SpectrumReport report_of(const Circuit& c, const Observable& obs) {
    return exact_spectrum(build_circuit_leaves(c, obs), c.d, c.w, c.encoding_counts());
}

}  // namespace

TEST(NaiveSpectrum, FullGrid) {
    auto grid = naive_spectrum({2, 1});
    ASSERT_EQ(grid.size(), 15u);
    EXPECT_EQ(grid.front(), (FrequencyVector{-2, -1}));
    EXPECT_EQ(grid.back(), (FrequencyVector{2, 1}));
    EXPECT_EQ(naive_spectrum({}).size(), 1u);
}

TEST(CombinatorialWeight, KnownValues) {
    EXPECT_EQ(detail::weight_1d(0, 0, 0), 1);
    EXPECT_EQ(detail::weight_1d(1, 1, 0), 0);
    EXPECT_EQ(detail::weight_1d(2, 0, 2), 1);
    EXPECT_EQ(detail::weight_1d(2, 0, 0), -2);
    EXPECT_EQ(detail::weight_1d(0, 2, 0), 2);
    EXPECT_EQ(detail::weight_1d(0, 1, 1), 1);
    EXPECT_EQ(detail::weight_1d(1, 0, 1), 1);
    EXPECT_EQ(detail::weight_1d(1, 0, -1), -1);
    // Parity and range kills.
    EXPECT_EQ(detail::weight_1d(1, 0, 0), 0);
    EXPECT_EQ(detail::weight_1d(1, 1, 3), 0);
}

TEST(CombinatorialWeight, ProductOverDimensions) {
    EXPECT_EQ(combinatorial_weight({1, 0}, {0, 2}, {1, 0}), 2);
    EXPECT_EQ(combinatorial_weight({1, 0}, {0, 2}, {0, 0}), 0);
    EXPECT_THROW(combinatorial_weight({1}, {0, 0}, {1, 0}), std::invalid_argument);
}

TEST(CombinatorialWeight, ClosedFormMatchesDoubleSumExhaustively) {
    for (int s = 0; s <= 8; ++s) {
        for (int c = 0; c <= 8; ++c) {
            for (int omega = -(s + c) - 1; omega <= s + c + 1; ++omega) {
                EXPECT_EQ(detail::weight_1d_closed_form(s, c, omega),
                          detail::weight_1d(s, c, omega))
                    << "s=" << s << " c=" << c << " omega=" << omega;
            }
        }
    }
}

TEST(NodeSpectrum, AdmissibleFrequencies) {
    auto freqs = node_spectrum({2}, {0});
    ASSERT_EQ(freqs.size(), 3u);
    EXPECT_EQ(freqs[0], (FrequencyVector{-2}));
    EXPECT_EQ(freqs[1], (FrequencyVector{0}));
    EXPECT_EQ(freqs[2], (FrequencyVector{2}));
    // sin cos = sin(2x)/2 reaches only +-2.
    auto sc = node_spectrum({1}, {1});
    ASSERT_EQ(sc.size(), 2u);
    EXPECT_EQ(sc[0], (FrequencyVector{-2}));
    EXPECT_EQ(sc[1], (FrequencyVector{2}));
}

TEST(ExactSpectrum, DoubleEncodingCircuit) {
    auto report = report_of(double_encoding_circuit(), z0(2));
    // f = cos(2 x1): exactly two surviving frequencies, amplitude 1/2 each;
    // the DC term cancels exactly.
    ASSERT_EQ(report.coefficients.size(), 2u);
    EXPECT_EQ(report.coefficients[0].frequency, (FrequencyVector{-2, 0}));
    EXPECT_EQ(report.coefficients[1].frequency, (FrequencyVector{2, 0}));
    for (const auto& poly : report.coefficients) {
        ASSERT_EQ(poly.terms.size(), 1u);
        EXPECT_EQ(poly.terms[0].amplitude, ExactComplex(Rational(1, 2)));
    }
    auto spectrum = report.spectrum();
    EXPECT_EQ(std::count(spectrum.begin(), spectrum.end(), FrequencyVector{0, 0}), 0);
}

TEST(ExactSpectrum, MatchesGridDftOnRandomCircuits) {
    std::mt19937_64 rng(97);
    vqcf::testing::RandomCircuitOptions opts;
    opts.max_rotations = 5;
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto [c, obs] = vqcf::testing::random_circuit(rng, opts);
        if (c.d == 0) continue;
        ++checked;
        auto theta = vqcf::testing::random_vector(c.w, rng);
        auto report = report_of(c, obs);
        auto dft = grid_dft_coefficients(c, obs, theta, c.encoding_counts());
        std::map<FrequencyVector, std::complex<double>> exact;
        for (const auto& poly : report.coefficients)
            exact[poly.frequency] = evaluate_coefficient(poly, theta);
        for (const auto& [omega, amp] : dft) {
            auto it = exact.find(omega);
            std::complex<double> want = it == exact.end() ? 0.0 : it->second;
            EXPECT_LT(std::abs(amp - want), 1e-9)
                << "trial " << trial << " omega size " << omega.size();
        }
    }
    EXPECT_GT(checked, 50);
}

TEST(ExactSpectrum, CertifiedZerosAreNumericallyZero) {
    // Frequencies absent from the report must carry no numeric weight for
    // any theta, not just the one sampled.
    std::mt19937_64 rng(101);
    vqcf::testing::RandomCircuitOptions opts;
    opts.max_rotations = 4;
    for (int trial = 0; trial < 30; ++trial) {
        auto [c, obs] = vqcf::testing::random_circuit(rng, opts);
        if (c.d == 0) continue;
        auto report = report_of(c, obs);
        auto spectrum = report.spectrum();
        std::set<FrequencyVector> present(spectrum.begin(), spectrum.end());
        auto theta = vqcf::testing::random_vector(c.w, rng);
        auto dft = grid_dft_coefficients(c, obs, theta, c.encoding_counts());
        for (const auto& [omega, amp] : dft)
            if (!present.count(omega)) EXPECT_LT(std::abs(amp), 1e-12);
    }
}

TEST(ExactSpectrum, ConjugateSymmetry) {
    // Real-valued models: c_{-omega} = conj(c_omega).
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 30; ++trial) {
        auto [c, obs] = vqcf::testing::random_circuit(rng);
        auto report = report_of(c, obs);
        auto theta = vqcf::testing::random_vector(c.w, rng);
        std::map<FrequencyVector, std::complex<double>> vals;
        for (const auto& poly : report.coefficients)
            vals[poly.frequency] = evaluate_coefficient(poly, theta);
        for (const auto& [omega, v] : vals) {
            FrequencyVector neg(omega.size());
            for (std::size_t j = 0; j < omega.size(); ++j) neg[j] = -omega[j];
            auto it = vals.find(neg);
            ASSERT_NE(it, vals.end());
            EXPECT_LT(std::abs(v - std::conj(it->second)), 1e-12);
        }
    }
}

TEST(ExactSpectrum, NonVacuousOnGenericCircuit) {
    // Interposing a variational rotation between the encodings keeps the
    // whole band {-2..2}.
    Circuit c;
    c.n_qubits = 1;
    c.d = 1;
    c.w = 1;
    c.gates = {PauliRotation{RotationAxis::X, 0, ParamRef::feature(0)},
               PauliRotation{RotationAxis::Y, 0, ParamRef::theta(0)},
               PauliRotation{RotationAxis::X, 0, ParamRef::feature(0)}};
    Observable obs;
    obs.terms = {{1.0, SignedPauli::from_string("Z")},
                 {1.0, SignedPauli::from_string("X")}};
    auto report = report_of(c, obs);
    EXPECT_EQ(report.coefficients.size(), 5u);
    EXPECT_EQ(report.encoding_counts, std::vector<int>{2});
}

TEST(TrigMoment, KnownValues) {
    EXPECT_EQ(trig_moment_over_2pi(0, 0), Rational(1));
    EXPECT_EQ(trig_moment_over_2pi(0, 2), Rational(1, 2));
    EXPECT_EQ(trig_moment_over_2pi(2, 0), Rational(1, 2));
    EXPECT_EQ(trig_moment_over_2pi(2, 2), Rational(1, 8));
    EXPECT_EQ(trig_moment_over_2pi(4, 0), Rational(3, 8));
    EXPECT_EQ(trig_moment_over_2pi(1, 0), Rational(0));
    EXPECT_EQ(trig_moment_over_2pi(2, 1), Rational(0));
    EXPECT_DOUBLE_EQ(trig_moment(0, 0), 2.0 * M_PI);
}

TEST(TrigMoment, MatchesQuadrature) {
    for (int s = 0; s <= 6; ++s) {
        for (int c = 0; c <= 6; ++c) {
            auto integrand = [&](const std::vector<double>& t) {
                return std::complex<double>(
                    std::pow(std::sin(t[0]), s) * std::pow(std::cos(t[0]), c), 0);
            };
            auto quad = vqcf::testing::periodic_mean(integrand, 1);
            EXPECT_NEAR(rational_to_double(trig_moment_over_2pi(s, c)), quad.real(), 1e-12)
                << "s=" << s << " c=" << c;
        }
    }
}

TEST(CoefficientMoments, MatchQuadratureOnRandomCircuits) {
    std::mt19937_64 rng(107);
    vqcf::testing::RandomCircuitOptions opts;
    opts.max_rotations = 5;
    opts.max_w = 2;
    for (int trial = 0; trial < 20; ++trial) {
        auto [c, obs] = vqcf::testing::random_circuit(rng, opts);
        auto report = report_of(c, obs);
        if (report.coefficients.empty()) continue;
        const auto& a = report.coefficients[0];
        const auto& b = report.coefficients[report.coefficients.size() / 2];
        auto mean_quad = vqcf::testing::periodic_mean(
            [&](const std::vector<double>& t) { return evaluate_coefficient(a, t); },
            c.w, 32);
        EXPECT_LT(std::abs(coefficient_mean(a) - mean_quad), 1e-10);
        auto cross_quad = vqcf::testing::periodic_mean(
            [&](const std::vector<double>& t) {
                return evaluate_coefficient(a, t) * std::conj(evaluate_coefficient(b, t));
            },
            c.w, 32);
        auto cross = coefficient_cross_moment_exact(a, b).to_complex();
        EXPECT_LT(std::abs(cross - cross_quad), 1e-10);
        auto cov = coefficient_covariance(a, b);
        EXPECT_LT(std::abs(cov - (cross_quad - mean_quad * std::conj(vqcf::testing::periodic_mean(
                                      [&](const std::vector<double>& t) {
                                          return evaluate_coefficient(b, t);
                                      },
                                      c.w, 32)))),
                  1e-10);
    }
}

TEST(CoefficientMoments, VarianceIsNonNegative) {
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 20; ++trial) {
        auto [c, obs] = vqcf::testing::random_circuit(rng);
        auto report = report_of(c, obs);
        for (const auto& poly : report.coefficients) {
            auto var = coefficient_covariance_exact(poly, poly);
            EXPECT_EQ(var.im, Rational(0));
            EXPECT_GE(var.re, Rational(0));
        }
    }
}

TEST(CoefficientMoments, FixedParameterFreeCoefficientHasZeroVariance) {
    auto report = report_of(double_encoding_circuit(), z0(2));
    for (const auto& poly : report.coefficients) {
        EXPECT_EQ(coefficient_mean_exact(poly), ExactComplex(Rational(1, 2)));
        EXPECT_TRUE(coefficient_covariance_exact(poly, poly).is_zero());
    }
}
