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

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "vqcf/circuit.hpp"

namespace vqcf {

/// Dense 2^n statevector. Qubit q corresponds to bit q of the basis index.
class StateVector {
  public:
    explicit StateVector(std::size_t n_qubits, std::size_t qubit_cap = 12)
        : n_(n_qubits) {
        if (n_qubits > qubit_cap)
            throw std::invalid_argument("qubit count exceeds simulator cap");
        amps_.assign(std::size_t{1} << n_, {0.0, 0.0});
        amps_[0] = {1.0, 0.0};
    }

    std::size_t n_qubits() const { return n_; }
    std::span<const std::complex<double>> amplitudes() const { return amps_; }

    double norm() const {
        double s = 0;
        for (const auto& a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    void apply_clifford(const CliffordGate& g) {
        constexpr double inv_sqrt2 = 0.7071067811865475244;
        switch (g.kind) {
            case CliffordKind::H: {
                const std::size_t m = std::size_t{1} << g.qubits[0];
                for (std::size_t i = 0; i < amps_.size(); ++i) {
                    if (i & m) continue;
                    auto a = amps_[i], b = amps_[i | m];
                    amps_[i] = inv_sqrt2 * (a + b);
                    amps_[i | m] = inv_sqrt2 * (a - b);
                }
                break;
            }
            case CliffordKind::S: {
                const std::size_t m = std::size_t{1} << g.qubits[0];
                for (std::size_t i = 0; i < amps_.size(); ++i)
                    if (i & m) amps_[i] *= std::complex<double>(0, 1);
                break;
            }
            case CliffordKind::CNOT: {
                const std::size_t mc = std::size_t{1} << g.qubits[0];
                const std::size_t mt = std::size_t{1} << g.qubits[1];
                for (std::size_t i = 0; i < amps_.size(); ++i)
                    if ((i & mc) && !(i & mt)) std::swap(amps_[i], amps_[i | mt]);
                break;
            }
            case CliffordKind::CZ: {
                const std::size_t ma = std::size_t{1} << g.qubits[0];
                const std::size_t mb = std::size_t{1} << g.qubits[1];
                for (std::size_t i = 0; i < amps_.size(); ++i)
                    if ((i & ma) && (i & mb)) amps_[i] = -amps_[i];
                break;
            }
        }
    }

    /// R_P(phi) = exp(-i phi P / 2) for a single-qubit generator.
    void apply_rotation(RotationAxis axis, std::size_t qubit, double angle) {
        const std::complex<double> c(std::cos(angle / 2), 0);
        const std::complex<double> mis(0, -std::sin(angle / 2));
        const std::size_t m = std::size_t{1} << qubit;
        switch (axis) {
            case RotationAxis::X:
                for (std::size_t i = 0; i < amps_.size(); ++i) {
                    if (i & m) continue;
                    auto a = amps_[i], b = amps_[i | m];
                    amps_[i] = c * a + mis * b;
                    amps_[i | m] = mis * a + c * b;
                }
                break;
            case RotationAxis::Y: {
                const double s = std::sin(angle / 2);
                for (std::size_t i = 0; i < amps_.size(); ++i) {
                    if (i & m) continue;
                    auto a = amps_[i], b = amps_[i | m];
                    amps_[i] = c * a - s * b;
                    amps_[i | m] = s * a + c * b;
                }
                break;
            }
            case RotationAxis::Z:
                for (std::size_t i = 0; i < amps_.size(); ++i)
                    amps_[i] *= (i & m) ? (c - mis) : (c + mis);
                break;
        }
    }

    /// In-place |psi> <- P |psi> for a signed Pauli string.
    void apply_pauli(const SignedPauli& p) {
        if (p.n_qubits() != n_)
            throw std::invalid_argument("pauli width mismatch in apply_pauli");
        std::size_t flip = 0;
        std::size_t zmask = 0;
        int base_phase = p.phase_exponent() + p.y_count();  // Y = i X Z
        for (std::size_t q = 0; q < n_; ++q) {
            PauliLetter l = p.letter(q);
            if (l == PauliLetter::X || l == PauliLetter::Y) flip |= std::size_t{1} << q;
            if (l == PauliLetter::Z || l == PauliLetter::Y) zmask |= std::size_t{1} << q;
        }
        constexpr std::complex<double> iphase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        std::vector<std::complex<double>> out(amps_.size());
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            // X flips act before Z signs in the canonical X-then-Z order:
            // (prod X)(prod Z)|i> = (-1)^{popcount(i & z)} |i ^ flip>.
            int sign = std::popcount(i & zmask) & 1;
            out[i ^ flip] = iphase[(base_phase + 2 * sign) % 4] * amps_[i];
        }
        amps_ = std::move(out);
    }

    void overwrite(std::vector<std::complex<double>> amps) {
        if (amps.size() != amps_.size())
            throw std::invalid_argument("amplitude vector size mismatch");
        amps_ = std::move(amps);
    }

    std::complex<double> inner(const StateVector& other) const {
        std::complex<double> s = 0;
        for (std::size_t i = 0; i < amps_.size(); ++i)
            s += std::conj(amps_[i]) * other.amps_[i];
        return s;
    }

  private:
    std::size_t n_;
    std::vector<std::complex<double>> amps_;
};

inline double resolve_angle(const ParamRef& p, std::span<const double> x,
                            std::span<const double> theta) {
    if (p.kind == ParamKind::Feature) {
        if (p.index >= x.size()) throw std::invalid_argument("feature vector too short");
        return x[p.index];
    }
    if (p.index >= theta.size()) throw std::invalid_argument("theta vector too short");
    return theta[p.index];
}

inline StateVector run_circuit(const Circuit& c, std::span<const double> x,
                               std::span<const double> theta,
                               std::size_t qubit_cap = 12) {
    StateVector psi(c.n_qubits, qubit_cap);
    for (const auto& g : c.gates) {
        if (const auto* cg = std::get_if<CliffordGate>(&g)) {
            psi.apply_clifford(*cg);
        } else {
            const auto& r = std::get<PauliRotation>(g);
            psi.apply_rotation(r.axis, r.qubit, resolve_angle(r.param, x, theta));
        }
    }
    return psi;
}

/// f_theta(x) = <0| U^dag O U |0> by dense simulation.
inline double expectation(const Circuit& c, const Observable& obs,
                          std::span<const double> x, std::span<const double> theta,
                          std::size_t qubit_cap = 12) {
    StateVector psi = run_circuit(c, x, theta, qubit_cap);
    std::complex<double> val = 0;
    for (const auto& term : obs.terms) {
        StateVector phi = psi;
        phi.apply_pauli(term.pauli);
        val += term.weight * psi.inner(phi);
    }
    if (std::abs(val.imag()) > 1e-10)
        throw std::runtime_error("non-Hermitian expectation value");
    return val.real();
}

/// Expectation of a normal form (rotations only, then conjugated observable).
inline double normal_form_expectation(const NormalForm& nf, double weight,
                                      std::span<const double> x,
                                      std::span<const double> theta,
                                      std::size_t qubit_cap = 12) {
    StateVector psi(nf.n_qubits, qubit_cap);
    for (const auto& gen : nf.generators) {
        // exp(-i phi P/2) for a general signed Pauli P: apply via
        // cos(phi/2) I - i sin(phi/2) P.
        double phi = resolve_angle(gen.param, x, theta);
        StateVector ppsi = psi;
        ppsi.apply_pauli(gen.pauli);
        const double ch = std::cos(phi / 2), sh = std::sin(phi / 2);
        std::vector<std::complex<double>> mixed(psi.amplitudes().size());
        for (std::size_t i = 0; i < mixed.size(); ++i)
            mixed[i] = ch * psi.amplitudes()[i] -
                       std::complex<double>(0, sh) * ppsi.amplitudes()[i];
        psi.overwrite(std::move(mixed));
    }
    StateVector phi2 = psi;
    phi2.apply_pauli(nf.observable);
    return weight * psi.inner(phi2).real();
}

/// Uniform-grid DFT of f over x: exact Fourier coefficients of a
/// band-limited circuit output (|omega_j| <= N_j).
inline std::map<std::vector<int>, std::complex<double>> grid_dft_coefficients(
    const Circuit& c, const Observable& obs, std::span<const double> theta,
    const std::vector<int>& encoding_counts, std::size_t max_grid = 1000000) {
    const std::size_t d = encoding_counts.size();
    std::vector<int> sizes(d);
    std::size_t total = 1;
    for (std::size_t j = 0; j < d; ++j) {
        sizes[j] = 2 * encoding_counts[j] + 1;
        total *= sizes[j];
        if (total > max_grid) throw std::invalid_argument("dft grid too large");
    }
    // Sample f on the product grid.
    std::vector<double> values(total);
    std::vector<double> x(d, 0.0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t j = 0; j < d; ++j) {
            int t = static_cast<int>(rem % sizes[j]);
            rem /= sizes[j];
            x[j] = 2.0 * M_PI * t / sizes[j];
        }
        values[idx] = expectation(c, obs, x, theta);
    }
    std::map<std::vector<int>, std::complex<double>> coeffs;
    std::vector<int> omega(d, 0);
    // Iterate all frequencies in the symmetric band.
    std::size_t n_freq = total;
    for (std::size_t fidx = 0; fidx < n_freq; ++fidx) {
        std::size_t rem = fidx;
        for (std::size_t j = 0; j < d; ++j) {
            int t = static_cast<int>(rem % sizes[j]);
            rem /= sizes[j];
            omega[j] = t - encoding_counts[j];
        }
        std::complex<double> acc = 0;
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rem2 = idx;
            double dot = 0;
            for (std::size_t j = 0; j < d; ++j) {
                int t = static_cast<int>(rem2 % sizes[j]);
                rem2 /= sizes[j];
                dot += omega[j] * (2.0 * M_PI * t / sizes[j]);
            }
            acc += values[idx] * std::exp(std::complex<double>(0, -dot));
        }
        coeffs[omega] = acc / static_cast<double>(total);
    }
    return coeffs;
}

/// Parameter-shift gradient d f / d theta_k. Each rotation using theta_k
/// contributes one +/- pi/2 gate-shift pair; summing the pairs is the total
/// derivative even when a parameter is reused.
inline std::vector<double> parameter_shift_gradient(const Circuit& c,
                                                    const Observable& obs,
                                                    std::span<const double> x,
                                                    std::span<const double> theta,
                                                    std::size_t qubit_cap = 12) {
    std::vector<double> grad(c.w, 0.0);
    for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
        const auto* r = std::get_if<PauliRotation>(&c.gates[gi]);
        if (!r || r->param.kind != ParamKind::Variational) continue;
        auto eval_shifted = [&](double shift) {
            StateVector psi(c.n_qubits, qubit_cap);
            for (std::size_t i = 0; i < c.gates.size(); ++i) {
                if (const auto* cg = std::get_if<CliffordGate>(&c.gates[i])) {
                    psi.apply_clifford(*cg);
                } else {
                    const auto& rr = std::get<PauliRotation>(c.gates[i]);
                    double ang = resolve_angle(rr.param, x, theta);
                    if (i == gi) ang += shift;
                    psi.apply_rotation(rr.axis, rr.qubit, ang);
                }
            }
            std::complex<double> val = 0;
            for (const auto& term : obs.terms) {
                StateVector phi = psi;
                phi.apply_pauli(term.pauli);
                val += term.weight * psi.inner(phi);
            }
            return val.real();
        };
        grad[r->param.index] +=
            (eval_shifted(M_PI / 2) - eval_shifted(-M_PI / 2)) / 2.0;
    }
    return grad;
}

struct TrainConfig {
    double learning_rate = 0.005;
    std::size_t batch_size = 128;
    std::size_t epochs = 100;
    std::uint64_t seed = 0;
};

struct TrainResult {
    std::vector<double> theta;
    std::vector<double> train_mse;  // per epoch
    std::vector<double> test_mse;   // per epoch
    double min_test_mse = 0.0;
};

/// Labeled samples with features already mapped to circuit angles
/// in [-pi, pi).
struct AngleDataset {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
};

/// Adam + MSE minibatch training; fully deterministic given the seed.
inline TrainResult train(const Circuit& c, const Observable& obs,
                         const AngleDataset& train_data,
                         const AngleDataset& test_data, const TrainConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> init(-M_PI, M_PI);
    TrainResult res;
    res.theta.resize(c.w);
    for (auto& t : res.theta) t = init(rng);

    auto mse = [&](const AngleDataset& ds, const std::vector<double>& theta) {
        if (ds.y.empty()) return 0.0;
        double s = 0;
        for (std::size_t i = 0; i < ds.y.size(); ++i) {
            double e = expectation(c, obs, ds.x[i], theta) - ds.y[i];
            s += e * e;
        }
        return s / ds.y.size();
    };

    const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    std::vector<double> m(c.w, 0.0), v(c.w, 0.0);
    std::size_t step = 0;
    std::vector<std::size_t> order(train_data.y.size());
    std::iota(order.begin(), order.end(), 0);

    res.min_test_mse = mse(test_data, res.theta);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            std::size_t end = std::min(start + cfg.batch_size, order.size());
            std::vector<double> grad(c.w, 0.0);
            for (std::size_t oi = start; oi < end; ++oi) {
                std::size_t i = order[oi];
                double err = expectation(c, obs, train_data.x[i], res.theta) -
                             train_data.y[i];
                auto g = parameter_shift_gradient(c, obs, train_data.x[i], res.theta);
                for (std::size_t k = 0; k < c.w; ++k)
                    grad[k] += 2.0 * err * g[k] / static_cast<double>(end - start);
            }
            ++step;
            for (std::size_t k = 0; k < c.w; ++k) {
                m[k] = beta1 * m[k] + (1 - beta1) * grad[k];
                v[k] = beta2 * v[k] + (1 - beta2) * grad[k] * grad[k];
                double mh = m[k] / (1 - std::pow(beta1, step));
                double vh = v[k] / (1 - std::pow(beta2, step));
                res.theta[k] -= cfg.learning_rate * mh / (std::sqrt(vh) + eps);
            }
        }
        res.train_mse.push_back(mse(train_data, res.theta));
        res.test_mse.push_back(mse(test_data, res.theta));
        res.min_test_mse = std::min(res.min_test_mse, res.test_mse.back());
    }
    return res;
}

/// Friedman regression data: y = 10 sin(pi x1 x2) + 20 (x3 - 1/2)^2
/// + 10 x4 + 5 x5 with x uniform on [0,1]^5.
struct RawDataset {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    std::size_t d = 0;
};

inline double friedman_function(std::span<const double> x) {
    return 10.0 * std::sin(M_PI * x[0] * x[1]) + 20.0 * (x[2] - 0.5) * (x[2] - 0.5) +
           10.0 * x[3] + 5.0 * x[4];
}

inline RawDataset friedman_dataset(std::size_t M, std::uint64_t seed,
                                   double noise = 0.0) {
    if (M < 1) throw std::invalid_argument("friedman dataset needs M >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    RawDataset ds;
    ds.d = 5;
    ds.x.resize(M, std::vector<double>(5));
    ds.y.resize(M);
    for (std::size_t i = 0; i < M; ++i) {
        for (auto& xi : ds.x[i]) xi = uni(rng);
        ds.y[i] = friedman_function(ds.x[i]);
    }
    // Noise comes from a second pass so x does not depend on the noise level.
    if (noise > 0)
        for (auto& yi : ds.y) yi += noise * gauss(rng);
    return ds;
}

}  // namespace vqcf
