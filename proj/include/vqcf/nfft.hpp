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

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "vqcf/spectrum.hpp"

namespace vqcf {

/// Scattered samples on the torus: x_j in [-1/2, 1/2)^d with real labels.
struct Dataset {
    Eigen::MatrixXd x;  // M x d
    Eigen::VectorXd y;  // M

    std::size_t size() const { return static_cast<std::size_t>(y.size()); }
    std::size_t dim() const { return static_cast<std::size_t>(x.cols()); }

    void check() const {
        if (y.size() < 1) throw std::invalid_argument("dataset needs M >= 1");
        if (x.rows() != y.size())
            throw std::invalid_argument("feature/label count mismatch");
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            if (!std::isfinite(y[i])) throw std::invalid_argument("non-finite label");
            for (Eigen::Index j = 0; j < x.cols(); ++j) {
                double v = x(i, j);
                if (!std::isfinite(v) || v < -0.5 || v >= 0.5)
                    throw std::invalid_argument("sample outside [-1/2, 1/2)");
            }
        }
    }
};

/// Regular asymmetric lattice prod_i {-N_i/2, ..., N_i/2 - 1}, N_i even.
class FrequencyGrid {
  public:
    explicit FrequencyGrid(std::vector<int> sizes) : sizes_(std::move(sizes)) {
        total_ = 1;
        for (int n : sizes_) {
            if (n < 2 || (n & 1))
                throw std::invalid_argument("grid sizes must be even and >= 2");
            total_ *= static_cast<std::size_t>(n);
        }
    }

    std::size_t dim() const { return sizes_.size(); }
    std::size_t total() const { return total_; }
    const std::vector<int>& sizes() const { return sizes_; }

    FrequencyVector frequency(std::size_t idx) const {
        FrequencyVector omega(sizes_.size());
        for (std::size_t j = 0; j < sizes_.size(); ++j) {
            int n = sizes_[j];
            omega[j] = static_cast<int>(idx % n) - n / 2;
            idx /= n;
        }
        return omega;
    }

    bool contains(const FrequencyVector& omega) const {
        if (omega.size() != sizes_.size()) return false;
        for (std::size_t j = 0; j < sizes_.size(); ++j)
            if (omega[j] < -sizes_[j] / 2 || omega[j] > sizes_[j] / 2 - 1) return false;
        return true;
    }

    std::size_t index(const FrequencyVector& omega) const {
        if (!contains(omega)) throw std::invalid_argument("frequency outside grid");
        std::size_t idx = 0;
        for (std::size_t j = sizes_.size(); j-- > 0;)
            idx = idx * sizes_[j] + static_cast<std::size_t>(omega[j] + sizes_[j] / 2);
        return idx;
    }

    bool operator==(const FrequencyGrid& o) const { return sizes_ == o.sizes_; }

  private:
    std::vector<int> sizes_;
    std::size_t total_ = 1;
};

/// Smallest even grid containing the symmetric naive range: N_i = 2 N(x_i) + 2,
/// covering {-N(x_i)-1, ..., N(x_i)}.
inline FrequencyGrid build_grid(const std::vector<int>& encoding_counts) {
    std::vector<int> sizes;
    sizes.reserve(encoding_counts.size());
    for (int c : encoding_counts) {
        if (c < 1) throw std::invalid_argument("encoding count must be >= 1");
        sizes.push_back(2 * c + 2);
    }
    return FrequencyGrid(std::move(sizes));
}

/// Piecewise-constant damping: `inside` on Omega, `outside` elsewhere.
/// Frequencies of Omega that fall outside the grid are counted and skipped.
inline Eigen::VectorXd damping_factors(const FrequencyGrid& grid,
                                       const std::vector<FrequencyVector>& omega_set,
                                       double inside = 1e3, double outside = 1e-3,
                                       std::size_t* ignored = nullptr) {
    Eigen::VectorXd w = Eigen::VectorXd::Constant(grid.total(), outside);
    std::size_t skipped = 0;
    for (const auto& omega : omega_set) {
        if (grid.contains(omega))
            w[static_cast<Eigen::Index>(grid.index(omega))] = inside;
        else
            ++skipped;
    }
    if (ignored) *ignored = skipped;
    return w;
}

/// Gridded Fourier coefficients recovered from scattered data.
struct DataSpectrum {
    FrequencyGrid grid;
    Eigen::VectorXcd coefficients;  // ordered by grid index
    Eigen::VectorXd damping;
    double residual = 0.0;  // R_NFFT
};

struct ConditioningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Eigen::MatrixXcd nfft_matrix(const Dataset& ds, const FrequencyGrid& grid) {
    const std::size_t M = ds.size(), G = grid.total();
    Eigen::MatrixXcd A(M, G);
    for (std::size_t g = 0; g < G; ++g) {
        FrequencyVector omega = grid.frequency(g);
        for (std::size_t j = 0; j < M; ++j) {
            double dot = 0;
            for (std::size_t k = 0; k < grid.dim(); ++k) dot += omega[k] * ds.x(j, k);
            A(j, g) = std::exp(std::complex<double>(0, 2.0 * M_PI * dot));
        }
    }
    return A;
}

}  // namespace detail

/// Residual sum_j |y_j - sum_omega f_omega e^{2 pi i omega x_j}|^2.
inline double r_nfft(const DataSpectrum& spec, const Dataset& ds) {
    Eigen::MatrixXcd A = detail::nfft_matrix(ds, spec.grid);
    Eigen::VectorXcd pred = A * spec.coefficients;
    double s = 0;
    for (Eigen::Index j = 0; j < ds.y.size(); ++j)
        s += std::norm(pred[j] - std::complex<double>(ds.y[j], 0));
    return s;
}

/// Damped minimum-norm inversion of the non-uniform Fourier system.
/// Underdetermined regime: f = W A^H (A W A^H + lambda I)^{-1} y with a
/// Tikhonov floor lambda = lambda_rel * trace(A W A^H) / M; overdetermined
/// regime: damped least squares on the normal equations (same solution by
/// the push-through identity).
inline DataSpectrum inverse_nfft(const Dataset& ds, const FrequencyGrid& grid,
                                 const Eigen::VectorXd& damping,
                                 double lambda_rel = 1e-12) {
    ds.check();
    if (ds.dim() != grid.dim())
        throw std::invalid_argument("dataset dimension does not match grid");
    if (damping.size() != static_cast<Eigen::Index>(grid.total()))
        throw std::invalid_argument("damping vector size does not match grid");

    const std::size_t M = ds.size(), G = grid.total();
    Eigen::MatrixXcd A = detail::nfft_matrix(ds, grid);
    Eigen::VectorXcd f;

    if (G >= M) {
        Eigen::MatrixXcd K = A * damping.asDiagonal() * A.adjoint();
        double lambda = lambda_rel * K.real().trace() / static_cast<double>(M);
        K += lambda * Eigen::MatrixXcd::Identity(M, M);
        Eigen::LDLT<Eigen::MatrixXcd> solver(K);
        if (solver.info() != Eigen::Success)
            throw ConditioningError("inverse NFFT system is numerically singular");
        Eigen::VectorXcd alpha = solver.solve(ds.y.cast<std::complex<double>>());
        double rel = (K * alpha - ds.y.cast<std::complex<double>>()).norm() /
                     std::max(1e-300, ds.y.norm());
        if (!alpha.allFinite() || rel > 1e-6)
            throw ConditioningError("inverse NFFT solve failed beyond lambda floor");
        f = damping.asDiagonal() * (A.adjoint() * alpha);
    } else {
        Eigen::MatrixXcd N = A.adjoint() * A;
        double lambda = lambda_rel * N.real().trace() / static_cast<double>(G);
        for (std::size_t g = 0; g < G; ++g)
            N(g, g) += lambda / damping[static_cast<Eigen::Index>(g)];
        Eigen::LDLT<Eigen::MatrixXcd> solver(N);
        if (solver.info() != Eigen::Success)
            throw ConditioningError("inverse NFFT normal equations are singular");
        f = solver.solve(A.adjoint() * ds.y.cast<std::complex<double>>());
        if (!f.allFinite())
            throw ConditioningError("inverse NFFT solve produced non-finite values");
    }

    DataSpectrum spec{grid, std::move(f), damping, 0.0};
    spec.residual = r_nfft(spec, ds);
    return spec;
}

}  // namespace vqcf
