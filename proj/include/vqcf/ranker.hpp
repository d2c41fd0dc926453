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
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <string>
#include <numeric>
#include <random>
#include <set>
#include <thread>
#include <vector>

#include "vqcf/nfft.hpp"
#include "vqcf/spectrum.hpp"

namespace vqcf {

/// Data energy on frequencies the architecture cannot represent:
/// sum over grid \ Omega of |f_omega|^2.
inline double r_omega(const DataSpectrum& spec,
                      const std::vector<FrequencyVector>& omega_set) {
    std::set<std::size_t> inside;
    for (const auto& omega : omega_set)
        if (spec.grid.contains(omega)) inside.insert(spec.grid.index(omega));
    double s = 0;
    for (std::size_t g = 0; g < spec.grid.total(); ++g)
        if (!inside.count(g)) s += std::norm(spec.coefficients[static_cast<Eigen::Index>(g)]);
    return s;
}

/// Spectrum-size penalty |Omega| / |grid|, already in [0, 1].
inline double r_punish(const std::vector<FrequencyVector>& omega_set,
                       const FrequencyGrid& grid) {
    std::size_t inside = 0;
    for (const auto& omega : omega_set)
        if (grid.contains(omega)) ++inside;
    return static_cast<double>(inside) / static_cast<double>(grid.total());
}

/// Mahalanobis distance sqrt((f - mu)^H Sigma^+ (f - mu)) with a Hermitian
/// pseudo-inverse (relative eigenvalue cutoff). Components of f - mu in the
/// null space of Sigma add `null_space_penalty` per unit squared magnitude
/// instead of being dropped.
inline double r_corr(const Eigen::VectorXcd& f, const Eigen::VectorXcd& mu,
                     const Eigen::MatrixXcd& sigma, double eig_cutoff = 1e-10,
                     double null_space_penalty = 1e6) {
    if (f.size() != mu.size() || sigma.rows() != f.size() || sigma.cols() != f.size())
        throw std::invalid_argument("dimension mismatch in r_corr");
    if (f.size() == 0) return 0.0;
    Eigen::MatrixXcd herm = 0.5 * (sigma + sigma.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("covariance eigendecomposition failed");
    const Eigen::VectorXd& vals = eig.eigenvalues();
    double cutoff = eig_cutoff * std::max(0.0, vals.cwiseAbs().maxCoeff());
    Eigen::VectorXcd r = eig.eigenvectors().adjoint() * (f - mu);
    double dist2 = 0;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        double mag2 = std::norm(r[i]);
        if (vals[i] > cutoff)
            dist2 += mag2 / vals[i];
        else
            dist2 += null_space_penalty * mag2;
    }
    return std::sqrt(dist2);
}

enum class Normalization { DivideByMax, MinMax };

struct RankOptions {
    std::size_t subset_size = 100;
    std::uint64_t seed = 0;
    double damping_inside = 1e3;
    double damping_outside = 1e-3;
    double lambda_rel = 1e-12;
    double eig_cutoff = 1e-10;
    double null_space_penalty = 1e6;
    Normalization normalization = Normalization::DivideByMax;
};

struct RankReport {
    struct Entry {
        std::string circuit_id;
        double r_omega_raw = 0, r_omega_norm = 0;
        double r_corr_raw = 0, r_corr_norm = 0;
        double r_punish = 0;
        double r_nfft = 0;
        double score = 0;
        std::size_t rank = 0;                  // 1-based
        std::vector<FrequencyVector> subset;   // frequencies used for R_corr
    };
    std::vector<Entry> entries;  // in input architecture order
    std::vector<int> grid_sizes;
    RankOptions options;
};

inline std::size_t default_worker_count() {
    if (const char* env = std::getenv("VQCF_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return static_cast<std::size_t>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Scores every architecture against the dataset (each with its own damping
/// on the shared grid), normalizes R_Omega and R_corr across the candidate
/// set, and ranks ascending by score with input-order tie-breaking.
inline RankReport score_and_rank(const std::vector<SpectrumReport>& architectures,
                                 const Dataset& ds, const RankOptions& opts = {}) {
    if (architectures.empty())
        throw std::invalid_argument("empty candidate list");
    FrequencyGrid grid = build_grid(architectures.front().encoding_counts);
    for (const auto& a : architectures)
        if (!(build_grid(a.encoding_counts) == grid))
            throw std::invalid_argument(
                "architectures must share the same encoding counts / grid");

    RankReport report;
    report.grid_sizes = grid.sizes();
    report.options = opts;
    report.entries.resize(architectures.size());

    // Per-architecture subsets are drawn up front so the result does not
    // depend on the worker schedule.
    std::mt19937_64 rng(opts.seed);
    for (std::size_t i = 0; i < architectures.size(); ++i) {
        const auto& arch = architectures[i];
        std::vector<std::size_t> pool;
        for (std::size_t ci = 0; ci < arch.coefficients.size(); ++ci)
            if (grid.contains(arch.coefficients[ci].frequency)) pool.push_back(ci);
        std::shuffle(pool.begin(), pool.end(), rng);
        if (pool.size() > opts.subset_size) pool.resize(opts.subset_size);
        std::sort(pool.begin(), pool.end());
        for (auto ci : pool)
            report.entries[i].subset.push_back(arch.coefficients[ci].frequency);
        report.entries[i].circuit_id = arch.circuit_id;
    }

    auto score_one = [&](std::size_t i) {
        const auto& arch = architectures[i];
        auto& entry = report.entries[i];
        auto omega_set = arch.spectrum();
        Eigen::VectorXd damping = damping_factors(grid, omega_set, opts.damping_inside,
                                                  opts.damping_outside);
        DataSpectrum spec = inverse_nfft(ds, grid, damping, opts.lambda_rel);
        entry.r_nfft = spec.residual;
        entry.r_omega_raw = r_omega(spec, omega_set);
        entry.r_punish = r_punish(omega_set, grid);

        // Restrict to the sampled subset and evaluate the Gaussian heuristic.
        std::vector<const CoefficientPolynomial*> polys;
        for (const auto& omega : entry.subset)
            for (const auto& cp : arch.coefficients)
                if (cp.frequency == omega) polys.push_back(&cp);
        const Eigen::Index n = static_cast<Eigen::Index>(polys.size());
        Eigen::VectorXcd f(n), mu(n);
        Eigen::MatrixXcd sigma(n, n);
        for (Eigen::Index a = 0; a < n; ++a) {
            f[a] = spec.coefficients[static_cast<Eigen::Index>(
                grid.index(polys[a]->frequency))];
            mu[a] = coefficient_mean(*polys[a]);
            for (Eigen::Index b = 0; b < n; ++b)
                sigma(a, b) = coefficient_covariance(*polys[a], *polys[b]);
        }
        entry.r_corr_raw = r_corr(f, mu, sigma, opts.eig_cutoff, opts.null_space_penalty);
    };

    const std::size_t workers =
        std::min(default_worker_count(), architectures.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < architectures.size(); ++i) score_one(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < architectures.size();
                     i = next.fetch_add(1)) {
                    try {
                        score_one(i);
                    } catch (...) {
                        failed = true;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failed) throw std::runtime_error("architecture scoring failed");
    }

    auto normalize = [&](auto raw_of, auto set_norm) {
        double max = 0, min = std::numeric_limits<double>::infinity();
        for (auto& e : report.entries) {
            max = std::max(max, raw_of(e));
            min = std::min(min, raw_of(e));
        }
        for (auto& e : report.entries) {
            double v = 0;
            if (opts.normalization == Normalization::DivideByMax) {
                v = max > 0 ? raw_of(e) / max : 0.0;
            } else {
                v = max > min ? (raw_of(e) - min) / (max - min) : 0.0;
            }
            set_norm(e, v);
        }
    };
    normalize([](const RankReport::Entry& e) { return e.r_omega_raw; },
              [](RankReport::Entry& e, double v) { e.r_omega_norm = v; });
    normalize([](const RankReport::Entry& e) { return e.r_corr_raw; },
              [](RankReport::Entry& e, double v) { e.r_corr_norm = v; });

    for (auto& e : report.entries)
        e.score = e.r_omega_norm + e.r_corr_norm + e.r_punish;

    std::vector<std::size_t> order(report.entries.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return report.entries[a].score < report.entries[b].score;
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        report.entries[order[pos]].rank = pos + 1;
    return report;
}

}  // namespace vqcf
