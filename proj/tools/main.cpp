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

#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vqcf/io.hpp"

namespace {

using vqcf::Json;

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw vqcf::ParseError("cannot open output file: " + path);
    out << content;
}

void write_artifact(const std::string& path, Json j) {
    write_text(path, j.dump(2) + "\n");
}

Json base_artifact(const std::string& command, const Json& config) {
    Json j;
    j["tool_version"] = vqcf::kVersion;
    j["command"] = command;
    j["config"] = config;
    return j;
}

std::string circuit_id_from_path(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

int run(int argc, char** argv) {
    CLI::App app{"Fourier spectrum analysis and architecture ranking for "
                 "Clifford+Pauli variational circuits"};
    app.require_subcommand(1);

    // ---- spectrum ----
    auto* sp = app.add_subcommand("spectrum", "Exact spectrum and coefficients of a circuit");
    std::string sp_circuit, sp_out = "spectrum.json", sp_leaves;
    std::size_t sp_cap = std::size_t{1} << 22;
    sp->add_option("--circuit", sp_circuit, "circuit file")->required();
    sp->add_option("--out", sp_out, "output report path");
    sp->add_option("--leaf-cap", sp_cap, "abort above this many tree leaves");
    sp->add_option("--dump-leaves", sp_leaves, "also write the leaf terms here");

    // ---- rank ----
    auto* rk = app.add_subcommand("rank", "Rank candidate circuits against a dataset");
    std::vector<std::string> rk_circuits;
    std::string rk_data, rk_out = "rank.json", rk_format = "structured", rk_plot,
                rk_norm = "max";
    bool rk_header = false;
    vqcf::RankOptions rk_opts;
    std::size_t rk_cap = std::size_t{1} << 22;
    rk->add_option("--circuit", rk_circuits, "circuit file (repeatable)")->required();
    rk->add_option("--data", rk_data, "dataset file")->required();
    rk->add_flag("--header", rk_header, "dataset file has a header row");
    rk->add_option("--damping-in", rk_opts.damping_inside, "damping inside the spectrum");
    rk->add_option("--damping-out", rk_opts.damping_outside, "damping outside the spectrum");
    rk->add_option("--subset-size", rk_opts.subset_size, "coefficient subset for R_corr");
    rk->add_option("--seed", rk_opts.seed, "random seed");
    rk->add_option("--lambda-rel", rk_opts.lambda_rel, "relative Tikhonov floor");
    rk->add_option("--normalization", rk_norm, "score normalization: max|minmax");
    rk->add_option("--leaf-cap", rk_cap, "tree leaf cap");
    rk->add_option("--out", rk_out, "output report path");
    rk->add_option("--format", rk_format, "structured|table");
    rk->add_option("--plot", rk_plot, "write a stacked-bar SVG here");

    // ---- verify ----
    auto* vf = app.add_subcommand("verify", "Check Fourier reconstruction against the simulator");
    std::string vf_circuit, vf_out;
    std::size_t vf_trials = 20;
    std::uint64_t vf_seed = 0;
    std::size_t vf_cap = std::size_t{1} << 22;
    vf->add_option("--circuit", vf_circuit, "circuit file")->required();
    vf->add_option("--trials", vf_trials, "number of random evaluation points");
    vf->add_option("--seed", vf_seed, "random seed");
    vf->add_option("--leaf-cap", vf_cap, "tree leaf cap");
    vf->add_option("--out", vf_out, "optional report path");

    // ---- data-spectrum ----
    auto* dsp = app.add_subcommand("data-spectrum", "Inverse NFFT of a dataset");
    std::string dsp_data, dsp_circuit, dsp_out = "data_spectrum.json";
    std::vector<int> dsp_grid;
    bool dsp_header = false;
    double dsp_in = 1e3, dsp_outside = 1e-3, dsp_lambda = 1e-12;
    dsp->add_option("--data", dsp_data, "dataset file")->required();
    dsp->add_flag("--header", dsp_header, "dataset file has a header row");
    dsp->add_option("--grid", dsp_grid, "per-dimension even grid sizes");
    dsp->add_option("--circuit", dsp_circuit,
                    "circuit whose spectrum sets grid and damping support");
    dsp->add_option("--damping-in", dsp_in, "damping inside the spectrum");
    dsp->add_option("--damping-out", dsp_outside, "damping outside the spectrum");
    dsp->add_option("--lambda-rel", dsp_lambda, "relative Tikhonov floor");
    dsp->add_option("--out", dsp_out, "output path");

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "Pointwise statevector expectation");
    std::string sim_circuit;
    std::vector<double> sim_x, sim_theta;
    sim->add_option("--circuit", sim_circuit, "circuit file")->required();
    sim->add_option("--x", sim_x, "feature values (angles)");
    sim->add_option("--theta", sim_theta, "variational parameter values");

    // ---- train ----
    auto* tr = app.add_subcommand("train", "Adam + parameter-shift training");
    std::string tr_circuit, tr_data, tr_out = "losses.csv";
    bool tr_header = false;
    vqcf::TrainConfig tr_cfg;
    double tr_test_fraction = 0.1;
    tr->add_option("--circuit", tr_circuit, "circuit file")->required();
    tr->add_option("--data", tr_data, "dataset file")->required();
    tr->add_flag("--header", tr_header, "dataset file has a header row");
    tr->add_option("--epochs", tr_cfg.epochs, "training epochs");
    tr->add_option("--lr", tr_cfg.learning_rate, "learning rate");
    tr->add_option("--batch", tr_cfg.batch_size, "batch size");
    tr->add_option("--seed", tr_cfg.seed, "random seed");
    tr->add_option("--test-fraction", tr_test_fraction, "held-out fraction");
    tr->add_option("--out", tr_out, "loss curve output (epoch, train, test)");

    // ---- friedman ----
    auto* fr = app.add_subcommand("friedman", "Generate the Friedman regression dataset");
    std::string fr_out = "friedman.csv";
    std::size_t fr_samples = 1000;
    std::uint64_t fr_seed = 0;
    double fr_noise = 0.0;
    fr->add_option("--samples", fr_samples, "number of samples");
    fr->add_option("--seed", fr_seed, "random seed");
    fr->add_option("--noise", fr_noise, "gaussian label noise sigma");
    fr->add_option("--out", fr_out, "output csv path");

    CLI11_PARSE(app, argc, argv);

    if (sp->parsed()) {
        auto [circuit, obs] = vqcf::load_circuit(sp_circuit);
        auto leaves = vqcf::build_circuit_leaves(circuit, obs, sp_cap);
        auto report = vqcf::exact_spectrum(leaves, circuit.d, circuit.w,
                                           circuit.encoding_counts(),
                                           circuit_id_from_path(sp_circuit));
        Json j = base_artifact("spectrum", Json{{"circuit", sp_circuit},
                                                {"leaf_cap", sp_cap},
                                                {"out", sp_out}});
        j["report"] = vqcf::spectrum_report_to_json(report);
        write_artifact(sp_out, j);
        if (!sp_leaves.empty()) {
            Json lj = base_artifact("spectrum", Json{{"circuit", sp_circuit}});
            lj["leaves"] = vqcf::leaf_terms_to_json(leaves);
            write_artifact(sp_leaves, lj);
        }
        std::cout << "spectrum size " << report.coefficients.size() << " ("
                  << report.leaf_count << " merged leaves) -> " << sp_out << "\n";
        return 0;
    }

    if (rk->parsed()) {
        if (rk_norm == "minmax")
            rk_opts.normalization = vqcf::Normalization::MinMax;
        else if (rk_norm != "max")
            throw vqcf::ParseError("--normalization must be max or minmax");
        auto raw = vqcf::load_raw_dataset(rk_data, rk_header);
        auto maps = vqcf::FeatureMaps::fit(raw);
        auto ds = vqcf::to_torus_dataset(raw, maps);
        std::vector<vqcf::SpectrumReport> reports;
        for (const auto& path : rk_circuits) {
            auto [circuit, obs] = vqcf::load_circuit(path);
            if (circuit.d != raw.d)
                throw vqcf::ParseError("circuit " + path + " has d=" +
                                       std::to_string(circuit.d) + " but dataset has d=" +
                                       std::to_string(raw.d));
            auto leaves = vqcf::build_circuit_leaves(circuit, obs, rk_cap);
            reports.push_back(vqcf::exact_spectrum(leaves, circuit.d, circuit.w,
                                                   circuit.encoding_counts(),
                                                   circuit_id_from_path(path)));
        }
        auto rank = vqcf::score_and_rank(reports, ds, rk_opts);
        Json config{{"circuits", rk_circuits},
                    {"data", rk_data},
                    {"subset_size", rk_opts.subset_size},
                    {"seed", rk_opts.seed},
                    {"damping_in", rk_opts.damping_inside},
                    {"damping_out", rk_opts.damping_outside},
                    {"lambda_rel", rk_opts.lambda_rel},
                    {"normalization", rk_norm}};
        Json j = base_artifact("rank", config);
        j["seed"] = rk_opts.seed;
        j["feature_maps"] = vqcf::feature_maps_to_json(maps);
        j["report"] = vqcf::rank_report_to_json(rank);
        if (rk_format == "table") {
            write_text(rk_out, vqcf::rank_report_table(rank));
        } else if (rk_format == "structured") {
            write_artifact(rk_out, j);
        } else {
            throw vqcf::ParseError("--format must be structured or table");
        }
        if (!rk_plot.empty()) write_text(rk_plot, vqcf::rank_report_svg(rank));
        std::cout << vqcf::rank_report_table(rank);
        return 0;
    }

    if (vf->parsed()) {
        auto [circuit, obs] = vqcf::load_circuit(vf_circuit);
        auto leaves = vqcf::build_circuit_leaves(circuit, obs, vf_cap);
        auto report = vqcf::exact_spectrum(leaves, circuit.d, circuit.w,
                                           circuit.encoding_counts());
        std::mt19937_64 rng(vf_seed);
        std::uniform_real_distribution<double> uni(-M_PI, M_PI);
        double max_dev = 0;
        for (std::size_t t = 0; t < vf_trials; ++t) {
            std::vector<double> x(circuit.d), theta(circuit.w);
            for (auto& v : x) v = uni(rng);
            for (auto& v : theta) v = uni(rng);
            double sim_val = vqcf::expectation(circuit, obs, x, theta);
            std::complex<double> four = 0;
            for (const auto& poly : report.coefficients) {
                double dot = 0;
                for (std::size_t j = 0; j < circuit.d; ++j)
                    dot += poly.frequency[j] * x[j];
                four += vqcf::evaluate_coefficient(poly, theta) *
                        std::exp(std::complex<double>(0, dot));
            }
            max_dev = std::max(max_dev, std::abs(four.real() - sim_val));
            max_dev = std::max(max_dev, std::abs(four.imag()));
        }
        bool pass = vf_trials == 0 || max_dev < 1e-9;
        if (vf_trials == 0)
            std::cerr << "warning: trials=0, vacuous pass\n";
        std::cout << (pass ? "PASS" : "FAIL") << " max deviation " << max_dev
                  << " over " << vf_trials << " trials\n";
        if (!vf_out.empty()) {
            Json j = base_artifact("verify", Json{{"circuit", vf_circuit},
                                                  {"trials", vf_trials},
                                                  {"seed", vf_seed}});
            j["seed"] = vf_seed;
            j["max_deviation"] = max_dev;
            j["pass"] = pass;
            write_artifact(vf_out, j);
        }
        return pass ? 0 : 1;
    }

    if (dsp->parsed()) {
        auto raw = vqcf::load_raw_dataset(dsp_data, dsp_header);
        auto maps = vqcf::FeatureMaps::fit(raw);
        auto ds = vqcf::to_torus_dataset(raw, maps);
        std::vector<vqcf::FrequencyVector> omega_set;
        std::vector<int> counts(raw.d, 1);
        if (!dsp_circuit.empty()) {
            auto [circuit, obs] = vqcf::load_circuit(dsp_circuit);
            auto leaves = vqcf::build_circuit_leaves(circuit, obs);
            auto report = vqcf::exact_spectrum(leaves, circuit.d, circuit.w,
                                               circuit.encoding_counts());
            omega_set = report.spectrum();
            counts = circuit.encoding_counts();
        }
        vqcf::FrequencyGrid grid = dsp_grid.empty()
                                       ? vqcf::build_grid(counts)
                                       : vqcf::FrequencyGrid(dsp_grid);
        Eigen::VectorXd damping =
            dsp_circuit.empty()
                ? Eigen::VectorXd::Ones(grid.total()).eval()
                : vqcf::damping_factors(grid, omega_set, dsp_in, dsp_outside);
        auto spec = vqcf::inverse_nfft(ds, grid, damping, dsp_lambda);
        Json j = base_artifact("data-spectrum", Json{{"data", dsp_data},
                                                     {"circuit", dsp_circuit},
                                                     {"damping_in", dsp_in},
                                                     {"damping_out", dsp_outside},
                                                     {"lambda_rel", dsp_lambda}});
        j["feature_maps"] = vqcf::feature_maps_to_json(maps);
        j["spectrum"] = vqcf::data_spectrum_to_json(spec);
        write_artifact(dsp_out, j);
        std::cout << "R_NFFT " << spec.residual << " -> " << dsp_out << "\n";
        return 0;
    }

    if (sim->parsed()) {
        auto [circuit, obs] = vqcf::load_circuit(sim_circuit);
        if (sim_x.size() != circuit.d || sim_theta.size() != circuit.w)
            throw vqcf::ParseError("need exactly d=" + std::to_string(circuit.d) +
                                   " x values and w=" + std::to_string(circuit.w) +
                                   " theta values");
        std::cout.precision(17);
        std::cout << vqcf::expectation(circuit, obs, sim_x, sim_theta) << "\n";
        return 0;
    }

    if (tr->parsed()) {
        auto [circuit, obs] = vqcf::load_circuit(tr_circuit);
        auto raw = vqcf::load_raw_dataset(tr_data, tr_header);
        if (circuit.d != raw.d)
            throw vqcf::ParseError("circuit/dataset feature dimension mismatch");
        auto maps = vqcf::FeatureMaps::fit(raw);
        auto angles = vqcf::to_angle_dataset(raw, maps);
        std::size_t n_test = static_cast<std::size_t>(tr_test_fraction * raw.y.size());
        vqcf::AngleDataset test, trainset;
        for (std::size_t i = 0; i < angles.y.size(); ++i) {
            auto& dst = i < n_test ? test : trainset;
            dst.x.push_back(angles.x[i]);
            dst.y.push_back(angles.y[i]);
        }
        auto result = vqcf::train(circuit, obs, trainset, test, tr_cfg);
        std::ostringstream csv;
        csv.precision(17);
        csv << "# tool_version=" << vqcf::kVersion << " seed=" << tr_cfg.seed
            << " lr=" << tr_cfg.learning_rate << " batch=" << tr_cfg.batch_size
            << " epochs=" << tr_cfg.epochs << "\n";
        csv << "epoch,train_mse,test_mse\n";
        for (std::size_t e = 0; e < result.train_mse.size(); ++e)
            csv << e << "," << result.train_mse[e] << "," << result.test_mse[e] << "\n";
        write_text(tr_out, csv.str());
        std::cout << "min test MSE " << result.min_test_mse << " -> " << tr_out << "\n";
        return 0;
    }

    if (fr->parsed()) {
        auto ds = vqcf::friedman_dataset(fr_samples, fr_seed, fr_noise);
        vqcf::save_raw_dataset(ds, fr_out);
        std::cout << fr_samples << " samples -> " << fr_out << "\n";
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const vqcf::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const vqcf::TreeLimitError& e) {
        std::cerr << "computational failure: " << e.what() << "\n";
        return 1;
    } catch (const vqcf::ConditioningError& e) {
        std::cerr << "computational failure: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
