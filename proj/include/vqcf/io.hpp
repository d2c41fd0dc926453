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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vqcf/nfft.hpp"
#include "vqcf/ranker.hpp"
#include "vqcf/simulator.hpp"
#include "vqcf/spectrum.hpp"
#include "vqcf/tree.hpp"

namespace vqcf {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> known,
                                const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw ParseError("unknown key '" + key + "' in " + where);
    }
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError("missing key '" + std::string(key) + "' in " + where);
    return *it;
}

}  // namespace detail

/// Parses the circuit file format. Unknown keys are rejected.
inline std::pair<Circuit, Observable> circuit_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("circuit file must be a JSON object");
    detail::reject_unknown_keys(j, {"n_qubits", "d", "w", "gates", "observable"},
                                "circuit");
    Circuit c;
    c.n_qubits = detail::require(j, "n_qubits", "circuit").get<std::size_t>();
    c.d = detail::require(j, "d", "circuit").get<std::size_t>();
    c.w = detail::require(j, "w", "circuit").get<std::size_t>();
    for (const auto& gj : detail::require(j, "gates", "circuit")) {
        std::string type = detail::require(gj, "type", "gate").get<std::string>();
        if (type == "rx" || type == "ry" || type == "rz") {
            detail::reject_unknown_keys(gj, {"type", "qubit", "param"}, "rotation gate");
            PauliRotation r;
            r.axis = type == "rx" ? RotationAxis::X
                                  : (type == "ry" ? RotationAxis::Y : RotationAxis::Z);
            r.qubit = detail::require(gj, "qubit", "rotation gate").get<std::size_t>();
            const Json& pj = detail::require(gj, "param", "rotation gate");
            detail::reject_unknown_keys(pj, {"kind", "index"}, "param");
            std::string kind = detail::require(pj, "kind", "param").get<std::string>();
            std::size_t index = detail::require(pj, "index", "param").get<std::size_t>();
            if (kind == "feature")
                r.param = ParamRef::feature(index);
            else if (kind == "theta")
                r.param = ParamRef::theta(index);
            else
                throw ParseError("param kind must be 'feature' or 'theta'");
            c.gates.emplace_back(r);
        } else if (type == "h" || type == "s" || type == "cnot" || type == "cz") {
            detail::reject_unknown_keys(gj, {"type", "qubits"}, "clifford gate");
            CliffordGate g;
            g.kind = type == "h" ? CliffordKind::H
                     : type == "s" ? CliffordKind::S
                     : type == "cnot" ? CliffordKind::CNOT
                                      : CliffordKind::CZ;
            for (const auto& q : detail::require(gj, "qubits", "clifford gate"))
                g.qubits.push_back(q.get<std::size_t>());
            c.gates.emplace_back(g);
        } else {
            throw ParseError("unknown gate type '" + type + "'");
        }
    }
    Observable obs;
    for (const auto& oj : detail::require(j, "observable", "circuit")) {
        detail::reject_unknown_keys(oj, {"weight", "pauli"}, "observable term");
        double weight = detail::require(oj, "weight", "observable term").get<double>();
        std::string pauli = detail::require(oj, "pauli", "observable term").get<std::string>();
        obs.terms.push_back({weight, SignedPauli::from_string(pauli)});
    }
    return {std::move(c), std::move(obs)};
}

inline std::pair<Circuit, Observable> load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open circuit file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("malformed circuit file " + path + ": " + e.what());
    }
    return circuit_from_json(j);
}

inline Json circuit_to_json(const Circuit& c, const Observable& obs) {
    Json j;
    j["n_qubits"] = c.n_qubits;
    j["d"] = c.d;
    j["w"] = c.w;
    j["gates"] = Json::array();
    for (const auto& g : c.gates) {
        Json gj;
        if (const auto* cg = std::get_if<CliffordGate>(&g)) {
            gj["type"] = cg->name();
            gj["qubits"] = cg->qubits;
        } else {
            const auto& r = std::get<PauliRotation>(g);
            gj["type"] = r.axis == RotationAxis::X ? "rx"
                         : r.axis == RotationAxis::Y ? "ry"
                                                     : "rz";
            gj["qubit"] = r.qubit;
            gj["param"] = {{"kind", r.param.kind == ParamKind::Feature ? "feature" : "theta"},
                           {"index", r.param.index}};
        }
        j["gates"].push_back(gj);
    }
    j["observable"] = Json::array();
    for (const auto& t : obs.terms) {
        std::string p = t.pauli.str();
        j["observable"].push_back({{"weight", t.weight}, {"pauli", p}});
    }
    return j;
}

/// Delimiter-separated dataset: d feature columns then one label column.
/// Splits on commas when present, otherwise on whitespace.
inline RawDataset load_raw_dataset(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open dataset file: " + path);
    RawDataset ds;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && has_header) {
            first = false;
            continue;
        }
        first = false;
        std::vector<double> row;
        std::string cell;
        if (line.find(',') != std::string::npos) {
            std::stringstream ss(line);
            while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        } else {
            std::stringstream ss(line);
            double v;
            while (ss >> v) row.push_back(v);
        }
        if (row.size() < 2) throw ParseError("dataset row needs >= 2 columns");
        if (ds.d == 0) ds.d = row.size() - 1;
        if (row.size() != ds.d + 1) throw ParseError("inconsistent dataset column count");
        ds.y.push_back(row.back());
        row.pop_back();
        ds.x.push_back(std::move(row));
    }
    if (ds.y.empty()) throw ParseError("dataset file has no samples");
    return ds;
}

inline void save_raw_dataset(const RawDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out.precision(17);
    for (std::size_t i = 0; i < ds.y.size(); ++i) {
        for (double v : ds.x[i]) out << v << ",";
        out << ds.y[i] << "\n";
    }
}

/// Per-dimension affine map u = scale * x + offset used to place raw
/// features onto the torus; circuit angles use 2*pi*u in [-pi, pi).
struct FeatureMaps {
    std::vector<double> scale, offset;

    static FeatureMaps fit(const RawDataset& ds) {
        FeatureMaps m;
        m.scale.resize(ds.d);
        m.offset.resize(ds.d);
        for (std::size_t j = 0; j < ds.d; ++j) {
            double lo = ds.x[0][j], hi = ds.x[0][j];
            for (const auto& row : ds.x) {
                lo = std::min(lo, row[j]);
                hi = std::max(hi, row[j]);
            }
            double range = hi - lo;
            if (range <= 0) range = 1.0;
            m.scale[j] = 1.0 / range;
            m.offset[j] = -lo / range - 0.5;
        }
        return m;
    }

    double torus(double x, std::size_t j) const {
        double u = scale[j] * x + offset[j];
        // Integer frequencies make wrapping to [-1/2, 1/2) exact.
        u -= std::floor(u + 0.5);
        if (u >= 0.5) u = -0.5;
        return u;
    }

    double angle(double x, std::size_t j) const { return 2.0 * M_PI * torus(x, j); }
};

inline Dataset to_torus_dataset(const RawDataset& raw, const FeatureMaps& maps) {
    Dataset ds;
    ds.x.resize(raw.y.size(), raw.d);
    ds.y.resize(raw.y.size());
    for (std::size_t i = 0; i < raw.y.size(); ++i) {
        ds.y[static_cast<Eigen::Index>(i)] = raw.y[i];
        for (std::size_t j = 0; j < raw.d; ++j)
            ds.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                maps.torus(raw.x[i][j], j);
    }
    return ds;
}

inline AngleDataset to_angle_dataset(const RawDataset& raw, const FeatureMaps& maps) {
    AngleDataset ds;
    ds.x.resize(raw.y.size());
    ds.y = raw.y;
    for (std::size_t i = 0; i < raw.y.size(); ++i) {
        ds.x[i].resize(raw.d);
        for (std::size_t j = 0; j < raw.d; ++j) ds.x[i][j] = maps.angle(raw.x[i][j], j);
    }
    return ds;
}

inline Json feature_maps_to_json(const FeatureMaps& m) {
    return Json{{"scale", m.scale}, {"offset", m.offset}};
}

inline std::string frequency_str(const FrequencyVector& omega) {
    std::string s = "(";
    for (std::size_t j = 0; j < omega.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(omega[j]);
    }
    return s + ")";
}

inline Json leaf_terms_to_json(std::span<const LeafTerm> leaves) {
    Json arr = Json::array();
    for (const auto& leaf : leaves) {
        Json lj;
        lj["s"] = leaf.s;
        lj["c"] = leaf.c;
        lj["s_prime"] = leaf.sp;
        lj["c_prime"] = leaf.cp;
        auto k = leaf.k.to_complex();
        lj["k_re"] = k.real();
        lj["k_im"] = k.imag();
        arr.push_back(lj);
    }
    return arr;
}

inline Json spectrum_report_to_json(const SpectrumReport& report) {
    Json j;
    j["circuit_id"] = report.circuit_id;
    j["d"] = report.d;
    j["w"] = report.w;
    j["encoding_counts"] = report.encoding_counts;
    j["leaf_count"] = report.leaf_count;
    j["spectrum_size"] = report.coefficients.size();
    j["naive_grid_counts"] = report.encoding_counts;
    Json coeffs = Json::array();
    for (const auto& poly : report.coefficients) {
        Json pj;
        pj["frequency"] = poly.frequency;
        Json terms = Json::array();
        for (const auto& t : poly.terms) {
            auto a = t.amplitude.to_complex();
            terms.push_back({{"s_prime", t.sp},
                             {"c_prime", t.cp},
                             {"amp_re", a.real()},
                             {"amp_im", a.imag()},
                             {"amp_exact", t.amplitude.str()}});
        }
        pj["terms"] = std::move(terms);
        coeffs.push_back(std::move(pj));
    }
    j["coefficients"] = std::move(coeffs);
    return j;
}

inline Json data_spectrum_to_json(const DataSpectrum& spec) {
    Json j;
    j["grid_sizes"] = spec.grid.sizes();
    j["residual"] = spec.residual;
    Json coeffs = Json::array();
    for (std::size_t g = 0; g < spec.grid.total(); ++g) {
        auto f = spec.coefficients[static_cast<Eigen::Index>(g)];
        coeffs.push_back({{"frequency", spec.grid.frequency(g)},
                          {"re", f.real()},
                          {"im", f.imag()},
                          {"damping", spec.damping[static_cast<Eigen::Index>(g)]}});
    }
    j["coefficients"] = std::move(coeffs);
    return j;
}

inline Json rank_report_to_json(const RankReport& report) {
    Json j;
    j["grid_sizes"] = report.grid_sizes;
    j["subset_size"] = report.options.subset_size;
    j["seed"] = report.options.seed;
    j["damping_inside"] = report.options.damping_inside;
    j["damping_outside"] = report.options.damping_outside;
    j["normalization"] =
        report.options.normalization == Normalization::DivideByMax ? "max" : "minmax";
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        Json ej;
        ej["circuit_id"] = e.circuit_id;
        ej["rank"] = e.rank;
        ej["score"] = e.score;
        ej["r_omega_raw"] = e.r_omega_raw;
        ej["r_omega_norm"] = e.r_omega_norm;
        ej["r_corr_raw"] = e.r_corr_raw;
        ej["r_corr_norm"] = e.r_corr_norm;
        ej["r_punish"] = e.r_punish;
        ej["r_nfft"] = e.r_nfft;
        Json subset = Json::array();
        for (const auto& omega : e.subset) subset.push_back(omega);
        ej["subset"] = std::move(subset);
        entries.push_back(std::move(ej));
    }
    j["entries"] = std::move(entries);
    return j;
}

/// Summary table: one row per architecture, ascending by rank.
inline std::string rank_report_table(const RankReport& report, char delim = '\t') {
    std::ostringstream out;
    out.precision(6);
    out << "rank" << delim << "circuit" << delim << "score" << delim << "r_omega"
        << delim << "r_corr" << delim << "r_punish" << "\n";
    std::vector<const RankReport::Entry*> sorted;
    for (const auto& e : report.entries) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(),
              [](auto* a, auto* b) { return a->rank < b->rank; });
    for (const auto* e : sorted) {
        out << e->rank << delim << e->circuit_id << delim << e->score << delim
            << e->r_omega_norm << delim << e->r_corr_norm << delim << e->r_punish
            << "\n";
    }
    return out.str();
}

/// Static stacked-bar SVG of the score decomposition, ordered by rank.
inline std::string rank_report_svg(const RankReport& report) {
    std::vector<const RankReport::Entry*> sorted;
    for (const auto& e : report.entries) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(),
              [](auto* a, auto* b) { return a->rank < b->rank; });
    double max_score = 1e-12;
    for (const auto* e : sorted) max_score = std::max(max_score, e->score);
    const int bar_w = 60, gap = 20, height = 300, base = 260;
    const int width = gap + static_cast<int>(sorted.size()) * (bar_w + gap);
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
        << "' height='" << height << "'>\n";
    int x = gap;
    for (const auto* e : sorted) {
        double scale = (base - 40) / max_score;
        double parts[3] = {e->r_omega_norm, e->r_corr_norm, e->r_punish};
        const char* colors[3] = {"#4c72b0", "#dd8452", "#55a868"};
        double y = base;
        for (int p = 0; p < 3; ++p) {
            double h = parts[p] * scale;
            y -= h;
            svg << "<rect x='" << x << "' y='" << y << "' width='" << bar_w
                << "' height='" << h << "' fill='" << colors[p] << "'/>\n";
        }
        svg << "<text x='" << x + bar_w / 2 << "' y='" << base + 20
            << "' text-anchor='middle' font-size='12'>" << e->circuit_id
            << "</text>\n";
        x += bar_w + gap;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace vqcf
