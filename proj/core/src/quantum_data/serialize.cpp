// Copyright 2026 The qadvlab Authors
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

#include "qadv/quantum_data/serialize.hpp"

#include <fstream>
#include <json.hpp>

#include "qadv/util/base64.hpp"
#include "qadv/util/csv.hpp"
#include "qadv/util/error.hpp"

namespace qadv::qdata {

namespace {

using nlohmann::json;

json samples_json(const std::vector<QuantumSample>& v) {
    json arr = json::array();
    for (const auto& s : v) {
        arr.push_back({{"id", s.id},
                       {"label", s.label},
                       {"phase", std::string(phase_name(static_cast<Phase>(s.label)))},
                       {"v_over_g", s.v_over_g},
                       {"phi", s.phi},
                       {"seed", s.seed}});
    }
    return arr;
}

}  // namespace

void save_quantum_dataset(const QuantumDataset& ds, const std::filesystem::path& header) {
    const auto& c = ds.config;
    auto payload = header;
    payload.replace_extension(".bin");
    json doc;
    doc["format"] = "qadv.qdata";
    doc["version"] = kQDataFormatVersion;
    doc["payload"] = payload.filename().string();
    doc["params"] = {{"n_qubits", c.chain.n_qubits},
                     {"g", c.chain.g},
                     {"alpha", c.chain.alpha},
                     {"tau", c.chain.tau},
                     {"thermal_range", {c.thermal_lo, c.thermal_hi}},
                     {"localized_range", {c.localized_lo, c.localized_hi}},
                     {"evolve_tol", c.evolve.tol}};
    doc["seed"] = c.seed;
    doc["train"] = samples_json(ds.train);
    doc["test"] = samples_json(ds.test);
    write_text_file(header, doc.dump(1) + "\n");

    std::vector<std::uint8_t> bytes;
    for (const auto* split : {&ds.train, &ds.test}) {
        for (const auto& s : *split) {
            if (s.state->n_qubits() != c.chain.n_qubits) {
                throw InputError("save_quantum_dataset: state qubit count differs from the header");
            }
            for (const auto& a : s.state->amplitudes()) {
                append_f64_le(bytes, a.real());
                append_f64_le(bytes, a.imag());
            }
        }
    }
    std::ofstream out(payload, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw InputError("cannot write " + payload.string());
    }
}

QuantumDataset load_quantum_dataset(const std::filesystem::path& header) {
    json doc;
    try {
        doc = json::parse(read_text_file(header));
    } catch (const json::exception& e) {
        throw FormatError(header.string() + ": " + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != "qadv.qdata" || doc.at("version").get<int>() != kQDataFormatVersion) {
            throw FormatError(header.string() + ": not a qadv.qdata v1 document");
        }
        QuantumDataset ds;
        auto& c = ds.config;
        const auto& p = doc.at("params");
        c.chain.n_qubits = p.at("n_qubits").get<int>();
        c.chain.g = p.at("g").get<double>();
        c.chain.alpha = p.at("alpha").get<double>();
        c.chain.tau = p.at("tau").get<double>();
        c.thermal_lo = p.at("thermal_range")[0].get<double>();
        c.thermal_hi = p.at("thermal_range")[1].get<double>();
        c.localized_lo = p.at("localized_range")[0].get<double>();
        c.localized_hi = p.at("localized_range")[1].get<double>();
        c.evolve.tol = p.at("evolve_tol").get<double>();
        c.seed = doc.at("seed").get<std::uint64_t>();

        const auto payload = header.parent_path() / doc.at("payload").get<std::string>();
        std::ifstream in(payload, std::ios::binary);
        if (!in) {
            throw InputError("cannot open " + payload.string());
        }
        const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const std::size_t dim = std::size_t{1} << c.chain.n_qubits;
        std::size_t off = 0;
        auto read_split = [&](const json& arr, std::vector<QuantumSample>& out) {
            for (const auto& j : arr) {
                QuantumSample s;
                s.id = j.at("id").get<std::string>();
                s.label = j.at("label").get<int>();
                s.v_over_g = j.at("v_over_g").get<double>();
                s.phi = j.at("phi").get<double>();
                s.seed = j.at("seed").get<std::uint64_t>();
                if (bytes.size() < off + dim * 16) {
                    throw FormatError(payload.string() + ": truncated amplitude payload");
                }
                std::vector<sim::Amplitude> amps(dim);
                for (std::size_t i = 0; i < dim; ++i, off += 16) {
                    amps[i] = {read_f64_le(bytes.data() + off), read_f64_le(bytes.data() + off + 8)};
                }
                s.state = std::make_shared<const sim::StateVector>(
                    sim::StateVector::from_amplitudes(c.chain.n_qubits, std::move(amps)));
                out.push_back(std::move(s));
            }
        };
        read_split(doc.at("train"), ds.train);
        read_split(doc.at("test"), ds.test);
        if (off != bytes.size()) {
            throw FormatError(payload.string() + ": payload longer than the header declares");
        }
        return ds;
    } catch (const json::exception& e) {
        throw FormatError(header.string() + ": " + e.what());
    }
}

}  // namespace qadv::qdata
