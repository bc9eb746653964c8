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

#include "qadv/circuits/serialize.hpp"

#include <json.hpp>

#include "qadv/util/csv.hpp"
#include "qadv/util/error.hpp"

namespace qadv::circuits {

namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "qadv.circuit";

std::string_view role_name(SlotRole r) {
    switch (r) {
        case SlotRole::DATA:
            return "DATA";
        case SlotRole::PARAM:
            return "PARAM";
        case SlotRole::DATA_PLUS_PARAM:
            return "DATA_PLUS_PARAM";
    }
    return "PARAM";
}

SlotRole parse_role(const std::string& s) {
    if (s == "DATA") return SlotRole::DATA;
    if (s == "PARAM") return SlotRole::PARAM;
    if (s == "DATA_PLUS_PARAM") return SlotRole::DATA_PLUS_PARAM;
    throw FormatError("circuit JSON: unknown slot role '" + s + "'");
}

json gate_json(const sim::Gate& g) {
    json j;
    j["gate"] = std::string(sim::gate_name(g.kind));
    if (sim::is_two_qubit(g.kind)) {
        j["qubits"] = {g.q0, g.q1};
    } else {
        j["qubits"] = {g.q0};
    }
    if (sim::is_rotation(g.kind)) {
        j["angle"] = g.angle;
    }
    if (g.kind == sim::GateKind::RPHI) {
        j["phase"] = g.phase;
    }
    return j;
}

sim::Gate parse_gate(const json& j) {
    sim::Gate g;
    g.kind = sim::parse_gate_kind(j.at("gate").get<std::string>());
    const auto& qs = j.at("qubits");
    const std::size_t want = sim::is_two_qubit(g.kind) ? 2 : 1;
    if (!qs.is_array() || qs.size() != want) {
        throw FormatError("circuit JSON: gate " + j.at("gate").get<std::string>() + " needs " +
                          std::to_string(want) + " qubit(s)");
    }
    g.q0 = qs[0].get<int>();
    g.q1 = want == 2 ? qs[1].get<int>() : 0;
    if (sim::is_rotation(g.kind)) {
        g.angle = j.at("angle").get<double>();
    }
    if (g.kind == sim::GateKind::RPHI) {
        g.phase = j.at("phase").get<double>();
    }
    return g;
}

template <typename Fn>
auto wrap_json_errors(Fn&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        throw FormatError(std::string("circuit JSON: ") + e.what());
    }
}

}  // namespace

std::string template_to_json(const CircuitTemplate& tmpl) {
    json doc;
    doc["format"] = std::string(kFormat);
    doc["version"] = kTemplateFormatVersion;
    doc["name"] = tmpl.name();
    doc["n_qubits"] = tmpl.n_qubits();
    doc["data_slot_count"] = tmpl.data_slot_count();
    doc["param_slot_count"] = tmpl.param_slot_count();
    json program = json::array();
    for (const auto& item : tmpl.program()) {
        if (const auto* g = std::get_if<sim::Gate>(&item)) {
            program.push_back(gate_json(*g));
            continue;
        }
        const auto& s = std::get<AngleSlot>(item);
        json j;
        j["slot"] = std::string(role_name(s.role));
        j["gate"] = std::string(sim::gate_name(s.kind));
        j["qubit"] = s.qubit;
        j["layer"] = s.layer;
        if (s.uses_data()) {
            j["data_index"] = s.data_index;
            j["weight"] = s.weight;
        }
        if (s.uses_param()) {
            j["param_index"] = s.param_index;
        }
        program.push_back(std::move(j));
    }
    doc["program"] = std::move(program);
    return doc.dump(1) + "\n";
}

CircuitTemplate template_from_json(std::string_view text) {
    return wrap_json_errors([&] {
        const json doc = json::parse(text);
        if (doc.at("format").get<std::string>() != kFormat) {
            throw FormatError("circuit JSON: not a qadv.circuit document");
        }
        const int version = doc.at("version").get<int>();
        if (version != kTemplateFormatVersion) {
            throw FormatError("circuit JSON: unsupported version " + std::to_string(version));
        }
        std::vector<ProgramItem> program;
        for (const auto& j : doc.at("program")) {
            if (!j.contains("slot")) {
                program.emplace_back(parse_gate(j));
                continue;
            }
            AngleSlot s;
            s.role = parse_role(j.at("slot").get<std::string>());
            s.kind = sim::parse_gate_kind(j.at("gate").get<std::string>());
            s.qubit = j.at("qubit").get<int>();
            s.layer = j.value("layer", 0);
            if (s.uses_data()) {
                s.data_index = j.at("data_index").get<int>();
                s.weight = j.at("weight").get<double>();
            }
            if (s.uses_param()) {
                s.param_index = j.at("param_index").get<int>();
            }
            program.emplace_back(s);
        }
        CircuitTemplate tmpl(doc.at("n_qubits").get<int>(), std::move(program), doc.value("name", std::string{}));
        if (doc.contains("data_slot_count") && doc["data_slot_count"].get<int>() != tmpl.data_slot_count()) {
            throw FormatError("circuit JSON: data_slot_count does not match the program");
        }
        if (doc.contains("param_slot_count") && doc["param_slot_count"].get<int>() != tmpl.param_slot_count()) {
            throw FormatError("circuit JSON: param_slot_count does not match the program");
        }
        return tmpl;
    });
}

void save_template(const CircuitTemplate& tmpl, const std::filesystem::path& path) {
    write_text_file(path, template_to_json(tmpl));
}

CircuitTemplate load_template(const std::filesystem::path& path) { return template_from_json(read_text_file(path)); }

std::string gates_to_json(std::span<const sim::Gate> gates) {
    json arr = json::array();
    for (const auto& g : gates) {
        arr.push_back(gate_json(g));
    }
    return arr.dump() + "\n";
}

std::vector<sim::Gate> gates_from_json(std::string_view text) {
    return wrap_json_errors([&] {
        std::vector<sim::Gate> out;
        for (const auto& j : json::parse(text)) {
            out.push_back(parse_gate(j));
        }
        return out;
    });
}

}  // namespace qadv::circuits
