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

#include "qadv/datasets/snapshot.hpp"

#include <json.hpp>

#include "qadv/util/base64.hpp"
#include "qadv/util/csv.hpp"
#include "qadv/util/error.hpp"

namespace qadv::datasets {

namespace {

using nlohmann::json;

json samples_json(std::span<const Sample> samples) {
    json arr = json::array();
    for (const auto& s : samples) {
        arr.push_back({{"id", s.id},
                       {"label", s.label},
                       {"x", encode_f64_le(s.x)},
                       {"x_encoded", encode_f64_le(s.x_encoded)}});
    }
    return arr;
}

std::vector<Sample> parse_samples(const json& arr) {
    std::vector<Sample> out;
    for (const auto& j : arr) {
        Sample s;
        s.id = j.at("id").get<std::string>();
        s.label = j.at("label").get<int>();
        s.x = decode_f64_le(j.at("x").get<std::string>());
        s.x_encoded = decode_f64_le(j.at("x_encoded").get<std::string>());
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::string split_to_json(const DatasetSplit& split) {
    json doc;
    doc["format"] = "qadv.dataset";
    doc["version"] = kDatasetFormatVersion;
    doc["encoding"] = {{"normalization", std::string(normalization_name(split.encoding.normalization))},
                       {"scale", split.encoding.scale},
                       {"range_scale", split.encoding.range_scale},
                       {"pad_to", split.encoding.pad_to}};
    doc["train"] = samples_json(split.train);
    doc["test"] = samples_json(split.test);
    return doc.dump(1) + "\n";
}

DatasetSplit split_from_json(std::string_view text) {
    try {
        const json doc = json::parse(text);
        if (doc.at("format").get<std::string>() != "qadv.dataset") {
            throw FormatError("dataset: not a qadv.dataset document");
        }
        if (doc.at("version").get<int>() != kDatasetFormatVersion) {
            throw FormatError("dataset: unsupported version");
        }
        DatasetSplit split;
        const auto& e = doc.at("encoding");
        split.encoding.normalization = parse_normalization(e.at("normalization").get<std::string>());
        split.encoding.scale = e.at("scale").get<double>();
        split.encoding.range_scale = e.at("range_scale").get<double>();
        split.encoding.pad_to = e.at("pad_to").get<int>();
        split.train = parse_samples(doc.at("train"));
        split.test = parse_samples(doc.at("test"));
        return split;
    } catch (const json::exception& ex) {
        throw FormatError(std::string("dataset: ") + ex.what());
    }
}

void save_split(const DatasetSplit& split, const std::filesystem::path& path) {
    write_text_file(path, split_to_json(split));
}

DatasetSplit load_split(const std::filesystem::path& path) { return split_from_json(read_text_file(path)); }

}  // namespace qadv::datasets
