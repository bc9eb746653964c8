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

#include "qadv/optim/checkpoint.hpp"

#include <json.hpp>

#include "qadv/util/csv.hpp"
#include "qadv/util/error.hpp"

namespace qadv::optim {

using nlohmann::json;

std::string checkpoint_to_json(const TrainState& state) {
    json doc;
    doc["format"] = "qadv.checkpoint";
    doc["version"] = kCheckpointFormatVersion;
    doc["epoch"] = state.epoch;
    doc["theta"] = state.theta;
    json opts = json::array();
    for (const auto& o : state.optimizers) {
        opts.push_back({{"t", o.t},
                        {"m", o.m},
                        {"v", o.v},
                        {"beta1", o.cfg.beta1},
                        {"beta2", o.cfg.beta2},
                        {"eps", o.cfg.eps}});
    }
    doc["optimizers"] = std::move(opts);
    doc["rng"] = {{"batch", state.batch_rng}, {"eval", state.eval_rng}};
    return doc.dump(1) + "\n";
}

TrainState checkpoint_from_json(std::string_view text) {
    try {
        const json doc = json::parse(text);
        if (doc.at("format").get<std::string>() != "qadv.checkpoint") {
            throw FormatError("checkpoint: not a qadv.checkpoint document");
        }
        if (doc.at("version").get<int>() != kCheckpointFormatVersion) {
            throw FormatError("checkpoint: unsupported version " + std::to_string(doc.at("version").get<int>()));
        }
        TrainState st;
        st.epoch = doc.at("epoch").get<int>();
        st.theta = doc.at("theta").get<std::vector<double>>();
        for (const auto& o : doc.at("optimizers")) {
            AdamState a;
            a.t = o.at("t").get<std::int64_t>();
            a.m = o.at("m").get<std::vector<double>>();
            a.v = o.at("v").get<std::vector<double>>();
            a.cfg.beta1 = o.at("beta1").get<double>();
            a.cfg.beta2 = o.at("beta2").get<double>();
            a.cfg.eps = o.at("eps").get<double>();
            if (a.m.size() != a.v.size()) {
                throw FormatError("checkpoint: optimizer moment lengths differ");
            }
            st.optimizers.push_back(std::move(a));
        }
        st.batch_rng = doc.at("rng").at("batch").get<std::string>();
        st.eval_rng = doc.at("rng").at("eval").get<std::string>();
        return st;
    } catch (const json::exception& e) {
        throw FormatError(std::string("checkpoint: ") + e.what());
    }
}

void save_checkpoint(const TrainState& state, const std::filesystem::path& path) {
    write_text_file(path, checkpoint_to_json(state));
}

TrainState load_checkpoint(const std::filesystem::path& path) { return checkpoint_from_json(read_text_file(path)); }

}  // namespace qadv::optim
