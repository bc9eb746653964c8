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

#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "qadv/datasets/split.hpp"
#include "qadv/grad/param_shift.hpp"
#include "qadv/quantum_data/dataset.hpp"
#include "qadv/runner/config.hpp"

namespace qadv::runner {

struct RunResult {
    std::filesystem::path out;
    nlohmann::json summary;
};

/// Validates and runs the configured command. Artifacts go under
/// resolve_out(config); the summary is also written to summary.json.
RunResult run(const ExperimentConfig& config);

grad::Classifier make_model(const ArchitectureConfig& arch);

/// Builds or loads a classical split; `seed` drives the split.
datasets::DatasetSplit load_classical(const DatasetSpec& spec, std::uint64_t seed, int data_slots);

/// Generates or loads quantum data; `seed` drives generation.
qdata::QuantumDataset load_quantum(const DatasetSpec& spec, std::uint64_t seed, int threads);

/// A trained model with the data it was trained on.
struct RunInputs {
    ArchitectureConfig architecture;
    grad::Classifier model;
    std::vector<double> theta;
    std::optional<datasets::DatasetSplit> classical;
    std::optional<qdata::QuantumDataset> quantum;
};

/// From config.from_run when set, otherwise from config.checkpoint and
/// config.dataset.
RunInputs load_inputs(const ExperimentConfig& config);

}  // namespace qadv::runner
