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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qadv/adversarial/attacks.hpp"
#include "qadv/circuits/architectures.hpp"
#include "qadv/datasets/encode.hpp"
#include "qadv/grad/loss.hpp"
#include "qadv/optim/train.hpp"
#include "qadv/quantum_data/dataset.hpp"
#include "qadv/util/error.hpp"
#include "qadv/xeb/xeb.hpp"

namespace qadv::runner {

inline constexpr int kSchemaVersion = 1;

/// Raised for anything wrong with a configuration; the CLI maps it to exit
/// status 2.
class ConfigError : public InputError {
   public:
    using InputError::InputError;
};

enum class Command { TRAIN, ATTACK, ADVTRAIN, GEN_QDATA, XEB, EVAL, BENCHMARK_ENCODINGS, FIGURES };
std::string_view command_name(Command c);
Command parse_command(std::string_view name);

enum class DatasetKind {
    NONE,
    // IDX image/label pair, downsampled and split here.
    MNIST_IDX,
    // JSON manifest of PGM/CSV images.
    MANIFEST,
    // A saved qadv.dataset split.
    SNAPSHOT,
    // Quantum data generated from the Aubry-André chain.
    QUANTUM,
    // A saved qadv.qdata header.
    QUANTUM_SNAPSHOT,
};
std::string_view dataset_kind_name(DatasetKind k);

struct DatasetSpec {
    DatasetKind kind = DatasetKind::NONE;
    std::filesystem::path images;
    std::filesystem::path labels;
    // Manifest or snapshot file.
    std::filesystem::path path;
    // Source labels mapped to binary labels 0 and 1, in that order.
    std::vector<int> classes = {0, 1};
    std::size_t n_train = 500;
    std::size_t n_test = 100;
    int side = 16;
    datasets::EncodeConfig encoding;
    // QUANTUM only; its seed is derived from the experiment seed.
    qdata::QDataConfig qdata;

    bool quantum() const { return kind == DatasetKind::QUANTUM || kind == DatasetKind::QUANTUM_SNAPSHOT; }
};

struct ArchitectureConfig {
    circuits::Preset preset = circuits::Preset::INTERLEAVED_MEDICAL_10Q;
    int readout_qubit = 5;
    grad::LossSpec loss;
    double data_weight = 2.0;
    std::vector<sim::GateKind> layer_kinds = {sim::GateKind::RX, sim::GateKind::RZ};
};

/// How many samples of each split an attack covers; -1 is the whole split.
struct AttackScope {
    long long train = 0;
    long long test = -1;
};

struct FiguresConfig {
    std::vector<double> v_over_g = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0};
    // Random phases averaged per V/g column (0 uses phi = 0 only).
    int phases = 0;
};

struct ExperimentConfig {
    int schema_version = kSchemaVersion;
    Command command = Command::TRAIN;
    std::uint64_t seed = 0;
    int threads = 1;
    std::filesystem::path out;

    // Completed run whose dataset, architecture and checkpoint are reused.
    std::filesystem::path from_run;
    // Attack run whose adversarial set feeds advtrain.
    std::filesystem::path adversarial_run;
    std::filesystem::path checkpoint;

    DatasetSpec dataset;
    ArchitectureConfig architecture;
    // Seeds inside these are derived from `seed` by the pipelines.
    optim::TrainConfig train;
    adversarial::AttackConfig attack;
    AttackScope attack_scope;
    int legit_per_batch = 10;
    int adv_per_batch = 10;
    xeb::XebConfig xeb;
    FiguresConfig figures;
};

/// Parses a config document. Relative paths resolve against `base_dir`.
/// Unknown keys are rejected.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Fully resolved document (absolute paths, every field present); parsing
/// it again yields the same configuration.
nlohmann::json config_to_json(const ExperimentConfig& config);

nlohmann::json architecture_to_json(const ArchitectureConfig& arch);
ArchitectureConfig architecture_from_json(const nlohmann::json& doc);

/// Semantic checks, including that referenced inputs exist.
void validate(const ExperimentConfig& config);

/// The output directory: `out` if set, otherwise $QADV_OUT/<command> or
/// runs/<command>. A relative `out` is placed under $QADV_OUT when set.
std::filesystem::path resolve_out(const ExperimentConfig& config);

}  // namespace qadv::runner
