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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qadv/grad/param_shift.hpp"
#include "qadv/optim/adam.hpp"

namespace qadv::optim {

enum class Schedule { GROUPED_BY_QUBIT, FIXED_SUBSET, FULL };

std::string_view schedule_name(Schedule s);
Schedule parse_schedule(std::string_view name);

struct TrainConfig {
    int epochs = 20;
    double learning_rate = 0.05;
    // Training items drawn per update (single-pool training).
    int batch_size = 20;
    // Items drawn per split for the per-epoch metrics; 0 evaluates the full set.
    int eval_batch = 50;
    Schedule schedule = Schedule::GROUPED_BY_QUBIT;
    // Trainable indices for FIXED_SUBSET.
    std::vector<int> subset;
    // Updates per epoch for FIXED_SUBSET and FULL.
    int steps_per_epoch = 1;
    std::uint64_t seed = 0;
    int threads = 1;
    AdamConfig adam;
    // theta is initialized uniform on [init_low, init_high).
    double init_low = 0.0;
    double init_high = 6.283185307179586;
};

/// One metrics row: (epoch, split, loss, accuracy). Epoch 0 is before any update.
struct MetricsRecord {
    int epoch = 0;
    std::string split;
    double loss = 0.0;
    double accuracy = 0.0;
};

/// A pool contributes `count` distinct items to every training batch.
struct BatchSource {
    std::span<const grad::Example> pool;
    int count = 0;
};

struct EvalSet {
    std::string split;
    std::span<const grad::Example> items;
};

/// Resumable training state.
struct TrainState {
    int epoch = 0;
    std::vector<double> theta;
    std::vector<AdamState> optimizers;
    std::string batch_rng;
    std::string eval_rng;
};

/// Parameter groups the schedule updates, in update order.
std::vector<std::vector<int>> schedule_groups(const circuits::CircuitTemplate& circuit, const TrainConfig& config);

/// theta ~ uniform[init_low, init_high) from the "train.init" stream.
std::vector<double> initial_theta(const circuits::CircuitTemplate& circuit, const TrainConfig& config);

struct Evaluation {
    double loss = 0.0;
    double accuracy = 0.0;
};

/// Mean loss and accuracy over the set.
Evaluation evaluate(const grad::Classifier& model, std::span<const double> theta, std::span<const grad::Example> set,
                    int threads = 1);

/// Mean loss-gradient over a batch for the given parameter indices; samples
/// are processed in parallel and summed in batch order.
std::vector<double> batch_gradient(const grad::Classifier& model, std::span<const double> theta,
                                   std::span<const grad::Example* const> batch, std::span<const int> indices,
                                   int threads);

struct TrainResult {
    TrainState state;
    std::vector<MetricsRecord> history;
};

using EpochCallback = std::function<void(const TrainState&, std::span<const MetricsRecord>)>;

/// Runs the configured schedule. Each update draws a fresh batch from
/// every source, averages the loss-gradient of the group over the batch
/// and applies Adam to that group only. Metrics for every eval set are
/// recorded at epoch 0 and after each epoch.
TrainResult train_mixed(const grad::Classifier& model, std::span<const BatchSource> sources,
                        std::span<const EvalSet> eval_sets, const TrainConfig& config,
                        const std::optional<TrainState>& resume = std::nullopt, const EpochCallback& on_epoch = {});

/// Single-pool training with "train" and "test" metric splits.
TrainResult train(const grad::Classifier& model, std::span<const grad::Example> train_set,
                  std::span<const grad::Example> test_set, const TrainConfig& config,
                  const std::optional<TrainState>& resume = std::nullopt, const EpochCallback& on_epoch = {});

/// CSV with header epoch,split,loss,accuracy.
std::string metrics_csv(std::span<const MetricsRecord> history);

}  // namespace qadv::optim
