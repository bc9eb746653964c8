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

#include <span>

#include "qadv/optim/train.hpp"

namespace qadv::adversarial {

struct AdvTrainConfig {
    // theta is re-initialized from train.seed.
    optim::TrainConfig train;
    int legit_per_batch = 10;
    int adv_per_batch = 10;
};

/// Retrains from scratch on legit ∪ adversarial: every update draws
/// legit_per_batch items from the legitimate set and adv_per_batch from the
/// adversarial set. Metrics splits: legit_train, adv_train, legit_test,
/// adv_test (empty sets are skipped).
optim::TrainResult adversarial_train(const grad::Classifier& model, std::span<const grad::Example> legit_train,
                                     std::span<const grad::Example> adv_train,
                                     std::span<const grad::Example> legit_test,
                                     std::span<const grad::Example> adv_test, const AdvTrainConfig& config,
                                     const optim::EpochCallback& on_epoch = {});

}  // namespace qadv::adversarial
