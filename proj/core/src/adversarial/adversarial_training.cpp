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

#include "qadv/adversarial/adversarial_training.hpp"

#include "qadv/util/error.hpp"

namespace qadv::adversarial {

optim::TrainResult adversarial_train(const grad::Classifier& model, std::span<const grad::Example> legit_train,
                                     std::span<const grad::Example> adv_train,
                                     std::span<const grad::Example> legit_test,
                                     std::span<const grad::Example> adv_test, const AdvTrainConfig& config,
                                     const optim::EpochCallback& on_epoch) {
    if (legit_train.empty() || adv_train.empty()) {
        throw InputError("adversarial_train: both the legitimate and the adversarial training sets are required");
    }
    if (config.legit_per_batch < 1 || config.adv_per_batch < 1) {
        throw InputError("adversarial_train: per-batch counts must be at least 1");
    }
    const optim::BatchSource sources[] = {{legit_train, config.legit_per_batch}, {adv_train, config.adv_per_batch}};
    std::vector<optim::EvalSet> evals;
    evals.push_back({"legit_train", legit_train});
    evals.push_back({"adv_train", adv_train});
    if (!legit_test.empty()) evals.push_back({"legit_test", legit_test});
    if (!adv_test.empty()) evals.push_back({"adv_test", adv_test});
    return optim::train_mixed(model, sources, evals, config.train, std::nullopt, on_epoch);
}

}  // namespace qadv::adversarial
