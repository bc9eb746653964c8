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
#include <string>
#include <string_view>

#include "qadv/optim/train.hpp"

namespace qadv::optim {

inline constexpr int kCheckpointFormatVersion = 1;

/// {"format": "qadv.checkpoint", "version": 1, "epoch", "theta",
///  "optimizers": [{"t", "m", "v", "beta1", "beta2", "eps"}], "rng": {...}}
std::string checkpoint_to_json(const TrainState& state);
TrainState checkpoint_from_json(std::string_view text);

void save_checkpoint(const TrainState& state, const std::filesystem::path& path);
TrainState load_checkpoint(const std::filesystem::path& path);

}  // namespace qadv::optim
