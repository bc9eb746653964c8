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
#include <span>
#include <string>
#include <string_view>

#include "qadv/datasets/split.hpp"

namespace qadv::datasets {

inline constexpr int kDatasetFormatVersion = 1;

/// {"format": "qadv.dataset", "version": 1, "encoding": {...},
///  "train": [...], "test": [...]} where each sample carries x and
/// x_encoded as base64 little-endian float64 payloads.
std::string split_to_json(const DatasetSplit& split);
DatasetSplit split_from_json(std::string_view text);

void save_split(const DatasetSplit& split, const std::filesystem::path& path);
DatasetSplit load_split(const std::filesystem::path& path);

}  // namespace qadv::datasets
