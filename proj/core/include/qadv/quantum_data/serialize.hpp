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

#include "qadv/quantum_data/dataset.hpp"

namespace qadv::qdata {

inline constexpr int kQDataFormatVersion = 1;

/// Writes a JSON header at `header` and the amplitudes to the same path with
/// extension ".bin": per state, 2^n little-endian float64 (re, im) pairs,
/// train states first, then test states, each in split order.
void save_quantum_dataset(const QuantumDataset& ds, const std::filesystem::path& header);
QuantumDataset load_quantum_dataset(const std::filesystem::path& header);

}  // namespace qadv::qdata
