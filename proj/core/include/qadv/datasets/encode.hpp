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
#include <string_view>
#include <vector>

namespace qadv::datasets {

enum class Normalization {
    // x_encoded = scale * x / ||x||_2
    L2,
    // x_encoded = range_scale * x, per pixel
    RANGE,
};

std::string_view normalization_name(Normalization n);
Normalization parse_normalization(std::string_view name);

struct EncodeConfig {
    Normalization normalization = Normalization::L2;
    double scale = 2.0;
    double range_scale = 1.5707963267948966;
    // Output length; zeros are appended after the features.
    int pad_to = 260;
};

std::vector<double> encode(std::span<const double> x, const EncodeConfig& config = {});

/// Pulls a gradient over x_encoded back to a gradient over x (padding
/// entries of the encoded gradient are ignored).
std::vector<double> encode_vjp(std::span<const double> x, std::span<const double> grad_encoded,
                               const EncodeConfig& config = {});

}  // namespace qadv::datasets
