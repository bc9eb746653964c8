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
#include <span>
#include <string>
#include <vector>

#include "qadv/datasets/encode.hpp"
#include "qadv/datasets/image.hpp"
#include "qadv/grad/param_shift.hpp"

namespace qadv::datasets {

struct Sample {
    std::vector<double> x;
    std::vector<double> x_encoded;
    int label = 0;
    std::string id;
};

struct DatasetSplit {
    std::vector<Sample> train;
    std::vector<Sample> test;
    EncodeConfig encoding;
};

/// Downsamples (when larger than the target) and encodes each image.
/// `label_map[k]` is the binary label of source label k; images whose source
/// label has no mapping are rejected.
std::vector<Sample> make_samples(std::span<const RawImage> images, std::span<const int> label_map,
                                 const EncodeConfig& encoding = {}, int side = 16);

/// Seeded, class-balanced, disjoint train/test split. Each split takes half
/// its items from each class where the classes allow it; both splits are
/// shuffled.
DatasetSplit make_split(std::span<const Sample> items, std::size_t n_train, std::size_t n_test,
                        std::uint64_t seed);

grad::Example to_example(const Sample& s);
std::vector<grad::Example> to_examples(std::span<const Sample> samples);

}  // namespace qadv::datasets
