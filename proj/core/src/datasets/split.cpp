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

#include "qadv/datasets/split.hpp"

#include <algorithm>

#include "qadv/util/error.hpp"
#include "qadv/util/rng.hpp"

namespace qadv::datasets {

std::vector<Sample> make_samples(std::span<const RawImage> images, std::span<const int> label_map,
                                 const EncodeConfig& encoding, int side) {
    std::vector<Sample> out;
    out.reserve(images.size());
    for (const auto& img : images) {
        if (img.label < 0 || static_cast<std::size_t>(img.label) >= label_map.size() ||
            label_map[static_cast<std::size_t>(img.label)] < 0) {
            throw InputError("make_samples: image " + img.id + " has unmapped label " + std::to_string(img.label));
        }
        Sample s;
        if (img.rows == side && img.cols == side) {
            s.x = img.pixels;
        } else {
            s.x = downsample(img.pixels, img.rows, img.cols, side, side);
        }
        s.x_encoded = encode(s.x, encoding);
        s.label = label_map[static_cast<std::size_t>(img.label)];
        s.id = img.id;
        out.push_back(std::move(s));
    }
    return out;
}

DatasetSplit make_split(std::span<const Sample> items, std::size_t n_train, std::size_t n_test,
                        std::uint64_t seed) {
    if (items.size() < n_train + n_test) {
        throw InputError("make_split: need " + std::to_string(n_train + n_test) + " items, have " +
                         std::to_string(items.size()));
    }
    Rng rng(derive_seed(seed, "datasets.split"));
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < items.size(); ++i) {
        const int l = items[i].label;
        if (l != 0 && l != 1) {
            throw InputError("make_split: labels must be binary");
        }
        by_class[l].push_back(i);
    }
    shuffle(by_class[0], rng);
    shuffle(by_class[1], rng);

    std::size_t next[2] = {0, 0};
    auto take = [&](std::size_t n) {
        std::vector<std::size_t> picked;
        const std::size_t left0 = by_class[0].size() - next[0];
        const std::size_t left1 = by_class[1].size() - next[1];
        std::size_t k0 = std::min(left0, n / 2);
        std::size_t k1 = std::min(left1, n - k0);
        k0 = std::min(left0, n - k1);
        for (std::size_t k = 0; k < k0; ++k) picked.push_back(by_class[0][next[0]++]);
        for (std::size_t k = 0; k < k1; ++k) picked.push_back(by_class[1][next[1]++]);
        shuffle(picked, rng);
        return picked;
    };

    DatasetSplit split;
    for (auto i : take(n_train)) split.train.push_back(items[i]);
    for (auto i : take(n_test)) split.test.push_back(items[i]);
    return split;
}

grad::Example to_example(const Sample& s) {
    grad::Example e;
    e.x = s.x_encoded;
    e.label = s.label;
    e.id = s.id;
    return e;
}

std::vector<grad::Example> to_examples(std::span<const Sample> samples) {
    std::vector<grad::Example> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        out.push_back(to_example(s));
    }
    return out;
}

}  // namespace qadv::datasets
