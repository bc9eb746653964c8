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

#include "qadv/datasets/encode.hpp"

#include <cmath>
#include <string>

#include "qadv/util/error.hpp"

namespace qadv::datasets {

namespace {

double l2_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) {
        s += v * v;
    }
    return std::sqrt(s);
}

void check_lengths(std::span<const double> x, const EncodeConfig& c) {
    if (x.empty()) {
        throw InputError("encode: empty feature vector");
    }
    if (c.pad_to < static_cast<int>(x.size())) {
        throw InputError("encode: pad_to " + std::to_string(c.pad_to) + " is shorter than the " +
                         std::to_string(x.size()) + " features");
    }
}

}  // namespace

std::string_view normalization_name(Normalization n) { return n == Normalization::RANGE ? "RANGE" : "L2"; }

Normalization parse_normalization(std::string_view name) {
    if (name == "L2") return Normalization::L2;
    if (name == "RANGE") return Normalization::RANGE;
    throw InputError("unknown normalization '" + std::string(name) + "'");
}

std::vector<double> encode(std::span<const double> x, const EncodeConfig& config) {
    check_lengths(x, config);
    std::vector<double> out(static_cast<std::size_t>(config.pad_to), 0.0);
    if (config.normalization == Normalization::RANGE) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            out[i] = config.range_scale * x[i];
        }
        return out;
    }
    const double norm = l2_norm(x);
    if (!(norm > 0.0)) {
        throw InputError("encode: cannot normalize an all-zero feature vector");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = config.scale * (x[i] / norm);
    }
    return out;
}

std::vector<double> encode_vjp(std::span<const double> x, std::span<const double> grad_encoded,
                               const EncodeConfig& config) {
    check_lengths(x, config);
    if (grad_encoded.size() < x.size()) {
        throw InputError("encode_vjp: encoded gradient is shorter than the features");
    }
    std::vector<double> out(x.size());
    if (config.normalization == Normalization::RANGE) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            out[i] = config.range_scale * grad_encoded[i];
        }
        return out;
    }
    // d(s x / |x|)/dx = (s / |x|)(I - xhat xhat^T), symmetric.
    const double norm = l2_norm(x);
    if (!(norm > 0.0)) {
        throw InputError("encode_vjp: all-zero feature vector");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot += (x[i] / norm) * grad_encoded[i];
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = config.scale / norm * (grad_encoded[i] - (x[i] / norm) * dot);
    }
    return out;
}

}  // namespace qadv::datasets
