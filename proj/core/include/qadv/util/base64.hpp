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
#include <string_view>
#include <vector>

namespace qadv {

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(std::string_view text);

/// Raw little-endian float64 payload, base64-encoded.
std::string encode_f64_le(std::span<const double> values);
std::vector<double> decode_f64_le(std::string_view text);

/// Appends / reads little-endian float64 values in a byte buffer.
void append_f64_le(std::vector<std::uint8_t>& out, double value);
double read_f64_le(const std::uint8_t* p);

}  // namespace qadv
