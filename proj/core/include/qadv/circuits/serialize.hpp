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
#include <vector>

#include "qadv/circuits/circuit_template.hpp"

namespace qadv::circuits {

inline constexpr int kTemplateFormatVersion = 1;

/// Versioned JSON document {"format": "qadv.circuit", "version": 1, ...}.
/// Doubles are written in shortest round-trip form, so a round trip
/// reproduces the template bitwise.
std::string template_to_json(const CircuitTemplate& tmpl);
CircuitTemplate template_from_json(std::string_view text);

void save_template(const CircuitTemplate& tmpl, const std::filesystem::path& path);
CircuitTemplate load_template(const std::filesystem::path& path);

std::string gates_to_json(std::span<const sim::Gate> gates);
std::vector<sim::Gate> gates_from_json(std::string_view text);

}  // namespace qadv::circuits
