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
#include <vector>

namespace qadv::datasets {

/// Grayscale image with pixels in [0, 1], row-major.
struct RawImage {
    int rows = 0;
    int cols = 0;
    std::vector<double> pixels;
    int label = 0;
    std::string id;
};

/// Reads an IDX image/label file pair (gzip or raw) and keeps the items
/// whose label is in `keep` (all items when `keep` is empty). Pixel bytes
/// map to [0, 1] by /255. Ids are "<index>" in file order.
std::vector<RawImage> load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                               std::span<const int> keep = {});

/// Area-weighted mean pooling to out_rows x out_cols.
std::vector<double> downsample(std::span<const double> image, int rows, int cols, int out_rows = 16,
                               int out_cols = 16);

/// Reads a PGM (P2 or P5) or CSV grayscale image.
RawImage load_image_file(const std::filesystem::path& path);

/// Loads every image listed in a JSON manifest
/// {"images": [{"path": "...", "label": 0}, ...]}; paths are relative to the
/// manifest's directory. Ids are the manifest paths.
std::vector<RawImage> load_image_directory(const std::filesystem::path& manifest);

}  // namespace qadv::datasets
