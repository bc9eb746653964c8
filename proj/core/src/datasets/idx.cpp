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

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <memory>

#include "qadv/datasets/image.hpp"
#include "qadv/util/error.hpp"

namespace qadv::datasets {

namespace {

// gzread passes uncompressed files through unchanged.
std::vector<std::uint8_t> read_maybe_gzip(const std::filesystem::path& path) {
    std::unique_ptr<gzFile_s, int (*)(gzFile)> f(gzopen(path.string().c_str(), "rb"), gzclose);
    if (!f) {
        throw InputError("cannot open " + path.string());
    }
    std::vector<std::uint8_t> out;
    std::uint8_t buf[1 << 16];
    for (;;) {
        const int n = gzread(f.get(), buf, sizeof(buf));
        if (n < 0) {
            throw FormatError("read error in " + path.string());
        }
        if (n == 0) {
            break;
        }
        out.insert(out.end(), buf, buf + n);
    }
    return out;
}

std::uint32_t be32(const std::vector<std::uint8_t>& b, std::size_t off, const std::filesystem::path& path) {
    if (off + 4 > b.size()) {
        throw FormatError(path.string() + ": truncated IDX header");
    }
    return (std::uint32_t{b[off]} << 24) | (std::uint32_t{b[off + 1]} << 16) | (std::uint32_t{b[off + 2]} << 8) |
           std::uint32_t{b[off + 3]};
}

}  // namespace

std::vector<RawImage> load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                               std::span<const int> keep) {
    const auto ib = read_maybe_gzip(images);
    const auto lb = read_maybe_gzip(labels);
    if (be32(ib, 0, images) != 0x00000803) {
        throw FormatError(images.string() + ": bad IDX image magic");
    }
    if (be32(lb, 0, labels) != 0x00000801) {
        throw FormatError(labels.string() + ": bad IDX label magic");
    }
    const std::uint32_t n = be32(ib, 4, images);
    const std::uint32_t rows = be32(ib, 8, images);
    const std::uint32_t cols = be32(ib, 12, images);
    const std::uint32_t nl = be32(lb, 4, labels);
    if (n != nl) {
        throw FormatError("IDX count mismatch: " + std::to_string(n) + " images, " + std::to_string(nl) + " labels");
    }
    const std::size_t px = std::size_t{rows} * cols;
    if (ib.size() < 16 + std::size_t{n} * px) {
        throw FormatError(images.string() + ": truncated image payload");
    }
    if (lb.size() < 8 + std::size_t{n}) {
        throw FormatError(labels.string() + ": truncated label payload");
    }
    std::vector<RawImage> out;
    for (std::uint32_t i = 0; i < n; ++i) {
        const int label = lb[8 + i];
        if (!keep.empty() && std::find(keep.begin(), keep.end(), label) == keep.end()) {
            continue;
        }
        RawImage img;
        img.rows = static_cast<int>(rows);
        img.cols = static_cast<int>(cols);
        img.label = label;
        img.id = std::to_string(i);
        img.pixels.resize(px);
        const std::uint8_t* p = ib.data() + 16 + std::size_t{i} * px;
        for (std::size_t k = 0; k < px; ++k) {
            img.pixels[k] = p[k] / 255.0;
        }
        out.push_back(std::move(img));
    }
    return out;
}

}  // namespace qadv::datasets
