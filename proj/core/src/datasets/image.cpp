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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include <json.hpp>

#include "qadv/datasets/image.hpp"
#include "qadv/util/csv.hpp"
#include "qadv/util/error.hpp"

namespace qadv::datasets {

namespace {

struct Tap {
    int index;
    double weight;
};

// Input cells overlapping output cell k when [0, in) is cut into `out`
// equal intervals, with overlap lengths as weights.
std::vector<std::vector<Tap>> area_taps(int in, int out) {
    std::vector<std::vector<Tap>> taps(static_cast<std::size_t>(out));
    const double step = static_cast<double>(in) / out;
    for (int k = 0; k < out; ++k) {
        const double lo = k * step;
        const double hi = (k + 1) * step;
        for (int i = static_cast<int>(lo); i < in && i < hi; ++i) {
            const double w = std::min<double>(i + 1, hi) - std::max<double>(i, lo);
            if (w > 0) {
                taps[static_cast<std::size_t>(k)].push_back({i, w});
            }
        }
    }
    return taps;
}

std::string next_pgm_token(std::istream& in) {
    std::string tok;
    char c;
    while (in.get(c)) {
        if (c == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(c);
    }
    return tok;
}

int to_int(const std::string& s, const std::filesystem::path& path) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
        throw FormatError(path.string() + ": bad integer '" + s + "'");
    }
    return v;
}

RawImage load_pgm(const std::string& text, const std::filesystem::path& path) {
    std::istringstream in(text);
    const std::string magic = next_pgm_token(in);
    if (magic != "P2" && magic != "P5") {
        throw FormatError(path.string() + ": not a PGM file");
    }
    RawImage img;
    img.cols = to_int(next_pgm_token(in), path);
    img.rows = to_int(next_pgm_token(in), path);
    const int maxval = to_int(next_pgm_token(in), path);
    if (img.cols <= 0 || img.rows <= 0 || maxval <= 0 || maxval > 65535) {
        throw FormatError(path.string() + ": bad PGM header");
    }
    const std::size_t n = static_cast<std::size_t>(img.rows) * img.cols;
    img.pixels.resize(n);
    if (magic == "P2") {
        for (auto& p : img.pixels) {
            const auto tok = next_pgm_token(in);
            if (tok.empty()) throw FormatError(path.string() + ": truncated PGM payload");
            p = static_cast<double>(to_int(tok, path)) / maxval;
        }
    } else {
        const std::size_t bpp = maxval > 255 ? 2 : 1;
        const auto off = static_cast<std::size_t>(in.tellg());
        if (text.size() < off + n * bpp) {
            throw FormatError(path.string() + ": truncated PGM payload");
        }
        const auto* b = reinterpret_cast<const unsigned char*>(text.data() + off);
        for (std::size_t k = 0; k < n; ++k) {
            const int v = bpp == 1 ? b[k] : (b[2 * k] << 8) | b[2 * k + 1];
            img.pixels[k] = static_cast<double>(v) / maxval;
        }
    }
    for (auto& p : img.pixels) {
        p = std::clamp(p, 0.0, 1.0);
    }
    return img;
}

RawImage load_csv_image(const std::string& text, const std::filesystem::path& path) {
    RawImage img;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        std::vector<double> vals;
        std::string tok;
        while (row >> tok) {
            double v = 0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || p != tok.data() + tok.size()) {
                throw FormatError(path.string() + ": bad number '" + tok + "'");
            }
            if (!(v >= 0.0 && v <= 1.0)) {
                throw FormatError(path.string() + ": CSV pixel values must lie in [0, 1]");
            }
            vals.push_back(v);
        }
        if (vals.empty()) continue;
        if (img.cols == 0) {
            img.cols = static_cast<int>(vals.size());
        } else if (static_cast<int>(vals.size()) != img.cols) {
            throw FormatError(path.string() + ": ragged CSV rows");
        }
        img.pixels.insert(img.pixels.end(), vals.begin(), vals.end());
        ++img.rows;
    }
    if (img.rows == 0) {
        throw FormatError(path.string() + ": empty CSV image");
    }
    return img;
}

}  // namespace

std::vector<double> downsample(std::span<const double> image, int rows, int cols, int out_rows, int out_cols) {
    if (out_rows < 1 || out_cols < 1) {
        throw InputError("downsample: target size must be positive");
    }
    if (rows < out_rows || cols < out_cols) {
        throw InputError("downsample: input " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " is smaller than the target " + std::to_string(out_rows) + "x" + std::to_string(out_cols));
    }
    if (image.size() != static_cast<std::size_t>(rows) * cols) {
        throw InputError("downsample: pixel count does not match the dimensions");
    }
    const auto rt = area_taps(rows, out_rows);
    const auto ct = area_taps(cols, out_cols);
    std::vector<double> out(static_cast<std::size_t>(out_rows) * out_cols);
    for (int i = 0; i < out_rows; ++i) {
        for (int j = 0; j < out_cols; ++j) {
            double acc = 0.0;
            double wsum = 0.0;
            for (const auto& r : rt[static_cast<std::size_t>(i)]) {
                for (const auto& c : ct[static_cast<std::size_t>(j)]) {
                    const double w = r.weight * c.weight;
                    acc += w * image[static_cast<std::size_t>(r.index) * cols + c.index];
                    wsum += w;
                }
            }
            out[static_cast<std::size_t>(i) * out_cols + j] = std::clamp(acc / wsum, 0.0, 1.0);
        }
    }
    return out;
}

RawImage load_image_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    RawImage img = ext == ".csv" ? load_csv_image(text, path) : load_pgm(text, path);
    img.id = path.filename().string();
    return img;
}

std::vector<RawImage> load_image_directory(const std::filesystem::path& manifest) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(read_text_file(manifest));
    } catch (const json::exception& e) {
        throw FormatError(manifest.string() + ": " + e.what());
    }
    const json& list = doc.is_array() ? doc : doc.at("images");
    const auto dir = manifest.parent_path();
    std::vector<RawImage> out;
    for (const auto& entry : list) {
        const auto rel = entry.at("path").get<std::string>();
        const auto full = dir / rel;
        if (!std::filesystem::exists(full)) {
            throw InputError("manifest entry not found: " + full.string());
        }
        RawImage img = load_image_file(full);
        img.label = entry.at("label").get<int>();
        img.id = rel;
        out.push_back(std::move(img));
    }
    return out;
}

}  // namespace qadv::datasets
