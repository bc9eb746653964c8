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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "qadv/datasets/snapshot.hpp"
#include "qadv/datasets/split.hpp"
#include "qadv/util/error.hpp"

namespace qadv {
namespace {

namespace fs = std::filesystem;
using datasets::EncodeConfig;

const fs::path kFixtures = QADV_FIXTURE_DIR;
const fs::path kMnist = fs::path(QADV_SOURCE_DIR) / "data" / "mnist";

TEST(Idx, ReadsRawAndGzipFixtures) {
    for (const char* suffix : {"", ".gz"}) {
        const auto imgs = datasets::load_idx(kFixtures / (std::string("tiny-images-idx3-ubyte") + suffix),
                                             kFixtures / (std::string("tiny-labels-idx1-ubyte") + suffix));
        ASSERT_EQ(imgs.size(), 3u);
        EXPECT_EQ(imgs[0].rows, 4);
        EXPECT_EQ(imgs[0].cols, 4);
        EXPECT_EQ(imgs[2].label, 7);
        EXPECT_EQ(imgs[2].id, "2");
        EXPECT_DOUBLE_EQ(imgs[0].pixels[5], 5 / 255.0);
        EXPECT_DOUBLE_EQ(imgs[1].pixels[0], 1.0);
    }
}

TEST(Idx, FiltersLabels) {
    const std::array keep = {0, 1};
    const auto imgs = datasets::load_idx(kFixtures / "tiny-images-idx3-ubyte", kFixtures / "tiny-labels-idx1-ubyte",
                                         keep);
    ASSERT_EQ(imgs.size(), 2u);
    EXPECT_EQ(imgs[1].id, "1");
}

TEST(Idx, RejectsBadMagicAndMissingFiles) {
    EXPECT_THROW(datasets::load_idx(kFixtures / "bad-magic-idx3-ubyte", kFixtures / "tiny-labels-idx1-ubyte"),
                 FormatError);
    EXPECT_THROW(datasets::load_idx(kFixtures / "tiny-labels-idx1-ubyte", kFixtures / "tiny-labels-idx1-ubyte"),
                 FormatError);
    EXPECT_THROW(datasets::load_idx(kFixtures / "missing", kFixtures / "tiny-labels-idx1-ubyte"), InputError);
}

TEST(Idx, BundledMnistZeroOne) {
    const std::array keep = {0, 1};
    const auto imgs = datasets::load_idx(kMnist / "mnist01-images-idx3-ubyte.gz",
                                         kMnist / "mnist01-labels-idx1-ubyte.gz", keep);
    EXPECT_EQ(imgs.size(), 2128u);
    std::size_t zeros = 0;
    for (const auto& im : imgs) zeros += im.label == 0;
    EXPECT_GT(zeros, 0u);
    EXPECT_LT(zeros, imgs.size());
    EXPECT_EQ(imgs[0].rows, 28);
}

// Needs the full MNIST training files; set QADV_MNIST_DIR to a directory
// holding train-images-idx3-ubyte(.gz) and train-labels-idx1-ubyte(.gz).
TEST(Idx, FullMnistTrainZeroOneCount) {
    const char* dir = std::getenv("QADV_MNIST_DIR");
    if (!dir) GTEST_SKIP() << "QADV_MNIST_DIR not set";
    fs::path images = fs::path(dir) / "train-images-idx3-ubyte";
    fs::path labels = fs::path(dir) / "train-labels-idx1-ubyte";
    if (!fs::exists(images)) images += ".gz";
    if (!fs::exists(labels)) labels += ".gz";
    const std::array keep = {0, 1};
    EXPECT_EQ(datasets::load_idx(images, labels, keep).size(), 12665u);
}

TEST(Downsample, IntegerFactorIsBlockMean) {
    std::vector<double> img(32 * 32);
    for (int r = 0; r < 32; ++r)
        for (int c = 0; c < 32; ++c) img[r * 32 + c] = (r < 16 ? 0.2 : 0.6) + (c < 16 ? 0.0 : 0.1);
    const auto out = datasets::downsample(img, 32, 32, 2, 2);
    EXPECT_NEAR(out[0], 0.2, 1e-14);
    EXPECT_NEAR(out[1], 0.3, 1e-14);
    EXPECT_NEAR(out[2], 0.6, 1e-14);
    EXPECT_NEAR(out[3], 0.7, 1e-14);
}

// 28 -> 16: output pixel (0, 0) covers rows and columns [0, 1.75), so input
// row/col 1 carries weight 0.75.
TEST(Downsample, FractionalCornerPixel) {
    std::vector<double> img(28 * 28, 0.0);
    img[0] = 0.4;
    img[1] = 0.8;
    img[28] = 1.0;
    img[29] = 0.2;
    const double want = (0.4 + 0.75 * 0.8 + 0.75 * 1.0 + 0.5625 * 0.2) / (1.75 * 1.75);
    const auto out = datasets::downsample(img, 28, 28);
    ASSERT_EQ(out.size(), 256u);
    EXPECT_NEAR(out[0], want, 1e-15);
}

TEST(Downsample, PreservesMeanAndRejectsUpsampling) {
    Rng rng(2);
    std::vector<double> img(28 * 28);
    for (auto& p : img) p = rng.uniform();
    const auto out = datasets::downsample(img, 28, 28);
    const double m_in = std::accumulate(img.begin(), img.end(), 0.0) / img.size();
    const double m_out = std::accumulate(out.begin(), out.end(), 0.0) / out.size();
    EXPECT_NEAR(m_in, m_out, 1e-12);
    EXPECT_THROW(datasets::downsample(img, 28, 28, 30, 30), InputError);
}

TEST(Encode, L2Examples) {
    std::vector<double> e1(256, 0.0);
    e1[0] = 1.0;
    const auto a = datasets::encode(e1);
    ASSERT_EQ(a.size(), 260u);
    EXPECT_DOUBLE_EQ(a[0], 2.0);
    EXPECT_EQ(a[259], 0.0);
    const std::vector<double> ones(256, 1.0);
    for (int i = 0; i < 256; ++i) EXPECT_DOUBLE_EQ(datasets::encode(ones)[i], 0.125);
}

TEST(Encode, L2IsScaleInvariant) {
    Rng rng(3);
    std::vector<double> x(256), y(256);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = 3.7 * (x[i] = rng.uniform());
    const auto a = datasets::encode(x), b = datasets::encode(y);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-15);
}

TEST(Encode, RangeAndErrors) {
    EncodeConfig c;
    c.normalization = datasets::Normalization::RANGE;
    c.pad_to = 3;
    const std::array x = {0.0, 1.0};
    const auto a = datasets::encode(x, c);
    EXPECT_DOUBLE_EQ(a[1], M_PI / 2);
    EXPECT_EQ(a[2], 0.0);
    EXPECT_THROW(datasets::encode(std::vector<double>(2, 0.0), EncodeConfig{}), InputError);
    c.pad_to = 1;
    EXPECT_THROW(datasets::encode(x, c), InputError);
}

TEST(Encode, VjpMatchesFiniteDifferences) {
    Rng rng(4);
    std::vector<double> x(10), w(12);
    for (auto& v : x) v = rng.uniform(0.1, 1.0);
    for (auto& v : w) v = rng.uniform(-1.0, 1.0);
    for (auto norm : {datasets::Normalization::L2, datasets::Normalization::RANGE}) {
        EncodeConfig c;
        c.normalization = norm;
        c.pad_to = 12;
        const auto g = datasets::encode_vjp(x, w, c);
        const auto fd = testing::central_difference(
            [&](std::span<const double> p) {
                const auto e = datasets::encode(p, c);
                return std::inner_product(e.begin(), e.end(), w.begin(), 0.0);
            },
            x, 1e-6);
        for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(g[i], fd[i], 1e-8);
    }
}

TEST(ImageFiles, PgmCsvAndManifest) {
    const auto pgm = datasets::load_image_file(kFixtures / "glyph.pgm");
    EXPECT_EQ(pgm.rows, 2);
    EXPECT_EQ(pgm.cols, 3);
    EXPECT_DOUBLE_EQ(pgm.pixels[3], 0.75);
    const auto csv = datasets::load_image_file(kFixtures / "glyph.csv");
    EXPECT_EQ(csv.rows, 2);
    EXPECT_DOUBLE_EQ(csv.pixels[4], 0.75);
    const auto all = datasets::load_image_directory(kFixtures / "manifest.json");
    ASSERT_EQ(all.size(), 2u);
    EXPECT_EQ(all[0].label, 1);
    EXPECT_EQ(all[1].id, "glyph.csv");
}

std::vector<datasets::Sample> labelled(int zeros, int ones) {
    std::vector<datasets::Sample> out;
    for (int i = 0; i < zeros + ones; ++i) {
        datasets::Sample s;
        s.x = {0.1 * (i + 1)};
        s.x_encoded = {2.0};
        s.label = i < zeros ? 0 : 1;
        s.id = std::to_string(i);
        out.push_back(s);
    }
    return out;
}

TEST(Split, BalancedDisjointAndSeeded) {
    const auto items = labelled(60, 40);
    const auto s = datasets::make_split(items, 50, 30, 7);
    ASSERT_EQ(s.train.size(), 50u);
    ASSERT_EQ(s.test.size(), 30u);
    auto count = [](const std::vector<datasets::Sample>& v) {
        return std::count_if(v.begin(), v.end(), [](const auto& x) { return x.label == 0; });
    };
    EXPECT_EQ(count(s.train), 25);
    EXPECT_EQ(count(s.test), 15);
    std::set<std::string> ids;
    for (const auto& x : s.train) ids.insert(x.id);
    for (const auto& x : s.test) EXPECT_FALSE(ids.count(x.id));
    const auto again = datasets::make_split(items, 50, 30, 7);
    for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(again.train[i].id, s.train[i].id);
    EXPECT_THROW(datasets::make_split(items, 90, 20, 7), InputError);
}

TEST(Split, FillsFromLargerClassWhenShort) {
    const auto items = labelled(5, 30);
    const auto s = datasets::make_split(items, 20, 4, 1);
    EXPECT_EQ(s.train.size(), 20u);
    EXPECT_EQ(s.test.size(), 4u);
}

TEST(Samples, MapsLabelsAndDownsamples) {
    const auto imgs = datasets::load_idx(kFixtures / "tiny-images-idx3-ubyte", kFixtures / "tiny-labels-idx1-ubyte");
    const std::array map = {1, 0};
    EncodeConfig c;
    c.pad_to = 5;
    EXPECT_THROW(datasets::make_samples(imgs, map, c, 2), InputError);  // label 7 is unmapped
    const std::span first_two(imgs.data(), 2);
    const auto s = datasets::make_samples(first_two, map, c, 2);
    EXPECT_EQ(s[0].label, 1);
    EXPECT_EQ(s[1].label, 0);
    EXPECT_EQ(s[0].x.size(), 4u);
    EXPECT_EQ(s[0].x_encoded.size(), 5u);
    EXPECT_EQ(datasets::to_example(s[1]).x, s[1].x_encoded);
}

TEST(Snapshot, RoundTripIsBitwise) {
    datasets::DatasetSplit split;
    split.train = labelled(2, 1);
    split.test = labelled(1, 1);
    split.train[0].x = {1.0 / 3.0, 1e-310};
    split.encoding.scale = 0.1 + 0.2;
    const auto path = fs::temp_directory_path() / "qadv_split_test.json";
    datasets::save_split(split, path);
    const auto back = datasets::load_split(path);
    fs::remove(path);
    ASSERT_EQ(back.train.size(), 3u);
    EXPECT_EQ(back.train[0].x, split.train[0].x);
    EXPECT_EQ(back.test[1].id, "1");
    EXPECT_EQ(back.encoding.scale, split.encoding.scale);
    EXPECT_THROW(datasets::split_from_json(R"({"format": "qadv.dataset", "version": 0})"), FormatError);
}

}  // namespace
}  // namespace qadv
