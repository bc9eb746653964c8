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
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "qadv/runner/config.hpp"
#include "qadv/runner/pipelines.hpp"
#include "qadv/util/csv.hpp"

namespace qadv {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kMnist = fs::path(QADV_SOURCE_DIR) / "data" / "mnist";

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qadv_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const json& doc) const {
        const auto p = dir_ / name;
        std::ofstream(p) << doc.dump(2);
        return p;
    }

    // Runs the CLI and returns its exit status; output goes to log.txt.
    int qadvlab(const std::string& args) const {
        const std::string cmd = std::string(QADVLAB_BIN) + " " + args + " >" + (dir_ / "log.txt").string() + " 2>&1";
        const int st = std::system(cmd.c_str());
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    }

    static json tiny_train() {
        return {{"schema_version", 1},
                {"command", "train"},
                {"seed", 3},
                {"dataset",
                 {{"kind", "mnist_idx"},
                  {"images", (kMnist / "mnist01-images-idx3-ubyte.gz").string()},
                  {"labels", (kMnist / "mnist01-labels-idx1-ubyte.gz").string()},
                  {"n_train", 8},
                  {"n_test", 4}}},
                {"train", {{"epochs", 1}, {"batch_size", 2}, {"eval_batch", 0}}}};
    }

    fs::path dir_;
};

TEST_F(Cli, HelpAndArgumentErrors) {
    EXPECT_EQ(qadvlab("--help"), 0);
    EXPECT_EQ(qadvlab(""), 2);
    EXPECT_EQ(qadvlab("train"), 2);
    EXPECT_EQ(qadvlab("frobnicate --config x.json"), 2);
    EXPECT_EQ(qadvlab("train --config " + (dir_ / "missing.json").string()), 2);
}

TEST_F(Cli, InvalidConfigsExitTwo) {
    auto doc = tiny_train();
    doc["trian"] = json::object();
    EXPECT_EQ(qadvlab("train --config " + write("typo.json", doc).string()), 2);
    doc = tiny_train();
    doc.erase("schema_version");
    EXPECT_EQ(qadvlab("train --config " + write("noschema.json", doc).string()), 2);
    doc = tiny_train();
    EXPECT_EQ(qadvlab("attack --config " + write("mismatch.json", doc).string()), 2);
    doc["train"]["learning_rate"] = -1;
    EXPECT_EQ(qadvlab("train --config " + write("lr.json", doc).string()), 2);
    std::ofstream(dir_ / "broken.json") << "{";
    EXPECT_EQ(qadvlab("train --config " + (dir_ / "broken.json").string()), 2);
}

TEST_F(Cli, TrainEvalAttackPipeline) {
    const auto cfg = write("train.json", tiny_train());
    const auto run1 = dir_ / "run1", run2 = dir_ / "run2";
    ASSERT_EQ(qadvlab("train --config " + cfg.string() + " --threads 1 --out " + run1.string()), 0)
        << read_text_file(dir_ / "log.txt");
    ASSERT_EQ(qadvlab("train --config " + cfg.string() + " --threads 2 --out " + run2.string()), 0);
    for (const char* f : {"metrics.csv", "checkpoint.json", "dataset.json"}) {
        EXPECT_EQ(read_text_file(run1 / f), read_text_file(run2 / f)) << f;
    }
    const auto train_summary = json::parse(read_text_file(run1 / "summary.json"));

    const auto eval_cfg =
        write("eval.json", {{"schema_version", 1}, {"command", "eval"}, {"seed", 1}, {"from_run", run1.string()}});
    ASSERT_EQ(qadvlab("eval --config " + eval_cfg.string() + " --out " + (dir_ / "eval").string()), 0);
    const auto eval = json::parse(read_text_file(dir_ / "eval" / "summary.json"));
    EXPECT_EQ(eval["splits"]["test"], train_summary["final"]["test"]);
    EXPECT_EQ(eval["splits"]["train"], train_summary["final"]["train"]);

    const auto attack_cfg = write("attack.json", {{"schema_version", 1},
                                                  {"command", "attack"},
                                                  {"seed", 2},
                                                  {"from_run", run1.string()},
                                                  {"attack", {{"kind", "TYPE1"}, {"iterations", 2}, {"test", 2}}}});
    const auto adv = dir_ / "attack";
    ASSERT_EQ(qadvlab("attack --config " + attack_cfg.string() + " --out " + adv.string()), 0)
        << read_text_file(dir_ / "log.txt");
    EXPECT_TRUE(fs::exists(adv / "adversarial.json"));
    EXPECT_TRUE(fs::exists(adv / "provenance.json"));
    const auto attack_summary = json::parse(read_text_file(adv / "summary.json"));
    EXPECT_EQ(attack_summary["test"]["count"], 2);

    auto eval_adv = json::parse(read_text_file(eval_cfg));
    eval_adv["adversarial_run"] = adv.string();
    ASSERT_EQ(qadvlab("eval --config " + write("eval_adv.json", eval_adv).string() + " --out " +
                      (dir_ / "eval_adv").string()),
              0)
        << read_text_file(dir_ / "log.txt");
    const auto ea = json::parse(read_text_file(dir_ / "eval_adv" / "summary.json"));
    EXPECT_TRUE(ea["splits"].contains("adv_test")) << ea.dump();
}

TEST_F(Cli, SeedFlagOverridesConfig) {
    const auto cfg = write("train.json", tiny_train());
    ASSERT_EQ(qadvlab("train --config " + cfg.string() + " --seed 9 --out " + (dir_ / "r").string()), 0);
    EXPECT_EQ(json::parse(read_text_file(dir_ / "r" / "summary.json"))["seed"], 9);
    EXPECT_EQ(json::parse(read_text_file(dir_ / "r" / "config.json"))["seed"], 9);
}

TEST(Config, ResolvedDocumentRoundTrips) {
    json doc = {{"schema_version", 1},
                {"command", "xeb"},
                {"seed", 5},
                {"threads", 2},
                {"xeb", {{"n_qubits", 2}, {"cycles", {1, 2, 4}}, {"circuits", 3}, {"pauli_prob", 0.01}}}};
    const auto a = runner::parse_config(doc, fs::temp_directory_path());
    const auto j = runner::config_to_json(a);
    const auto b = runner::parse_config(j, fs::temp_directory_path());
    EXPECT_EQ(runner::config_to_json(b), j);
    EXPECT_EQ(b.xeb.cycles, (std::vector<int>{1, 2, 4}));
    EXPECT_EQ(b.xeb.noise.per_qubit_pauli_prob, 0.01);
    EXPECT_EQ(b.threads, 2);
}

TEST(Config, RejectsUnknownKeysAndVersions) {
    json doc = {{"schema_version", 1}, {"command", "xeb"}, {"seed", 5}, {"xeb", {{"qubits", 2}}}};
    EXPECT_THROW(runner::parse_config(doc, "."), runner::ConfigError);
    doc = {{"schema_version", 2}, {"command", "xeb"}, {"seed", 5}};
    EXPECT_THROW(runner::parse_config(doc, "."), runner::ConfigError);
    doc = {{"schema_version", 1}, {"command", "xeb"}};
    EXPECT_THROW(runner::parse_config(doc, "."), runner::ConfigError);
}

TEST(Config, ValidateChecksCommandInputs) {
    json doc = {{"schema_version", 1}, {"command", "advtrain"}, {"seed", 5}};
    EXPECT_THROW(runner::validate(runner::parse_config(doc, ".")), runner::ConfigError);
    doc = {{"schema_version", 1},
           {"command", "train"},
           {"seed", 5},
           {"dataset", {{"kind", "mnist_idx"}, {"images", "/nonexistent"}, {"labels", "/nonexistent"}}}};
    EXPECT_THROW(runner::validate(runner::parse_config(doc, ".")), runner::ConfigError);
    doc = {{"schema_version", 1},
           {"command", "train"},
           {"seed", 5},
           {"architecture", {{"preset", "AMPLITUDE_QUANTUM_10Q"}}},
           {"dataset",
            {{"kind", "mnist_idx"},
             {"images", (kMnist / "mnist01-images-idx3-ubyte.gz").string()},
             {"labels", (kMnist / "mnist01-labels-idx1-ubyte.gz").string()}}}};
    EXPECT_THROW(runner::validate(runner::parse_config(doc, ".")), runner::ConfigError);
}

TEST(Config, OutputDirectoryDefaults) {
    json doc = {{"schema_version", 1}, {"command", "gen-qdata"}, {"seed", 1}};
    ::unsetenv("QADV_OUT");
    auto c = runner::parse_config(doc, ".");
    EXPECT_EQ(runner::resolve_out(c), fs::path("runs") / "gen-qdata");
    ::setenv("QADV_OUT", "/tmp/qadv_out_root", 1);
    EXPECT_EQ(runner::resolve_out(c), fs::path("/tmp/qadv_out_root") / "gen-qdata");
    doc["out"] = "mine";
    c = runner::parse_config(doc, ".");
    EXPECT_EQ(runner::resolve_out(c), fs::path("/tmp/qadv_out_root") / "mine");
    ::unsetenv("QADV_OUT");
}

}  // namespace
}  // namespace qadv
