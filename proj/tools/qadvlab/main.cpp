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

// qadvlab: configuration-driven experiment runner.
//
//   qadvlab <command> --config <path> [--seed N] [--threads N] [--out DIR]
//
// Exit status 2 for invalid configurations or arguments, 1 for failures
// while running.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "qadv/runner/config.hpp"
#include "qadv/runner/pipelines.hpp"

namespace {

namespace fs = std::filesystem;
using qadv::runner::ConfigError;

constexpr int kExitRuntime = 1;
constexpr int kExitInvalid = 2;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> out;
};

qadv::runner::ExperimentConfig resolve(const std::string& command, const Flags& flags) {
    std::ifstream in(flags.config);
    if (!in) {
        throw ConfigError("cannot open config '" + flags.config + "'");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config '" + flags.config + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    if (doc.contains("command") && doc["command"] != command) {
        throw ConfigError("config is for '" + doc["command"].dump() + "', not '" + command + "'");
    }
    doc["command"] = command;
    if (flags.seed) doc["seed"] = *flags.seed;
    if (flags.threads) doc["threads"] = *flags.threads;
    if (flags.out) doc["out"] = fs::absolute(*flags.out).string();
    return qadv::runner::parse_config(doc, fs::absolute(flags.config).parent_path());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qadvlab: adversarial quantum learning experiments"};
    app.require_subcommand(1);
    Flags flags;
    const char* commands[][2] = {
        {"train", "train a classifier"},
        {"attack", "generate adversarial examples against a trained run"},
        {"advtrain", "retrain on legitimate plus adversarial data"},
        {"gen-qdata", "generate Aubry-André quantum data"},
        {"xeb", "cross-entropy benchmarking"},
        {"eval", "evaluate a checkpoint on a dataset"},
        {"benchmark-encodings", "compare interleaved and encoding-first circuits"},
        {"figures", "emit figure data from a completed run"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "experiment config (JSON)")->required();
        sub->add_option("--seed", flags.seed, "top-level seed");
        sub->add_option("--threads", flags.threads, "worker threads (does not change results)");
        sub->add_option("--out", flags.out, "output directory");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    qadv::runner::ExperimentConfig config;
    try {
        config = resolve(command, flags);
        qadv::runner::validate(config);
    } catch (const std::exception& e) {
        std::cerr << "qadvlab: invalid configuration: " << e.what() << "\n";
        return kExitInvalid;
    }
    try {
        const auto result = qadv::runner::run(config);
        std::cout << result.summary.dump(2) << "\n";
        std::cerr << "qadvlab: wrote " << result.out.string() << "\n";
    } catch (const ConfigError& e) {
        std::cerr << "qadvlab: invalid configuration: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "qadvlab: " << command << " failed: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
