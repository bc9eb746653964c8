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

#include "qadv/runner/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qadv/adversarial/adversarial_training.hpp"
#include "qadv/datasets/snapshot.hpp"
#include "qadv/optim/checkpoint.hpp"
#include "qadv/quantum_data/serialize.hpp"
#include "qadv/util/csv.hpp"
#include "qadv/util/parallel.hpp"
#include "qadv/util/rng.hpp"

namespace qadv::runner {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kClassicalData = "dataset.json";
constexpr const char* kQuantumData = "qdata.json";

void write_json(const fs::path& path, const json& doc) { write_text_file(path, doc.dump(2) + "\n"); }

json eval_json(const optim::Evaluation& e, std::size_t count) {
    return {{"loss", e.loss}, {"accuracy", e.accuracy}, {"count", count}};
}

optim::TrainConfig train_config(const ExperimentConfig& c, std::string_view stream) {
    optim::TrainConfig t = c.train;
    t.seed = derive_seed(c.seed, stream);
    t.threads = c.threads;
    return t;
}

adversarial::AttackConfig attack_config(const ExperimentConfig& c) {
    adversarial::AttackConfig a = c.attack;
    a.seed = derive_seed(c.seed, "runner.attack");
    a.threads = c.threads;
    return a;
}

template <typename T>
std::span<const T> scoped(const std::vector<T>& items, long long n) {
    const std::size_t k = n < 0 ? items.size() : std::min(items.size(), static_cast<std::size_t>(n));
    return {items.data(), k};
}

void write_model(const fs::path& out, const ArchitectureConfig& arch, const char* data) {
    write_json(out / "model.json",
               {{"architecture", architecture_to_json(arch)}, {"data", data}, {"checkpoint", "checkpoint.json"}});
}

json final_evaluations(const grad::Classifier& model, std::span<const double> theta,
                       std::span<const optim::EvalSet> sets, int threads) {
    json out = json::object();
    for (const auto& s : sets) {
        out[s.split] = eval_json(optim::evaluate(model, theta, s.items, threads), s.items.size());
    }
    return out;
}

// Correct-before / wrong-after over the attacked samples.
struct FlipCount {
    std::size_t attacked = 0;
    std::size_t correct_before = 0;
    std::size_t flipped = 0;
    std::size_t wrong_after = 0;

    void add(int label, double z_before, double z_after) {
        ++attacked;
        const bool before = grad::predict(z_before) == label;
        const bool after = grad::predict(z_after) == label;
        correct_before += before;
        flipped += before && !after;
        wrong_after += !after;
    }

    json to_json() const {
        return {{"count", attacked},
                {"correct_before", correct_before},
                {"flipped", flipped},
                {"flip_rate", correct_before ? static_cast<double>(flipped) / static_cast<double>(correct_before) : 0.0},
                {"accuracy_before", attacked ? static_cast<double>(correct_before) / static_cast<double>(attacked) : 0.0},
                {"accuracy_after",
                 attacked ? 1.0 - static_cast<double>(wrong_after) / static_cast<double>(attacked) : 0.0}};
    }
};

struct ClassicalAttack {
    std::vector<adversarial::AttackResult> train;
    std::vector<adversarial::AttackResult> test;
    datasets::DatasetSplit adversarial;
    json summary;
};

json classical_split_summary(std::span<const adversarial::AttackResult> results,
                             std::span<const datasets::Sample> sources, const adversarial::AttackConfig& cfg) {
    FlipCount flips;
    json rejected = json::array();
    double max_change = 0.0;
    std::size_t off_mask = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        const auto& x = sources[i].x;
        flips.add(r.label, r.initial_z, r.final_z);
        if (!r.adversarial()) rejected.push_back(r.id);
        const auto mask = adversarial::object_mask(x, cfg.mask_threshold);
        for (std::size_t k = 0; k < x.size(); ++k) {
            max_change = std::max(max_change, std::abs(r.x_adv[k] - x[k]));
            if (cfg.kind == adversarial::AttackKind::TYPE2 && !mask[k] && r.x_adv[k] != x[k]) ++off_mask;
        }
    }
    json j = flips.to_json();
    j["non_adversarial_ids"] = rejected;
    j["max_abs_change"] = max_change;
    if (cfg.kind == adversarial::AttackKind::TYPE2) j["off_mask_changes"] = off_mask;
    return j;
}

ClassicalAttack attack_classical_data(const ExperimentConfig& c, const RunInputs& in, const fs::path& out) {
    const auto cfg = attack_config(c);
    const auto& split = *in.classical;
    const auto train_src = scoped(split.train, c.attack_scope.train);
    const auto test_src = scoped(split.test, c.attack_scope.test);
    ClassicalAttack a;
    a.train = adversarial::attack_classical_set(in.model, in.theta, train_src, split.encoding, cfg);
    a.test = adversarial::attack_classical_set(in.model, in.theta, test_src, split.encoding, cfg);

    // Samples whose loss did not increase are reported and left out.
    auto kept = [](const std::vector<adversarial::AttackResult>& rs) {
        std::vector<adversarial::AttackResult> k;
        std::copy_if(rs.begin(), rs.end(), std::back_inserter(k), [](const auto& r) { return r.adversarial(); });
        return adversarial::adversarial_samples(k);
    };
    a.adversarial.encoding = split.encoding;
    a.adversarial.train = kept(a.train);
    a.adversarial.test = kept(a.test);
    datasets::save_split(a.adversarial, out / "adversarial.json");
    write_text_file(out / "provenance.json", adversarial::provenance_json(cfg, a.train, a.test));

    CsvWriter csv({"split", "id", "label", "initial_loss", "final_loss", "initial_z", "final_z", "flipped",
                   "adversarial"});
    for (const auto* rs : {&a.train, &a.test}) {
        const std::string name = rs == &a.train ? "train" : "test";
        for (const auto& r : *rs) {
            csv.add_row({name, r.id, std::to_string(r.label), format_double(r.initial_loss), format_double(r.final_loss),
                         format_double(r.initial_z), format_double(r.final_z), r.flipped() ? "1" : "0",
                         r.adversarial() ? "1" : "0"});
        }
    }
    csv.save(out / "attack_results.csv");

    a.summary = {{"kind", adversarial::attack_name(cfg.kind)}, {"iterations", cfg.iterations}};
    if (!a.train.empty()) a.summary["train"] = classical_split_summary(a.train, train_src, cfg);
    if (!a.test.empty()) a.summary["test"] = classical_split_summary(a.test, test_src, cfg);
    return a;
}

struct QuantumAttack {
    qdata::QuantumDataset adversarial;
    json summary;
};

json quantum_split_summary(std::span<const adversarial::QuantumAttackResult> results) {
    json out = json::object();
    for (const auto phase : {qdata::Phase::THERMAL, qdata::Phase::LOCALIZED}) {
        FlipCount flips;
        double abs_change = 0.0, change = 0.0, fidelity = 0.0, max_delta = 0.0;
        json rejected = json::array();
        for (const auto& r : results) {
            if (r.label != static_cast<int>(phase)) continue;
            flips.add(r.label, r.initial_z, r.final_z);
            abs_change += std::abs(r.imbalance_after - r.imbalance_before);
            change += r.imbalance_after - r.imbalance_before;
            fidelity += r.fidelity_to_legit;
            max_delta = std::max(max_delta, r.max_abs_delta());
            if (!r.adversarial()) rejected.push_back(r.id);
        }
        json j = flips.to_json();
        const double n = std::max<double>(1.0, static_cast<double>(flips.attacked));
        j["mean_abs_imbalance_change"] = abs_change / n;
        j["mean_imbalance_change"] = change / n;
        j["mean_fidelity_to_legit"] = fidelity / n;
        j["max_abs_delta"] = max_delta;
        j["non_adversarial_ids"] = rejected;
        out[std::string(qdata::phase_name(phase))] = j;
    }
    return out;
}

QuantumAttack attack_quantum_data(const ExperimentConfig& c, const RunInputs& in, const fs::path& out) {
    const auto cfg = attack_config(c);
    const auto& ds = *in.quantum;
    const auto train_src = scoped(ds.train, c.attack_scope.train);
    const auto test_src = scoped(ds.test, c.attack_scope.test);
    const auto train = adversarial::attack_quantum_set(in.model, in.theta, train_src, ds.config.chain, cfg);
    const auto test = adversarial::attack_quantum_set(in.model, in.theta, test_src, ds.config.chain, cfg);

    QuantumAttack a;
    a.adversarial.config = ds.config;
    auto kept = [](const std::vector<adversarial::QuantumAttackResult>& rs, std::span<const qdata::QuantumSample> src) {
        std::vector<adversarial::QuantumAttackResult> k;
        std::vector<qdata::QuantumSample> s;
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (rs[i].adversarial()) {
                k.push_back(rs[i]);
                s.push_back(src[i]);
            }
        }
        return adversarial::adversarial_quantum_samples(k, s);
    };
    a.adversarial.train = kept(train, train_src);
    a.adversarial.test = kept(test, test_src);
    qdata::save_quantum_dataset(a.adversarial, out / "adversarial_qdata.json");

    std::vector<adversarial::QuantumAttackResult> all = train;
    all.insert(all.end(), test.begin(), test.end());
    write_text_file(out / "provenance.json", adversarial::quantum_provenance_json(cfg, all));

    CsvWriter csv({"split", "id", "label", "initial_loss", "final_loss", "initial_z", "final_z", "flipped",
                   "adversarial", "imbalance_before", "imbalance_after", "max_abs_delta", "fidelity_to_legit"});
    for (const auto* rs : {&train, &test}) {
        const std::string name = rs == &train ? "train" : "test";
        for (const auto& r : *rs) {
            csv.add_row({name, r.id, std::to_string(r.label), format_double(r.initial_loss), format_double(r.final_loss),
                         format_double(r.initial_z), format_double(r.final_z), r.flipped() ? "1" : "0",
                         r.adversarial() ? "1" : "0", format_double(r.imbalance_before),
                         format_double(r.imbalance_after), format_double(r.max_abs_delta()),
                         format_double(r.fidelity_to_legit)});
        }
    }
    csv.save(out / "attack_results.csv");

    a.summary = {{"kind", adversarial::attack_name(cfg.kind)}, {"iterations", cfg.iterations}, {"kappa", cfg.kappa}};
    if (!train.empty()) a.summary["train"] = quantum_split_summary(train);
    if (!test.empty()) a.summary["test"] = quantum_split_summary(test);
    return a;
}

std::vector<grad::Example> examples(const RunInputs& in, bool train) {
    if (in.quantum) return qdata::to_examples(train ? in.quantum->train : in.quantum->test);
    return datasets::to_examples(train ? in.classical->train : in.classical->test);
}

json run_train(const ExperimentConfig& c, const fs::path& out) {
    const auto model = make_model(c.architecture);
    std::vector<grad::Example> train, test;
    if (c.dataset.quantum()) {
        const auto ds = load_quantum(c.dataset, derive_seed(c.seed, "runner.qdata"), c.threads);
        qdata::save_quantum_dataset(ds, out / kQuantumData);
        train = qdata::to_examples(ds.train);
        test = qdata::to_examples(ds.test);
        write_model(out, c.architecture, kQuantumData);
    } else {
        const auto split = load_classical(c.dataset, derive_seed(c.seed, "runner.dataset"),
                                          model.circuit->data_slot_count());
        datasets::save_split(split, out / kClassicalData);
        train = datasets::to_examples(split.train);
        test = datasets::to_examples(split.test);
        write_model(out, c.architecture, kClassicalData);
    }
    const auto ckpt = out / "checkpoint.json";
    const auto result = optim::train(model, train, test, train_config(c, "runner.train"), std::nullopt,
                                     [&](const optim::TrainState& s, auto) { optim::save_checkpoint(s, ckpt); });
    write_text_file(out / "metrics.csv", optim::metrics_csv(result.history));
    optim::save_checkpoint(result.state, ckpt);
    const std::vector<optim::EvalSet> sets = {{"train", train}, {"test", test}};
    return {{"preset", circuits::preset_name(c.architecture.preset)},
            {"epochs", result.state.epoch},
            {"final", final_evaluations(model, result.state.theta, sets, c.threads)}};
}

json run_attack(const ExperimentConfig& c, const fs::path& out) {
    const auto in = load_inputs(c);
    if (in.quantum) {
        if (c.attack.kind != adversarial::AttackKind::QUANTUM) {
            throw ConfigError("attack.kind must be QUANTUM for quantum data");
        }
        return attack_quantum_data(c, in, out).summary;
    }
    if (c.attack.kind == adversarial::AttackKind::QUANTUM) {
        throw ConfigError("attack.kind QUANTUM requires quantum data");
    }
    return attack_classical_data(c, in, out).summary;
}

json run_advtrain(const ExperimentConfig& c, const fs::path& out) {
    const auto in = load_inputs(c);
    std::vector<grad::Example> adv_train, adv_test;
    json attack_summary;
    if (in.quantum) {
        qdata::QuantumDataset adv;
        if (!c.adversarial_run.empty()) {
            adv = qdata::load_quantum_dataset(c.adversarial_run / "adversarial_qdata.json");
        } else {
            if (c.attack.kind != adversarial::AttackKind::QUANTUM) {
                throw ConfigError("attack.kind must be QUANTUM for quantum data");
            }
            auto a = attack_quantum_data(c, in, out);
            adv = std::move(a.adversarial);
            attack_summary = a.summary;
        }
        adv_train = qdata::to_examples(adv.train);
        adv_test = qdata::to_examples(adv.test);
        qdata::save_quantum_dataset(*in.quantum, out / kQuantumData);
        write_model(out, in.architecture, kQuantumData);
    } else {
        datasets::DatasetSplit adv;
        if (!c.adversarial_run.empty()) {
            adv = datasets::load_split(c.adversarial_run / "adversarial.json");
        } else {
            if (c.attack.kind == adversarial::AttackKind::QUANTUM) {
                throw ConfigError("attack.kind QUANTUM requires quantum data");
            }
            auto a = attack_classical_data(c, in, out);
            adv = std::move(a.adversarial);
            attack_summary = a.summary;
        }
        adv_train = datasets::to_examples(adv.train);
        adv_test = datasets::to_examples(adv.test);
        datasets::save_split(*in.classical, out / kClassicalData);
        write_model(out, in.architecture, kClassicalData);
    }
    const auto legit_train = examples(in, true);
    const auto legit_test = examples(in, false);
    adversarial::AdvTrainConfig ac;
    ac.train = train_config(c, "runner.advtrain");
    ac.legit_per_batch = c.legit_per_batch;
    ac.adv_per_batch = c.adv_per_batch;
    const auto ckpt = out / "checkpoint.json";
    const auto result =
        adversarial::adversarial_train(in.model, legit_train, adv_train, legit_test, adv_test, ac,
                                       [&](const optim::TrainState& s, auto) { optim::save_checkpoint(s, ckpt); });
    write_text_file(out / "metrics.csv", optim::metrics_csv(result.history));
    optim::save_checkpoint(result.state, ckpt);
    std::vector<optim::EvalSet> sets = {{"legit_train", legit_train}, {"legit_test", legit_test}};
    if (!adv_train.empty()) sets.push_back({"adv_train", adv_train});
    if (!adv_test.empty()) sets.push_back({"adv_test", adv_test});
    json j = {{"epochs", result.state.epoch}, {"final", final_evaluations(in.model, result.state.theta, sets, c.threads)}};
    if (!attack_summary.is_null()) j["attack"] = attack_summary;
    return j;
}

json run_gen_qdata(const ExperimentConfig& c, const fs::path& out) {
    const auto ds = load_quantum(c.dataset, derive_seed(c.seed, "runner.qdata"), c.threads);
    qdata::save_quantum_dataset(ds, out / kQuantumData);
    CsvWriter csv({"split", "id", "label", "v_over_g", "phi", "imbalance"});
    json summary = json::object();
    for (const auto* part : {&ds.train, &ds.test}) {
        const std::string name = part == &ds.train ? "train" : "test";
        double sum[2] = {0.0, 0.0};
        std::size_t count[2] = {0, 0};
        for (const auto& s : *part) {
            const double imb = qdata::staggered_imbalance(*s.state);
            csv.add_row({name, s.id, std::to_string(s.label), format_double(s.v_over_g), format_double(s.phi),
                         format_double(imb)});
            sum[s.label] += imb;
            ++count[s.label];
        }
        json j = json::object();
        for (int l = 0; l < 2; ++l) {
            j[std::string(qdata::phase_name(static_cast<qdata::Phase>(l)))] = {
                {"count", count[l]}, {"mean_imbalance", count[l] ? sum[l] / static_cast<double>(count[l]) : 0.0}};
        }
        summary[name] = j;
    }
    csv.save(out / "imbalance.csv");
    return summary;
}

json run_xeb(const ExperimentConfig& c, const fs::path& out) {
    auto cfg = c.xeb;
    cfg.seed = derive_seed(c.seed, "runner.xeb");
    cfg.threads = c.threads;
    const auto result = xeb::run_xeb(cfg);
    write_text_file(out / "results.csv", xeb::results_csv(result));
    json j = json::parse(xeb::summary_json(cfg, result));
    j["analytic_e_c"] = xeb::analytic_pauli_error(cfg.noise.per_qubit_pauli_prob, cfg.n_qubits);
    return j;
}

json run_eval(const ExperimentConfig& c, const fs::path&) {
    const auto in = load_inputs(c);
    const auto train = examples(in, true);
    const auto test = examples(in, false);
    std::vector<optim::EvalSet> sets = {{"train", train}, {"test", test}};
    std::vector<grad::Example> adv_train, adv_test;
    if (!c.adversarial_run.empty()) {
        if (in.quantum) {
            const auto adv = qdata::load_quantum_dataset(c.adversarial_run / "adversarial_qdata.json");
            adv_train = qdata::to_examples(adv.train);
            adv_test = qdata::to_examples(adv.test);
        } else {
            const auto adv = datasets::load_split(c.adversarial_run / "adversarial.json");
            adv_train = datasets::to_examples(adv.train);
            adv_test = datasets::to_examples(adv.test);
        }
        if (!adv_train.empty()) sets.push_back({"adv_train", adv_train});
        if (!adv_test.empty()) sets.push_back({"adv_test", adv_test});
    }
    return {{"splits", final_evaluations(in.model, in.theta, sets, c.threads)}};
}

json run_benchmark_encodings(const ExperimentConfig& c, const fs::path& out) {
    const std::pair<circuits::Preset, const char*> members[] = {
        {circuits::Preset::BENCHMARK_540, "interleaved"},
        {circuits::Preset::ENCODING_FIRST_540, "encoding_first"},
    };
    std::optional<datasets::DatasetSplit> split;
    json j = json::object();
    for (const auto& [preset, name] : members) {
        ArchitectureConfig arch = c.architecture;
        arch.preset = preset;
        const auto model = make_model(arch);
        if (!split) {
            split = load_classical(c.dataset, derive_seed(c.seed, "runner.dataset"), model.circuit->data_slot_count());
            datasets::save_split(*split, out / kClassicalData);
        }
        const auto train = datasets::to_examples(split->train);
        const auto test = datasets::to_examples(split->test);
        const auto result = optim::train(model, train, test, train_config(c, "runner.train"));
        write_text_file(out / (std::string("metrics_") + name + ".csv"), optim::metrics_csv(result.history));
        optim::save_checkpoint(result.state, out / (std::string("checkpoint_") + name + ".json"));
        const std::vector<optim::EvalSet> sets = {{"train", train}, {"test", test}};
        j[name] = {{"preset", circuits::preset_name(preset)},
                   {"final", final_evaluations(model, result.state.theta, sets, c.threads)}};
    }
    j["epochs"] = c.train.epochs;
    j["interleaved_ge_encoding_first"] = j["interleaved"]["final"]["test"]["accuracy"].get<double>() >=
                                         j["encoding_first"]["final"]["test"]["accuracy"].get<double>();
    return j;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(read_text_file(path));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::string f;
        std::istringstream ls(line);
        while (std::getline(ls, f, ',')) fields.push_back(f);
        rows.push_back(std::move(fields));
    }
    return rows;
}

json run_figures(const ExperimentConfig& c, const fs::path& out) {
    const fs::path& run = c.from_run;
    json emitted = json::array();
    std::vector<fs::path> metrics;
    for (const auto& e : fs::directory_iterator(run)) {
        const auto name = e.path().filename().string();
        if (name.rfind("metrics", 0) == 0 && e.path().extension() == ".csv") metrics.push_back(e.path());
    }
    std::sort(metrics.begin(), metrics.end());
    for (const auto& m : metrics) {
        // One row per epoch per split, as recorded.
        const auto name = "curves" + m.stem().string().substr(7) + ".csv";
        write_text_file(out / name, read_text_file(m));
        emitted.push_back(name);
    }

    std::optional<qdata::QDataConfig> chain_source;
    if (fs::exists(run / "model.json")) {
        ExperimentConfig sub = c;
        sub.checkpoint.clear();
        const auto in = load_inputs(sub);
        CsvWriter csv({"split", "id", "label", "z"});
        for (const bool train : {true, false}) {
            const auto ex = examples(in, train);
            std::vector<double> z(ex.size());
            parallel_for(ex.size(), c.threads, [&](std::size_t i) { z[i] = grad::forward_z(in.model, ex[i], in.theta); });
            for (std::size_t i = 0; i < ex.size(); ++i) {
                csv.add_row({train ? "train" : "test", ex[i].id, std::to_string(ex[i].label), format_double(z[i])});
            }
        }
        csv.save(out / "zscatter.csv");
        emitted.push_back("zscatter.csv");
        if (in.quantum) chain_source = in.quantum->config;
    } else if (fs::exists(run / kQuantumData)) {
        chain_source = qdata::load_quantum_dataset(run / kQuantumData).config;
    }

    if (fs::exists(run / "attack_results.csv")) {
        const auto rows = read_csv(run / "attack_results.csv");
        CsvWriter csv({"split", "id", "label", "z_legit", "z_adv"});
        // Columns: split,id,label,initial_loss,final_loss,initial_z,final_z,...
        for (std::size_t r = 1; r < rows.size(); ++r) {
            if (rows[r].size() < 7) throw FormatError("attack_results.csv: short row");
            csv.add_row({rows[r][0], rows[r][1], rows[r][2], rows[r][5], rows[r][6]});
        }
        csv.save(out / "attack_scatter.csv");
        emitted.push_back("attack_scatter.csv");
    }

    if (chain_source) {
        const auto& chain = chain_source->chain;
        const auto& vs = c.figures.v_over_g;
        std::vector<double> phis = {0.0};
        if (c.figures.phases > 0) {
            Rng rng(derive_seed(c.seed, "runner.figures"));
            phis.clear();
            for (int k = 0; k < c.figures.phases; ++k) phis.push_back(rng.uniform(0.0, 2.0 * 3.141592653589793));
        }
        std::vector<std::vector<double>> profiles(vs.size() * phis.size());
        std::vector<double> imbalance(profiles.size());
        parallel_for(profiles.size(), c.threads, [&](std::size_t i) {
            const auto s = qdata::evolve_neel(chain, vs[i / phis.size()], phis[i % phis.size()], chain_source->evolve);
            profiles[i] = qdata::excitation_profile(s);
            imbalance[i] = qdata::staggered_imbalance(s);
        });
        CsvWriter grid({"v_over_g", "site", "p1"});
        CsvWriter imb({"v_over_g", "mean_imbalance", "std_error"});
        for (std::size_t v = 0; v < vs.size(); ++v) {
            for (int k = 0; k < chain.n_qubits; ++k) {
                double mean = 0.0;
                for (std::size_t p = 0; p < phis.size(); ++p) mean += profiles[v * phis.size() + p][static_cast<std::size_t>(k)];
                grid.add_row({format_double(vs[v]), std::to_string(k + 1), format_double(mean / static_cast<double>(phis.size()))});
            }
            double m = 0.0, sq = 0.0;
            for (std::size_t p = 0; p < phis.size(); ++p) m += imbalance[v * phis.size() + p];
            m /= static_cast<double>(phis.size());
            for (std::size_t p = 0; p < phis.size(); ++p) sq += std::pow(imbalance[v * phis.size() + p] - m, 2);
            const double se = phis.size() > 1 ? std::sqrt(sq / static_cast<double>(phis.size() - 1) / static_cast<double>(phis.size())) : 0.0;
            imb.add_row({format_double(vs[v]), format_double(m), format_double(se)});
        }
        grid.save(out / "p1_grid.csv");
        imb.save(out / "imbalance_sweep.csv");
        emitted.push_back("p1_grid.csv");
        emitted.push_back("imbalance_sweep.csv");
    }
    if (emitted.empty()) {
        throw InputError("figures: no recognized artifacts in '" + run.string() + "'");
    }
    return {{"run", run.string()}, {"emitted", emitted}};
}

}  // namespace

grad::Classifier make_model(const ArchitectureConfig& arch) {
    circuits::ArchitectureSpec spec;
    spec.preset = arch.preset;
    spec.data_weight = arch.data_weight;
    spec.layer_kinds = arch.layer_kinds;
    grad::Classifier m;
    m.circuit = std::make_shared<const circuits::CircuitTemplate>(circuits::build_preset(spec));
    m.readout_qubit = arch.readout_qubit;
    m.loss = arch.loss;
    return m;
}

datasets::DatasetSplit load_classical(const DatasetSpec& spec, std::uint64_t seed, int data_slots) {
    datasets::EncodeConfig enc = spec.encoding;
    enc.pad_to = data_slots;
    if (spec.kind == DatasetKind::SNAPSHOT) {
        auto split = datasets::load_split(spec.path);
        if (split.encoding.pad_to != data_slots) {
            split.encoding.pad_to = data_slots;
            for (auto* part : {&split.train, &split.test}) {
                for (auto& s : *part) s.x_encoded = datasets::encode(s.x, split.encoding);
            }
        }
        return split;
    }
    std::vector<datasets::RawImage> images;
    if (spec.kind == DatasetKind::MNIST_IDX) {
        images = datasets::load_idx(spec.images, spec.labels, spec.classes);
    } else if (spec.kind == DatasetKind::MANIFEST) {
        images = datasets::load_image_directory(spec.path);
    } else {
        throw ConfigError("dataset kind " + std::string(dataset_kind_name(spec.kind)) + " is not classical");
    }
    std::vector<int> label_map(static_cast<std::size_t>(*std::max_element(spec.classes.begin(), spec.classes.end()) + 1), -1);
    label_map[static_cast<std::size_t>(spec.classes[0])] = 0;
    label_map[static_cast<std::size_t>(spec.classes[1])] = 1;
    images.erase(std::remove_if(images.begin(), images.end(),
                                [&](const auto& im) {
                                    return im.label < 0 || static_cast<std::size_t>(im.label) >= label_map.size() ||
                                           label_map[static_cast<std::size_t>(im.label)] < 0;
                                }),
                 images.end());
    const auto samples = datasets::make_samples(images, label_map, enc, spec.side);
    auto split = datasets::make_split(samples, spec.n_train, spec.n_test, seed);
    split.encoding = enc;
    return split;
}

qdata::QuantumDataset load_quantum(const DatasetSpec& spec, std::uint64_t seed, int threads) {
    if (spec.kind == DatasetKind::QUANTUM_SNAPSHOT) {
        return qdata::load_quantum_dataset(spec.path);
    }
    if (spec.kind != DatasetKind::QUANTUM) {
        throw ConfigError("dataset kind " + std::string(dataset_kind_name(spec.kind)) + " is not quantum");
    }
    auto cfg = spec.qdata;
    cfg.seed = seed;
    cfg.threads = threads;
    return qdata::generate_dataset(cfg);
}

RunInputs load_inputs(const ExperimentConfig& c) {
    RunInputs in;
    DatasetSpec ds = c.dataset;
    fs::path ckpt = c.checkpoint;
    if (!c.from_run.empty()) {
        const json m = json::parse(read_text_file(c.from_run / "model.json"));
        in.architecture = architecture_from_json(m.at("architecture"));
        const std::string data = m.at("data").get<std::string>();
        ds = DatasetSpec{};
        ds.kind = data == kQuantumData ? DatasetKind::QUANTUM_SNAPSHOT : DatasetKind::SNAPSHOT;
        ds.path = c.from_run / data;
        if (ckpt.empty()) ckpt = c.from_run / m.at("checkpoint").get<std::string>();
    } else {
        in.architecture = c.architecture;
    }
    in.model = make_model(in.architecture);
    in.theta = optim::load_checkpoint(ckpt).theta;
    if (in.theta.size() != static_cast<std::size_t>(in.model.circuit->param_slot_count())) {
        throw InputError("checkpoint has " + std::to_string(in.theta.size()) + " parameters, architecture expects " +
                         std::to_string(in.model.circuit->param_slot_count()));
    }
    if (ds.quantum()) {
        in.quantum = load_quantum(ds, derive_seed(c.seed, "runner.qdata"), c.threads);
    } else {
        in.classical = load_classical(ds, derive_seed(c.seed, "runner.dataset"), in.model.circuit->data_slot_count());
    }
    return in;
}

RunResult run(const ExperimentConfig& input) {
    validate(input);
    ExperimentConfig c = input;
    c.out = (c.command == Command::FIGURES && c.out.empty()) ? c.from_run / "figures" : resolve_out(input);
    c.out = fs::absolute(c.out).lexically_normal();
    fs::create_directories(c.out);
    write_json(c.out / "config.json", config_to_json(c));
    json body;
    switch (c.command) {
        case Command::TRAIN:
            body = run_train(c, c.out);
            break;
        case Command::ATTACK:
            body = run_attack(c, c.out);
            break;
        case Command::ADVTRAIN:
            body = run_advtrain(c, c.out);
            break;
        case Command::GEN_QDATA:
            body = run_gen_qdata(c, c.out);
            break;
        case Command::XEB:
            body = run_xeb(c, c.out);
            break;
        case Command::EVAL:
            body = run_eval(c, c.out);
            break;
        case Command::BENCHMARK_ENCODINGS:
            body = run_benchmark_encodings(c, c.out);
            break;
        case Command::FIGURES:
            body = run_figures(c, c.out);
            break;
    }
    json summary = {{"command", command_name(c.command)}, {"seed", c.seed}};
    summary.update(body);
    write_json(c.out / "summary.json", summary);
    return {c.out, summary};
}

}  // namespace qadv::runner
