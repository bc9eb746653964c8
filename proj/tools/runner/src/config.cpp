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

#include "qadv/runner/config.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace qadv::runner {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 8> kCommands = {{
    {Command::TRAIN, "train"},
    {Command::ATTACK, "attack"},
    {Command::ADVTRAIN, "advtrain"},
    {Command::GEN_QDATA, "gen-qdata"},
    {Command::XEB, "xeb"},
    {Command::EVAL, "eval"},
    {Command::BENCHMARK_ENCODINGS, "benchmark-encodings"},
    {Command::FIGURES, "figures"},
}};

constexpr std::array<std::pair<DatasetKind, std::string_view>, 6> kDatasetKinds = {{
    {DatasetKind::NONE, "none"},
    {DatasetKind::MNIST_IDX, "mnist_idx"},
    {DatasetKind::MANIFEST, "manifest"},
    {DatasetKind::SNAPSHOT, "snapshot"},
    {DatasetKind::QUANTUM, "quantum"},
    {DatasetKind::QUANTUM_SNAPSHOT, "quantum_snapshot"},
}};

// Typed reads from one JSON object; every key must be read or finish()
// reports it as unknown.
class Reader {
   public:
    Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) {
            throw ConfigError(where_ + ": expected an object");
        }
    }

    bool has(const char* key) {
        seen_.insert(key);
        return j_.contains(key) && !j_.at(key).is_null();
    }

    double number(const char* key, double def) {
        if (!has(key)) return def;
        const auto& v = j_.at(key);
        if (!v.is_number()) throw ConfigError(path(key) + ": expected a number");
        return v.get<double>();
    }

    long long integer(const char* key, long long def) {
        if (!has(key)) return def;
        const auto& v = j_.at(key);
        if (!v.is_number_integer()) throw ConfigError(path(key) + ": expected an integer");
        return v.get<long long>();
    }

    std::uint64_t unsigned_integer(const char* key) {
        const auto& v = j_.at(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
        throw ConfigError(path(key) + ": expected a non-negative integer");
    }

    std::string string(const char* key, std::string def) {
        if (!has(key)) return def;
        const auto& v = j_.at(key);
        if (!v.is_string()) throw ConfigError(path(key) + ": expected a string");
        return v.get<std::string>();
    }

    fs::path file(const char* key, const fs::path& base) {
        const std::string s = string(key, "");
        if (s.empty()) return {};
        fs::path p(s);
        return p.is_absolute() ? p.lexically_normal() : (base / p).lexically_normal();
    }

    template <typename T>
    std::vector<T> list(const char* key, std::vector<T> def) {
        if (!has(key)) return def;
        const auto& v = j_.at(key);
        if (!v.is_array()) throw ConfigError(path(key) + ": expected an array");
        std::vector<T> out;
        for (const auto& e : v) {
            if (!e.is_number()) throw ConfigError(path(key) + ": expected numbers");
            if constexpr (std::is_integral_v<T>) {
                if (!e.is_number_integer()) throw ConfigError(path(key) + ": expected integers");
            }
            out.push_back(e.get<T>());
        }
        return out;
    }

    std::vector<std::string> strings(const char* key, std::vector<std::string> def) {
        if (!has(key)) return def;
        const auto& v = j_.at(key);
        if (!v.is_array()) throw ConfigError(path(key) + ": expected an array");
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (!e.is_string()) throw ConfigError(path(key) + ": expected strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    std::pair<double, double> range(const char* key, std::pair<double, double> def) {
        const auto v = list<double>(key, {def.first, def.second});
        if (v.size() != 2) throw ConfigError(path(key) + ": expected [lo, hi]");
        return {v[0], v[1]};
    }

    Reader child(const char* key) {
        seen_.insert(key);
        static const json kEmpty = json::object();
        return Reader(j_.contains(key) ? j_.at(key) : kEmpty, path(key));
    }

    void finish() const {
        for (const auto& [k, v] : j_.items()) {
            if (!seen_.count(k)) throw ConfigError(where_ + ": unknown key '" + k + "'");
        }
    }

    std::string path(const char* key) const { return where_ + "." + key; }

   private:
    const json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

template <typename Fn>
auto wrap(const std::string& where, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

DatasetKind parse_dataset_kind(std::string_view name) {
    for (const auto& [k, n] : kDatasetKinds) {
        if (n == name) return k;
    }
    throw ConfigError("dataset.kind: unknown kind '" + std::string(name) + "'");
}

optim::AdamConfig read_adam(Reader r) {
    optim::AdamConfig a;
    a.beta1 = r.number("beta1", a.beta1);
    a.beta2 = r.number("beta2", a.beta2);
    a.eps = r.number("eps", a.eps);
    r.finish();
    return a;
}

json adam_json(const optim::AdamConfig& a) { return {{"beta1", a.beta1}, {"beta2", a.beta2}, {"eps", a.eps}}; }

std::string path_string(const fs::path& p) { return p.empty() ? std::string() : p.string(); }

void require_file(const fs::path& p, const std::string& what) {
    if (p.empty()) throw ConfigError(what + " is required");
    if (!fs::exists(p)) throw ConfigError(what + ": '" + p.string() + "' does not exist");
}

// Run directories resolve like outputs so that a config can name the run
// another config wrote.
fs::path run_path(const std::string& s) {
    if (s.empty()) return {};
    const fs::path p(s);
    if (p.is_absolute()) return p.lexically_normal();
    const char* root = std::getenv("QADV_OUT");
    return ((root && *root ? fs::path(root) : fs::current_path()) / p).lexically_normal();
}

ArchitectureConfig read_architecture(Reader a) {
    ArchitectureConfig arch;
    arch.preset = wrap(a.path("preset"), [&] {
        return circuits::parse_preset(a.string("preset", std::string(circuits::preset_name(arch.preset))));
    });
    arch.readout_qubit = static_cast<int>(a.integer("readout_qubit", arch.readout_qubit));
    arch.loss.kind = wrap(a.path("loss"), [&] { return grad::parse_loss_kind(a.string("loss", "CROSS_ENTROPY")); });
    arch.loss.floor = a.number("loss_floor", arch.loss.floor);
    arch.data_weight = a.number("data_weight", arch.data_weight);
    if (a.has("layer_kinds")) {
        arch.layer_kinds.clear();
        for (const auto& k : a.strings("layer_kinds", {})) {
            arch.layer_kinds.push_back(wrap(a.path("layer_kinds"), [&] { return sim::parse_gate_kind(k); }));
        }
    }
    a.finish();
    return arch;
}

}  // namespace

std::string_view command_name(Command c) {
    for (const auto& [k, n] : kCommands) {
        if (k == c) return n;
    }
    return "unknown";
}

Command parse_command(std::string_view name) {
    for (const auto& [k, n] : kCommands) {
        if (n == name) return k;
    }
    throw ConfigError("unknown command '" + std::string(name) + "'");
}

std::string_view dataset_kind_name(DatasetKind k) {
    for (const auto& [kind, n] : kDatasetKinds) {
        if (kind == k) return n;
    }
    return "none";
}

ExperimentConfig parse_config(const json& doc, const fs::path& base_dir) {
    Reader root(doc, "config");
    ExperimentConfig c;
    c.schema_version = static_cast<int>(root.integer("schema_version", -1));
    if (c.schema_version != kSchemaVersion) {
        throw ConfigError("config.schema_version: expected " + std::to_string(kSchemaVersion));
    }
    c.command = parse_command(root.string("command", ""));
    if (!root.has("seed")) {
        throw ConfigError("config.seed is required");
    }
    c.seed = root.unsigned_integer("seed");
    c.threads = static_cast<int>(root.integer("threads", 1));
    c.out = fs::path(root.string("out", ""));
    c.from_run = run_path(root.string("from_run", ""));
    c.adversarial_run = run_path(root.string("adversarial_run", ""));
    c.checkpoint = root.file("checkpoint", base_dir);

    {
        Reader d = root.child("dataset");
        auto& ds = c.dataset;
        ds.kind = parse_dataset_kind(d.string("kind", "none"));
        ds.images = d.file("images", base_dir);
        ds.labels = d.file("labels", base_dir);
        ds.path = d.file("path", base_dir);
        ds.classes = d.list<int>("classes", ds.classes);
        ds.n_train = static_cast<std::size_t>(std::max(0LL, d.integer("n_train", 500)));
        ds.n_test = static_cast<std::size_t>(std::max(0LL, d.integer("n_test", 100)));
        ds.side = static_cast<int>(d.integer("side", ds.side));
        {
            Reader e = d.child("encoding");
            auto& enc = ds.encoding;
            enc.normalization = wrap(e.path("normalization"), [&] {
                return datasets::parse_normalization(e.string("normalization", "L2"));
            });
            enc.scale = e.number("scale", enc.scale);
            enc.range_scale = e.number("range_scale", enc.range_scale);
            enc.pad_to = static_cast<int>(e.integer("pad_to", enc.pad_to));
            e.finish();
        }
        auto& q = ds.qdata;
        {
            Reader ch = d.child("chain");
            q.chain.n_qubits = static_cast<int>(ch.integer("n_qubits", q.chain.n_qubits));
            q.chain.g = ch.number("g", q.chain.g);
            q.chain.alpha = ch.number("alpha", q.chain.alpha);
            q.chain.tau = ch.number("tau", q.chain.tau);
            ch.finish();
        }
        std::tie(q.thermal_lo, q.thermal_hi) = d.range("thermal", {q.thermal_lo, q.thermal_hi});
        std::tie(q.localized_lo, q.localized_hi) = d.range("localized", {q.localized_lo, q.localized_hi});
        {
            Reader ev = d.child("evolve");
            q.evolve.tol = ev.number("tol", q.evolve.tol);
            q.evolve.krylov_dim = static_cast<int>(ev.integer("krylov_dim", q.evolve.krylov_dim));
            q.evolve.max_substeps = static_cast<int>(ev.integer("max_substeps", q.evolve.max_substeps));
            ev.finish();
        }
        q.n_train = ds.n_train;
        q.n_test = ds.n_test;
        d.finish();
    }
    c.architecture = read_architecture(root.child("architecture"));
    {
        Reader t = root.child("train");
        auto& tr = c.train;
        tr.epochs = static_cast<int>(t.integer("epochs", tr.epochs));
        tr.learning_rate = t.number("learning_rate", tr.learning_rate);
        tr.batch_size = static_cast<int>(t.integer("batch_size", tr.batch_size));
        tr.eval_batch = static_cast<int>(t.integer("eval_batch", tr.eval_batch));
        tr.schedule = wrap(t.path("schedule"), [&] {
            return optim::parse_schedule(t.string("schedule", std::string(optim::schedule_name(tr.schedule))));
        });
        tr.subset = t.list<int>("subset", {});
        tr.steps_per_epoch = static_cast<int>(t.integer("steps_per_epoch", tr.steps_per_epoch));
        tr.init_low = t.number("init_low", tr.init_low);
        tr.init_high = t.number("init_high", tr.init_high);
        tr.adam = read_adam(t.child("adam"));
        t.finish();
    }
    {
        Reader a = root.child("attack");
        auto& at = c.attack;
        at.kind = wrap(a.path("kind"), [&] {
            return adversarial::parse_attack_kind(a.string("kind", std::string(adversarial::attack_name(at.kind))));
        });
        at.iterations = static_cast<int>(a.integer("iterations", at.iterations));
        at.learning_rate = a.number("learning_rate", at.learning_rate);
        at.mask_threshold = a.number("mask_threshold", at.mask_threshold);
        at.kappa = a.number("kappa", at.kappa);
        if (a.has("linf")) at.linf = a.number("linf", 0.0);
        at.adam = read_adam(a.child("adam"));
        const bool adv = c.command == Command::ADVTRAIN;
        c.attack_scope.train = a.integer("train", adv ? -1 : 0);
        c.attack_scope.test = a.integer("test", -1);
        a.finish();
    }
    {
        Reader a = root.child("advtrain");
        c.legit_per_batch = static_cast<int>(a.integer("legit_per_batch", c.legit_per_batch));
        c.adv_per_batch = static_cast<int>(a.integer("adv_per_batch", c.adv_per_batch));
        a.finish();
    }
    {
        Reader x = root.child("xeb");
        auto& xc = c.xeb;
        xc.n_qubits = static_cast<int>(x.integer("n_qubits", xc.n_qubits));
        xc.cycles = x.list<int>("cycles", xc.cycles);
        xc.circuits = static_cast<int>(x.integer("circuits", xc.circuits));
        xc.shots = static_cast<int>(x.integer("shots", xc.shots));
        xc.trajectories = static_cast<int>(x.integer("trajectories", xc.trajectories));
        xc.noise.per_qubit_pauli_prob = x.number("pauli_prob", 0.0);
        x.finish();
    }
    {
        Reader f = root.child("figures");
        c.figures.v_over_g = f.list<double>("v_over_g", c.figures.v_over_g);
        c.figures.phases = static_cast<int>(f.integer("phases", c.figures.phases));
        f.finish();
    }
    root.finish();
    return c;
}

ExperimentConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc, fs::absolute(path).parent_path());
}

json kind_names(const std::vector<sim::GateKind>& kinds) {
    json out = json::array();
    for (auto k : kinds) out.push_back(std::string(sim::gate_name(k)));
    return out;
}

json architecture_to_json(const ArchitectureConfig& a) {
    return {{"preset", circuits::preset_name(a.preset)},
            {"readout_qubit", a.readout_qubit},
            {"loss", grad::loss_name(a.loss.kind)},
            {"loss_floor", a.loss.floor},
            {"data_weight", a.data_weight},
            {"layer_kinds", kind_names(a.layer_kinds)}};
}

ArchitectureConfig architecture_from_json(const json& doc) { return read_architecture(Reader(doc, "architecture")); }

json config_to_json(const ExperimentConfig& c) {
    const auto& ds = c.dataset;
    const auto& q = ds.qdata;
    json d = {
        {"kind", dataset_kind_name(ds.kind)},
        {"images", path_string(ds.images)},
        {"labels", path_string(ds.labels)},
        {"path", path_string(ds.path)},
        {"classes", ds.classes},
        {"n_train", ds.n_train},
        {"n_test", ds.n_test},
        {"side", ds.side},
        {"encoding",
         {{"normalization", datasets::normalization_name(ds.encoding.normalization)},
          {"scale", ds.encoding.scale},
          {"range_scale", ds.encoding.range_scale},
          {"pad_to", ds.encoding.pad_to}}},
        {"chain", {{"n_qubits", q.chain.n_qubits}, {"g", q.chain.g}, {"alpha", q.chain.alpha}, {"tau", q.chain.tau}}},
        {"thermal", {q.thermal_lo, q.thermal_hi}},
        {"localized", {q.localized_lo, q.localized_hi}},
        {"evolve", {{"tol", q.evolve.tol}, {"krylov_dim", q.evolve.krylov_dim}, {"max_substeps", q.evolve.max_substeps}}},
    };
    const auto& tr = c.train;
    json attack = {
        {"kind", adversarial::attack_name(c.attack.kind)},
        {"iterations", c.attack.iterations},
        {"learning_rate", c.attack.learning_rate},
        {"mask_threshold", c.attack.mask_threshold},
        {"kappa", c.attack.kappa},
        {"adam", adam_json(c.attack.adam)},
        {"train", c.attack_scope.train},
        {"test", c.attack_scope.test},
    };
    if (c.attack.linf) attack["linf"] = *c.attack.linf;
    return {
        {"schema_version", c.schema_version},
        {"command", command_name(c.command)},
        {"seed", c.seed},
        {"threads", c.threads},
        {"out", path_string(c.out)},
        {"from_run", path_string(c.from_run)},
        {"adversarial_run", path_string(c.adversarial_run)},
        {"checkpoint", path_string(c.checkpoint)},
        {"dataset", d},
        {"architecture", architecture_to_json(c.architecture)},
        {"train",
         {{"epochs", tr.epochs},
          {"learning_rate", tr.learning_rate},
          {"batch_size", tr.batch_size},
          {"eval_batch", tr.eval_batch},
          {"schedule", optim::schedule_name(tr.schedule)},
          {"subset", tr.subset},
          {"steps_per_epoch", tr.steps_per_epoch},
          {"init_low", tr.init_low},
          {"init_high", tr.init_high},
          {"adam", adam_json(tr.adam)}}},
        {"attack", attack},
        {"advtrain", {{"legit_per_batch", c.legit_per_batch}, {"adv_per_batch", c.adv_per_batch}}},
        {"xeb",
         {{"n_qubits", c.xeb.n_qubits},
          {"cycles", c.xeb.cycles},
          {"circuits", c.xeb.circuits},
          {"shots", c.xeb.shots},
          {"trajectories", c.xeb.trajectories},
          {"pauli_prob", c.xeb.noise.per_qubit_pauli_prob}}},
        {"figures", {{"v_over_g", c.figures.v_over_g}, {"phases", c.figures.phases}}},
    };
}

void validate(const ExperimentConfig& c) {
    if (c.threads < 1) throw ConfigError("config.threads must be at least 1");
    const auto& ds = c.dataset;
    const bool needs_dataset = c.command == Command::TRAIN || c.command == Command::GEN_QDATA ||
                               c.command == Command::BENCHMARK_ENCODINGS;
    const bool reuses_run = c.command == Command::ATTACK || c.command == Command::ADVTRAIN ||
                            c.command == Command::EVAL || c.command == Command::FIGURES;
    if (needs_dataset && ds.kind == DatasetKind::NONE) {
        throw ConfigError(std::string(command_name(c.command)) + " requires a dataset");
    }
    if (reuses_run) {
        if (!c.from_run.empty()) {
            require_file(c.from_run / (c.command == Command::FIGURES ? "config.json" : "model.json"), "from_run");
        } else if (c.command == Command::FIGURES || c.command == Command::ADVTRAIN) {
            throw ConfigError(std::string(command_name(c.command)) + " requires from_run");
        } else {
            require_file(c.checkpoint, "checkpoint");
            if (ds.kind == DatasetKind::NONE) {
                throw ConfigError(std::string(command_name(c.command)) + " requires from_run or a dataset");
            }
        }
    }
    if (!c.checkpoint.empty()) require_file(c.checkpoint, "checkpoint");
    if (!c.adversarial_run.empty()) require_file(c.adversarial_run / "adversarial.json", "adversarial_run");
    switch (ds.kind) {
        case DatasetKind::MNIST_IDX:
            require_file(ds.images, "dataset.images");
            require_file(ds.labels, "dataset.labels");
            break;
        case DatasetKind::MANIFEST:
        case DatasetKind::SNAPSHOT:
        case DatasetKind::QUANTUM_SNAPSHOT:
            require_file(ds.path, "dataset.path");
            break;
        default:
            break;
    }
    if (ds.kind == DatasetKind::MNIST_IDX || ds.kind == DatasetKind::MANIFEST) {
        if (ds.classes.size() != 2 || ds.classes[0] == ds.classes[1]) {
            throw ConfigError("dataset.classes must name two distinct source labels");
        }
        if (ds.side < 1) throw ConfigError("dataset.side must be positive");
        if (ds.side * ds.side > ds.encoding.pad_to) {
            throw ConfigError("dataset.encoding.pad_to is smaller than side^2");
        }
    }
    if (ds.kind == DatasetKind::QUANTUM) {
        const auto& q = ds.qdata;
        if (q.chain.n_qubits < 2 || q.chain.n_qubits > 20) throw ConfigError("dataset.chain.n_qubits must be in [2, 20]");
        if (!(q.chain.tau >= 0.0)) throw ConfigError("dataset.chain.tau must be non-negative");
        if (!(q.thermal_lo <= q.thermal_hi) || !(q.localized_lo <= q.localized_hi)) {
            throw ConfigError("dataset: V/g ranges must satisfy lo <= hi");
        }
    }
    if (c.command == Command::GEN_QDATA && ds.kind != DatasetKind::QUANTUM) {
        throw ConfigError("gen-qdata requires dataset.kind = quantum");
    }
    if (c.command == Command::BENCHMARK_ENCODINGS && ds.quantum()) {
        throw ConfigError("benchmark-encodings requires a classical dataset");
    }
    const bool quantum_preset = c.architecture.preset == circuits::Preset::AMPLITUDE_QUANTUM_10Q;
    if (c.command == Command::TRAIN && ds.kind != DatasetKind::NONE && quantum_preset != ds.quantum()) {
        throw ConfigError("architecture.preset " + std::string(circuits::preset_name(c.architecture.preset)) +
                          " does not take " + std::string(dataset_kind_name(ds.kind)) + " data");
    }
    if (c.architecture.readout_qubit < 1 || c.architecture.readout_qubit > 10) {
        throw ConfigError("architecture.readout_qubit must be in [1, 10]");
    }
    const auto& tr = c.train;
    if (tr.epochs < 0) throw ConfigError("train.epochs must be non-negative");
    if (!(tr.learning_rate > 0.0)) throw ConfigError("train.learning_rate must be positive");
    if (tr.batch_size < 1) throw ConfigError("train.batch_size must be positive");
    if (tr.eval_batch < 0) throw ConfigError("train.eval_batch must be non-negative");
    if (tr.steps_per_epoch < 1) throw ConfigError("train.steps_per_epoch must be positive");
    if (!(tr.init_low <= tr.init_high)) throw ConfigError("train.init_low must not exceed init_high");
    if (tr.schedule == optim::Schedule::FIXED_SUBSET && tr.subset.empty()) {
        throw ConfigError("train.subset is required for FIXED_SUBSET");
    }
    if (c.command == Command::ATTACK || c.command == Command::ADVTRAIN) {
        wrap("attack", [&] {
            adversarial::validate(c.attack);
            return 0;
        });
    }
    if (c.command == Command::ADVTRAIN && (c.legit_per_batch < 0 || c.adv_per_batch < 0 ||
                                           c.legit_per_batch + c.adv_per_batch == 0)) {
        throw ConfigError("advtrain batch composition must be non-negative and non-empty");
    }
    if (c.command == Command::XEB) {
        wrap("xeb", [&] {
            xeb::validate(c.xeb);
            return 0;
        });
    }
    if (c.figures.phases < 0) throw ConfigError("figures.phases must be non-negative");
}

fs::path resolve_out(const ExperimentConfig& c) {
    const char* root = std::getenv("QADV_OUT");
    if (c.out.empty()) {
        return (root && *root ? fs::path(root) : fs::path("runs")) / std::string(command_name(c.command));
    }
    if (c.out.is_relative() && root && *root) {
        return fs::path(root) / c.out;
    }
    return c.out;
}

}  // namespace qadv::runner
