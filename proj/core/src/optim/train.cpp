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

#include "qadv/optim/train.hpp"

#include <algorithm>
#include <set>

#include "qadv/util/csv.hpp"
#include "qadv/util/error.hpp"
#include "qadv/util/parallel.hpp"
#include "qadv/util/rng.hpp"

namespace qadv::optim {

namespace {

void validate(const grad::Classifier& model, const TrainConfig& c) {
    if (!model.circuit) {
        throw InputError("train: classifier has no circuit");
    }
    if (c.epochs < 0) throw InputError("train: epochs must be non-negative");
    if (!(c.learning_rate >= 0.0)) throw InputError("train: learning rate must be non-negative");
    if (c.batch_size < 1) throw InputError("train: batch size must be at least 1");
    if (c.eval_batch < 0) throw InputError("train: eval batch must be non-negative");
    if (c.steps_per_epoch < 1) throw InputError("train: steps_per_epoch must be at least 1");
    if (!(c.init_high >= c.init_low)) throw InputError("train: empty initialization interval");
}

std::vector<const grad::Example*> draw(std::span<const grad::Example> pool, int count, Rng& rng) {
    const std::size_t k = std::min<std::size_t>(pool.size(), static_cast<std::size_t>(count));
    std::vector<const grad::Example*> out;
    out.reserve(k);
    for (auto i : sample_without_replacement(pool.size(), k, rng)) {
        out.push_back(&pool[i]);
    }
    return out;
}

Evaluation evaluate_ptrs(const grad::Classifier& model, std::span<const double> theta,
                         std::span<const grad::Example* const> items, int threads) {
    if (items.empty()) {
        throw InputError("evaluate: empty set");
    }
    std::vector<double> z(items.size());
    parallel_for(items.size(), threads, [&](std::size_t i) { z[i] = grad::forward_z(model, *items[i], theta); });
    Evaluation e;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        e.loss += grad::loss_from_z(model.loss, z[i], grad::one_hot(items[i]->label));
        correct += grad::predict(z[i]) == items[i]->label;
    }
    e.loss /= static_cast<double>(items.size());
    e.accuracy = static_cast<double>(correct) / static_cast<double>(items.size());
    return e;
}

}  // namespace

std::string_view schedule_name(Schedule s) {
    switch (s) {
        case Schedule::GROUPED_BY_QUBIT:
            return "GROUPED_BY_QUBIT";
        case Schedule::FIXED_SUBSET:
            return "FIXED_SUBSET";
        case Schedule::FULL:
            return "FULL";
    }
    return "FULL";
}

Schedule parse_schedule(std::string_view name) {
    if (name == "GROUPED_BY_QUBIT") return Schedule::GROUPED_BY_QUBIT;
    if (name == "FIXED_SUBSET") return Schedule::FIXED_SUBSET;
    if (name == "FULL") return Schedule::FULL;
    throw InputError("unknown schedule '" + std::string(name) + "'");
}

std::vector<std::vector<int>> schedule_groups(const circuits::CircuitTemplate& circuit, const TrainConfig& config) {
    const int n_params = circuit.param_slot_count();
    std::vector<std::vector<int>> groups;
    switch (config.schedule) {
        case Schedule::GROUPED_BY_QUBIT: {
            std::set<int> seen;
            for (int q = 1; q <= circuit.n_qubits(); ++q) {
                auto g = circuits::params_on_qubit(circuit, q);
                for (int j : g) {
                    if (!seen.insert(j).second) {
                        throw InputError("train: parameter " + std::to_string(j) +
                                         " sits on more than one qubit; GROUPED_BY_QUBIT needs a partition");
                    }
                }
                if (!g.empty()) {
                    groups.push_back(std::move(g));
                }
            }
            break;
        }
        case Schedule::FIXED_SUBSET: {
            if (config.subset.empty()) {
                throw InputError("train: FIXED_SUBSET needs a nonempty subset");
            }
            std::set<int> seen;
            for (int j : config.subset) {
                if (j < 0 || j >= n_params) {
                    throw InputError("train: subset index " + std::to_string(j) + " out of range");
                }
                if (!seen.insert(j).second) {
                    throw InputError("train: subset index " + std::to_string(j) + " repeated");
                }
            }
            groups.push_back(config.subset);
            break;
        }
        case Schedule::FULL: {
            std::vector<int> all(static_cast<std::size_t>(n_params));
            for (int j = 0; j < n_params; ++j) {
                all[static_cast<std::size_t>(j)] = j;
            }
            groups.push_back(std::move(all));
            break;
        }
    }
    if (groups.empty()) {
        throw InputError("train: the circuit has no trainable parameters");
    }
    return groups;
}

std::vector<double> initial_theta(const circuits::CircuitTemplate& circuit, const TrainConfig& config) {
    Rng rng(derive_seed(config.seed, "train.init"));
    std::vector<double> theta(static_cast<std::size_t>(circuit.param_slot_count()));
    for (auto& t : theta) {
        t = rng.uniform(config.init_low, config.init_high);
    }
    return theta;
}

Evaluation evaluate(const grad::Classifier& model, std::span<const double> theta, std::span<const grad::Example> set,
                    int threads) {
    std::vector<const grad::Example*> items;
    items.reserve(set.size());
    for (const auto& e : set) {
        items.push_back(&e);
    }
    return evaluate_ptrs(model, theta, items, threads);
}

std::vector<double> batch_gradient(const grad::Classifier& model, std::span<const double> theta,
                                   std::span<const grad::Example* const> batch, std::span<const int> indices,
                                   int threads) {
    if (batch.empty()) {
        throw InputError("batch_gradient: empty batch");
    }
    std::vector<std::vector<double>> per(batch.size());
    parallel_for(batch.size(), threads,
                 [&](std::size_t i) { per[i] = grad::loss_grad_theta(model, *batch[i], theta, indices); });
    std::vector<double> g(indices.size(), 0.0);
    for (const auto& p : per) {
        for (std::size_t k = 0; k < g.size(); ++k) {
            g[k] += p[k];
        }
    }
    for (auto& v : g) {
        v /= static_cast<double>(batch.size());
    }
    return g;
}

TrainResult train_mixed(const grad::Classifier& model, std::span<const BatchSource> sources,
                        std::span<const EvalSet> eval_sets, const TrainConfig& config,
                        const std::optional<TrainState>& resume, const EpochCallback& on_epoch) {
    validate(model, config);
    if (sources.empty()) {
        throw InputError("train: no training data");
    }
    for (const auto& s : sources) {
        if (s.pool.empty() || s.count < 1) {
            throw InputError("train: empty training dataset");
        }
    }
    const auto& circuit = *model.circuit;
    const auto groups = schedule_groups(circuit, config);
    const int steps = config.schedule == Schedule::GROUPED_BY_QUBIT ? 1 : config.steps_per_epoch;

    TrainResult result;
    auto& st = result.state;
    Rng batch_rng(derive_seed(config.seed, "train.batch"));
    Rng eval_rng(derive_seed(config.seed, "train.eval"));
    if (resume) {
        st = *resume;
        if (st.theta.size() != static_cast<std::size_t>(circuit.param_slot_count()) ||
            st.optimizers.size() != groups.size()) {
            throw InputError("train: checkpoint does not match the circuit and schedule");
        }
        batch_rng.restore(st.batch_rng);
        eval_rng.restore(st.eval_rng);
    } else {
        st.epoch = 0;
        st.theta = initial_theta(circuit, config);
        for (const auto& g : groups) {
            st.optimizers.emplace_back(g.size(), config.adam);
        }
    }

    auto record = [&](int epoch) {
        const std::size_t first = result.history.size();
        for (const auto& es : eval_sets) {
            std::vector<const grad::Example*> items;
            if (config.eval_batch == 0 || static_cast<std::size_t>(config.eval_batch) >= es.items.size()) {
                for (const auto& e : es.items) {
                    items.push_back(&e);
                }
            } else {
                items = draw(es.items, config.eval_batch, eval_rng);
            }
            const auto ev = evaluate_ptrs(model, st.theta, items, config.threads);
            result.history.push_back({epoch, es.split, ev.loss, ev.accuracy});
        }
        st.batch_rng = batch_rng.state();
        st.eval_rng = eval_rng.state();
        if (on_epoch) {
            on_epoch(st, std::span<const MetricsRecord>(result.history).subspan(first));
        }
    };

    if (!resume) {
        record(0);
    }
    for (int epoch = st.epoch + 1; epoch <= config.epochs; ++epoch) {
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            const auto& group = groups[gi];
            for (int step = 0; step < steps; ++step) {
                std::vector<const grad::Example*> batch;
                for (const auto& s : sources) {
                    auto part = draw(s.pool, s.count, batch_rng);
                    batch.insert(batch.end(), part.begin(), part.end());
                }
                const auto g = batch_gradient(model, st.theta, batch, group, config.threads);
                std::vector<double> p(group.size());
                for (std::size_t k = 0; k < group.size(); ++k) {
                    p[k] = st.theta[static_cast<std::size_t>(group[k])];
                }
                adam_step(st.optimizers[gi], p, g, config.learning_rate);
                for (std::size_t k = 0; k < group.size(); ++k) {
                    st.theta[static_cast<std::size_t>(group[k])] = p[k];
                }
            }
        }
        st.epoch = epoch;
        record(epoch);
    }
    return result;
}

TrainResult train(const grad::Classifier& model, std::span<const grad::Example> train_set,
                  std::span<const grad::Example> test_set, const TrainConfig& config,
                  const std::optional<TrainState>& resume, const EpochCallback& on_epoch) {
    if (train_set.empty()) {
        throw InputError("train: empty training dataset");
    }
    const BatchSource sources[] = {{train_set, config.batch_size}};
    std::vector<EvalSet> evals = {{"train", train_set}};
    if (!test_set.empty()) {
        evals.push_back({"test", test_set});
    }
    return train_mixed(model, sources, evals, config, resume, on_epoch);
}

std::string metrics_csv(std::span<const MetricsRecord> history) {
    CsvWriter w({"epoch", "split", "loss", "accuracy"});
    for (const auto& r : history) {
        w.add_row({std::to_string(r.epoch), r.split, format_double(r.loss), format_double(r.accuracy)});
    }
    return w.str();
}

}  // namespace qadv::optim
