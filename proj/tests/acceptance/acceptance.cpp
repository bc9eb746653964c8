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

// Acceptance suite: runs the twelve end-to-end criteria and prints one
// PASS/FAIL line per criterion. Exit status 0 only when all pass.
//
//   qadv_acceptance --work DIR [--only 1,2,...] [--reuse]
//
// --reuse keeps pipeline runs whose summary.json already exists under DIR.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qadv/circuits/compile.hpp"
#include "qadv/grad/param_shift.hpp"
#include "qadv/quantum_data/dataset.hpp"
#include "qadv/runner/config.hpp"
#include "qadv/runner/pipelines.hpp"
#include "qadv/util/csv.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qadv;
using sim::GateKind;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Context {
    fs::path work;
    fs::path configs = fs::path(QADV_SOURCE_DIR) / "configs";
    bool reuse = false;
};

Context ctx;

std::string fmt(double v, int prec = 4) {
    std::ostringstream s;
    s.precision(prec);
    s << v;
    return s.str();
}

// Runs a shipped config with its output redirected under the work dir.
json run_config(const std::string& name, const std::string& out, int threads,
                const std::function<void(runner::ExperimentConfig&)>& tweak = {}) {
    const fs::path dir = ctx.work / out;
    if (ctx.reuse && fs::exists(dir / "summary.json")) {
        return json::parse(read_text_file(dir / "summary.json"));
    }
    auto c = runner::load_config(ctx.configs / name);
    c.out = dir;
    c.threads = threads;
    if (tweak) tweak(c);
    return runner::run(c).summary;
}

double accuracy(const json& final_block, const char* split) { return final_block.at(split).at("accuracy").get<double>(); }

// ---------------------------------------------------------------------------

Outcome gradient_oracle() {
    Rng rng(20261014);
    double worst_z = 0.0, worst_loss = 0.0;
    const std::array rot = {GateKind::RX, GateKind::RY, GateKind::RZ};
    for (int c = 0; c < 100; ++c) {
        const int n = 1 + c % 6;
        const int depth = 1 + (c / 6) % 8;
        circuits::TemplateBuilder b(n);
        int slot = 0;
        for (int d = 0; d < depth; ++d) {
            for (int q = 1; q <= n; ++q) {
                const double u = rng.uniform();
                if (u < 0.15) b.gate(sim::Gate::rphi(q, rng.uniform(-M_PI, M_PI), rng.uniform(0.0, 2 * M_PI)));
                else if (u < 0.25) b.gate(sim::Gate::h(q));
                b.param(rot[rng.index(3)], q, slot++, d + 1);
            }
            for (int q = 1 + static_cast<int>(rng.index(2)); q + 1 <= n; q += 2) {
                b.gate(rng.uniform() < 0.5 ? sim::Gate::cnot(q, q + 1) : sim::Gate::cz(q, q + 1));
            }
        }
        auto tmpl = std::make_shared<const circuits::CircuitTemplate>(b.build());
        std::vector<double> theta(static_cast<std::size_t>(slot));
        for (auto& t : theta) t = rng.uniform(0.0, 2 * M_PI);
        const int q = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n)));
        const int label = static_cast<int>(rng.index(2));

        auto dense_z = [&](std::span<const double> th) {
            const auto bound = circuits::bind(*tmpl, {}, th);
            return testing::dense_z(testing::dense_run(bound.gates, n, testing::basis(n, 0)), q, n);
        };
        const grad::Classifier model{tmpl, q, {}};
        const grad::Example ex{{}, nullptr, label, "c"};
        auto dense_loss = [&](std::span<const double> th) {
            return grad::loss_from_z(model.loss, dense_z(th), grad::one_hot(label));
        };
        const auto fd_z = testing::central_difference(dense_z, theta, 1e-4);
        const auto fd_l = testing::central_difference(dense_loss, theta, 1e-4);
        std::vector<int> all(theta.size());
        for (std::size_t j = 0; j < all.size(); ++j) all[j] = static_cast<int>(j);
        const auto g_l = grad::loss_grad_theta(model, ex, theta, all);
        for (std::size_t k = 0; k < theta.size(); ++k) {
            worst_z = std::max(worst_z, std::abs(grad::param_shift(*tmpl, {}, theta, q, k) - fd_z[k]));
            worst_loss = std::max(worst_loss, std::abs(g_l[k] - fd_l[k]));
        }
    }
    return {worst_z < 1e-6 && worst_loss < 1e-6,
            "max |shift - FD|: <Z> " + fmt(worst_z, 3) + ", CE " + fmt(worst_loss, 3) + " (bound 1e-6)"};
}

Outcome simulator_invariants() {
    Rng rng(7);
    const std::array kinds = {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::RPHI,
                              GateKind::H,  GateKind::CNOT, GateKind::CZ};
    double norm_err = 0.0;
    for (int p = 0; p < 5; ++p) {
        sim::StateVector s(10);
        sim::apply_all(s, testing::random_gates(10, 1000, rng, kinds));
        norm_err = std::max(norm_err, std::abs(s.norm_squared() - 1.0));
    }
    double inv_gap = 0.0;
    for (int k = 0; k < 200; ++k) {
        const auto start = testing::random_state(10, rng);
        const auto g = testing::random_gates(10, 1, rng, kinds)[0];
        auto s = start;
        s.apply(g);
        s.apply(sim::inverse(g));
        inv_gap = std::max(inv_gap, 1.0 - sim::overlap_fidelity(start, s));
    }
    double compile_gap = 0.0;
    for (int c = 0; c < 50; ++c) {
        const int n = 2 + c % 5;
        const auto gates = testing::random_gates(n, 80, rng, kinds);
        sim::StateVector a(n), b(n);
        sim::apply_all(a, gates);
        sim::apply_all(b, circuits::compile_single_qubit_runs(gates));
        compile_gap = std::max(compile_gap, 1.0 - sim::overlap_fidelity(a, b));
    }
    return {norm_err <= 1e-10 && inv_gap < 1e-12 && compile_gap < 1e-10,
            "norm drift " + fmt(norm_err, 3) + ", 1-F inverse " + fmt(inv_gap, 3) + ", 1-F compiled " +
                fmt(compile_gap, 3)};
}

Outcome evolution_oracle() {
    Rng rng(11);
    double gap = 0.0;
    std::string worst;
    for (int n : {2, 4, 6}) {
        for (double vg : {0.0, 1.0, 5.0}) {
            qdata::AAParams base;
            base.n_qubits = n;
            const auto p = qdata::sample_params(base, vg, rng.uniform(0.0, 2 * M_PI));
            const auto h = testing::dense_aa_hamiltonian(p);
            const sim::StateVector starts[] = {qdata::neel_state(n), testing::random_state(n, rng)};
            for (int k = 0; k < 2; ++k) {
                const auto got = qdata::evolve(starts[k], p);
                const auto want = testing::expm_apply(h, p.tau, testing::to_eigen(starts[k]));
                const double g = 1.0 - testing::fidelity(testing::to_eigen(got), want);
                if (g > gap) {
                    gap = g;
                    worst = " (n=" + std::to_string(n) + ", V/g=" + fmt(vg, 2) + (k ? ", random" : ", Neel") + ")";
                }
            }
        }
    }
    double drift = 0.0, leak = 0.0;
    qdata::AAParams chain;
    for (int k = 0; k < 5; ++k) {
        const auto s = qdata::evolve_neel(chain, rng.uniform(0.0, 5.0), rng.uniform(0.0, 2 * M_PI));
        double number = 0.0, outside = 0.0;
        for (double p1 : qdata::excitation_profile(s)) number += p1;
        for (std::size_t i = 0; i < s.dim(); ++i)
            if (std::popcount(i) != 5) outside += std::norm(s[i]);
        drift = std::max(drift, std::abs(number - 5.0));
        leak = std::max(leak, outside);
    }
    return {gap < 1e-8 && drift < 1e-9 && leak < 1e-9,
            "1-F vs expm " + fmt(gap, 3) + worst + ", excitation drift " + fmt(drift, 3) + ", sector leakage " + fmt(leak, 3)};
}

Outcome phase_structure() {
    const std::array<double, 5> ratios = {0.0, 1.0, 2.0, 4.0, 5.0};
    Rng rng(derive_seed(1, "acceptance.phases"));
    std::vector<double> phis(20);
    for (auto& p : phis) p = rng.uniform(0.0, 2 * M_PI);
    const qdata::AAParams chain;
    std::vector<double> mean, se;
    for (double vg : ratios) {
        std::vector<double> v;
        for (double phi : phis) v.push_back(qdata::staggered_imbalance(qdata::evolve_neel(chain, vg, phi)));
        double m = 0.0, var = 0.0;
        for (double x : v) m += x;
        m /= v.size();
        for (double x : v) var += (x - m) * (x - m);
        var /= v.size() - 1;
        mean.push_back(m);
        se.push_back(std::sqrt(var / v.size()));
    }
    bool monotone = true;
    for (std::size_t k = 1; k < mean.size(); ++k) {
        monotone &= mean[k] >= mean[k - 1] - std::hypot(se[k], se[k - 1]);
    }
    const bool ratio = mean.back() >= 2.0 * std::abs(mean.front());
    std::string d = "mean I over V/g {0,1,2,4,5}:";
    for (std::size_t k = 0; k < mean.size(); ++k) d += " " + fmt(mean[k], 3) + "±" + fmt(se[k], 2);
    return {ratio && monotone, d};
}

Outcome quantum_classifier() {
    int good = 0;
    std::string d;
    for (int seed = 1; seed <= 4; ++seed) {
        const auto s = run_config("qdata_train.json", "c5_seed" + std::to_string(seed), 1, [&](auto& c) {
            c.seed = static_cast<std::uint64_t>(seed);
        });
        const double tr = accuracy(s["final"], "train"), te = accuracy(s["final"], "test");
        const bool ok = tr >= 0.98 && te >= 0.98 && s["epochs"].get<int>() <= 40;
        good += ok;
        d += (seed > 1 ? "; " : "") + std::string("seed ") + std::to_string(seed) + " " + fmt(tr, 3) + "/" + fmt(te, 3);
    }
    return {good >= 3, std::to_string(good) + "/4 seeds >= 0.98 train/test (" + d + ")"};
}

Outcome classical_classifier() {
    const auto s = run_config("mnist_train.json", "c6", 1);
    const double te = accuracy(s["final"], "test");
    return {te >= 0.95 && s["epochs"].get<int>() <= 20,
            "test " + fmt(te, 4) + ", train " + fmt(accuracy(s["final"], "train"), 4) + " after " +
                std::to_string(s["epochs"].get<int>()) + " epochs"};
}

void from_c6(runner::ExperimentConfig& c) { c.from_run = ctx.work / "c6"; }

Outcome attack_efficacy() {
    const auto t1 = run_config("mnist_attack_type1.json", "c7_type1", 1, from_c6);
    const auto t2 = run_config("mnist_attack_type2.json", "c7_type2", 1, from_c6);
    const auto& a = t1["test"];
    const auto& b = t2["test"];
    const double f1 = a["flip_rate"], f2 = b["flip_rate"];
    const long off = b["off_mask_changes"];
    const bool ok = a["count"] == 50 && b["count"] == 50 && f1 >= 0.9 && f2 >= 0.6 && off == 0;
    return {ok, "type-1 flip " + fmt(f1, 3) + " (max change " + fmt(a["max_abs_change"], 3) + "), type-2 flip " +
                    fmt(f2, 3) + ", off-mask changes " + std::to_string(off)};
}

Outcome quantum_attack() {
    const auto s = run_config("qdata_attack.json", "c8", 1, [](auto& c) { c.from_run = ctx.work / "c5_seed1"; });
    const auto& loc = s["test"]["LOCALIZED"];
    const auto& th = s["test"]["THERMAL"];
    const double fl = loc["flip_rate"], ft = th["flip_rate"], di = loc["mean_abs_imbalance_change"];
    const double dmax = std::max(loc["max_abs_delta"].get<double>(), th["max_abs_delta"].get<double>());
    return {fl >= 0.8 && ft >= 0.3 && di < 0.2 && dmax <= 0.5,
            "localized flip " + fmt(fl, 3) + ", thermal flip " + fmt(ft, 3) + ", localized mean |dI| " + fmt(di, 3) +
                ", max |delta| " + fmt(dmax, 3)};
}

Outcome adversarial_training() {
    const auto s = run_config("mnist_advtrain.json", "c9", 1, from_c6);
    const double legit = accuracy(s["final"], "legit_test"), adv = accuracy(s["final"], "adv_test");
    return {legit >= 0.9 && adv >= 0.9 && s["epochs"].get<int>() <= 30,
            "legit test " + fmt(legit, 3) + ", adversarial test " + fmt(adv, 3) + " after " +
                std::to_string(s["epochs"].get<int>()) + " epochs"};
}

Outcome xeb_fit() {
    bool ok = true;
    std::string d;
    for (const char* name : {"xeb_1q", "xeb_2q"}) {
        const auto clean = run_config(std::string(name) + ".json", std::string("c10_") + name + "_noiseless", 1,
                                      [](auto& c) { c.xeb.noise.per_qubit_pauli_prob = 0.0; });
        double dev = 0.0;
        for (double a : clean["alpha"]) dev = std::max(dev, std::abs(a - 1.0));
        const auto noisy = run_config(std::string(name) + ".json", std::string("c10_") + name, 1);
        const double e = noisy["e_c"], want = noisy["analytic_e_c"];
        const double rel = std::abs(e - want) / want;
        ok &= dev <= 1e-9 && rel <= 0.25 && noisy["per_qubit_pauli_prob"] == 0.005;
        d += std::string(d.empty() ? "" : "; ") + name + ": |alpha-1| " + fmt(dev, 2) + ", e_c " + fmt(e, 4) +
             " vs " + fmt(want, 4) + " (" + fmt(100 * rel, 3) + "%)";
    }
    return {ok, d};
}

Outcome encoding_benchmark() {
    int wins = 0;
    std::string d;
    for (int seed = 1; seed <= 4; ++seed) {
        const auto s = run_config("benchmark_encodings.json", "c11_seed" + std::to_string(seed), 1,
                                  [&](auto& c) { c.seed = static_cast<std::uint64_t>(seed); });
        const double a = accuracy(s["interleaved"]["final"], "test");
        const double b = accuracy(s["encoding_first"]["final"], "test");
        wins += a >= b;
        d += (seed > 1 ? "; " : "") + fmt(a, 3) + " vs " + fmt(b, 3);
    }
    return {wins >= 3, std::to_string(wins) + "/4 seeds interleaved >= encoding-first (" + d + ")"};
}

// Reruns the stochastic pipelines with two threads and compares artifacts
// byte for byte with the single-thread runs above.
Outcome determinism() {
    struct Rerun {
        std::string config, primary, rerun;
        std::vector<std::string> files;
        std::function<void(runner::ExperimentConfig&)> tweak;
    };
    const std::vector<Rerun> reruns = {
        {"qdata_train.json", "c5_seed1", "c12_c5", {"metrics.csv", "checkpoint.json"}, [](auto& c) { c.seed = 1; }},
        {"mnist_train.json", "c6", "c12_c6", {"metrics.csv", "checkpoint.json"}, {}},
        {"mnist_attack_type1.json", "c7_type1", "c12_c7_type1", {"attack_results.csv"}, from_c6},
        {"mnist_attack_type2.json", "c7_type2", "c12_c7_type2", {"attack_results.csv"}, from_c6},
        {"qdata_attack.json", "c8", "c12_c8", {"attack_results.csv"},
         [](auto& c) { c.from_run = ctx.work / "c5_seed1"; }},
        {"mnist_advtrain.json", "c9", "c12_c9", {"metrics.csv", "attack_results.csv"}, from_c6},
    };
    int same = 0, total = 0;
    std::string diff;
    for (const auto& r : reruns) {
        run_config(r.config, r.rerun, 2, r.tweak);
        for (const auto& f : r.files) {
            ++total;
            const auto a = ctx.work / r.primary / f, b = ctx.work / r.rerun / f;
            if (fs::exists(a) && fs::exists(b) && read_text_file(a) == read_text_file(b)) ++same;
            else diff += " " + r.primary + "/" + f;
        }
    }
    return {same == total, std::to_string(same) + "/" + std::to_string(total) +
                               " artifacts byte-identical at 1 vs 2 threads" + (diff.empty() ? "" : "; differ:" + diff)};
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no runtime bound
    Outcome (*fn)();
};

const Criterion kCriteria[] = {
    {1, "gradient oracle", 60, gradient_oracle},
    {2, "simulator invariants", 60, simulator_invariants},
    {3, "chain evolution oracle", 60, evolution_oracle},
    {4, "phase structure", 300, phase_structure},
    {5, "quantum-data classifier", 1800, quantum_classifier},
    {6, "classical classifier", 3600, classical_classifier},
    {7, "classical attack efficacy", 1800, attack_efficacy},
    {8, "quantum attack", 1800, quantum_attack},
    {9, "adversarial training", 3600, adversarial_training},
    {10, "cross-entropy benchmarking", 300, xeb_fit},
    {11, "encoding benchmark", 3600, encoding_benchmark},
    {12, "determinism", 0, determinism},
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--work" && i + 1 < argc) {
            ctx.work = argv[++i];
        } else if (a == "--only" && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            for (std::string t; std::getline(ss, t, ',');) only.insert(std::stoi(t));
        } else if (a == "--reuse") {
            ctx.reuse = true;
        } else {
            std::cerr << "usage: qadv_acceptance --work DIR [--only 1,2,...] [--reuse]\n";
            return 2;
        }
    }
    if (ctx.work.empty()) ctx.work = fs::temp_directory_path() / "qadv_acceptance";
    ctx.work = fs::absolute(ctx.work);
    fs::create_directories(ctx.work);

    json report = json::array();
    int failed = 0;
    for (const auto& c : kCriteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs > c.limit_s) {
            o.pass = false;
            o.detail += "; runtime over " + fmt(c.limit_s, 5) + " s";
        }
        failed += !o.pass;
        std::printf("criterion %2d %s  %s: %s [%.1f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        report.push_back({{"criterion", c.id}, {"name", c.name}, {"pass", o.pass}, {"detail", o.detail}, {"seconds", secs}});
        write_text_file(ctx.work / "acceptance.json", report.dump(2) + "\n");
    }
    std::printf("%d of %zu criteria failed\n", failed, report.size());
    return failed ? 1 : 0;
}
