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

#include "qadv/xeb/xeb.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>

#include "qadv/util/csv.hpp"
#include "qadv/util/error.hpp"
#include "qadv/util/parallel.hpp"

namespace qadv::xeb {

void validate(const XebConfig& c) {
    if (c.n_qubits != 1 && c.n_qubits != 2) throw InputError("xeb: n_qubits must be 1 or 2");
    if (c.cycles.empty()) throw InputError("xeb: cycles list is empty");
    for (std::size_t i = 0; i < c.cycles.size(); ++i) {
        if (c.cycles[i] < 0 || (i > 0 && c.cycles[i] <= c.cycles[i - 1])) {
            throw InputError("xeb: cycles must be non-negative and strictly increasing");
        }
    }
    if (c.circuits < 2) throw InputError("xeb: at least 2 circuits per point are required");
    if (c.shots < 0) throw InputError("xeb: shots must be non-negative");
    if (c.trajectories < 1) throw InputError("xeb: trajectories must be at least 1");
    const double p = c.noise.per_qubit_pauli_prob;
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("xeb: noise probability must lie in [0, 1]");
}

std::vector<sim::Gate> random_cycle(int n_qubits, Rng& rng) {
    std::vector<sim::Gate> layer;
    for (int q = 1; q <= n_qubits; ++q) {
        const double phi = static_cast<double>(rng.index(8)) * std::numbers::pi / 4;
        layer.push_back(sim::Gate::rphi(q, std::numbers::pi / 2, phi));
    }
    if (n_qubits == 2) {
        layer.push_back(sim::Gate::cz(1, 2));
    }
    return layer;
}

double final_gate_theta(double u) { return std::acos(std::clamp(1.0 - 2.0 * u, -1.0, 1.0)); }

sim::Gate final_random_gate(int qubit, Rng& rng) {
    const double phi = rng.uniform(0.0, 2 * std::numbers::pi);
    const double theta = final_gate_theta(rng.uniform());
    return sim::Gate::rphi(qubit, theta, phi);
}

AlphaTerms alpha_terms(std::span<const double> p_e, std::span<const double> p_s) {
    if (p_e.size() != p_s.size() || p_e.empty()) {
        throw InputError("xeb: distributions must have equal nonzero length");
    }
    const double d = static_cast<double>(p_s.size());
    double se = 0.0, ss = 0.0;
    AlphaTerms t;
    double sq = 0.0;
    for (std::size_t i = 0; i < p_s.size(); ++i) {
        se += p_e[i];
        ss += p_s[i];
        t.numerator += p_e[i] * (d * p_s[i] - 1.0);
        sq += p_s[i] * p_s[i];
    }
    if (std::abs(se - 1.0) > 1e-6 || std::abs(ss - 1.0) > 1e-6) {
        throw InputError("xeb: distributions must sum to 1");
    }
    t.denominator = d * sq - 1.0;
    return t;
}

double xeb_alpha(std::span<const AlphaTerms> terms) {
    if (terms.empty()) throw InputError("xeb_alpha: no circuits");
    double num = 0.0, den = 0.0;
    for (const auto& t : terms) {
        num += t.numerator;
        den += t.denominator;
    }
    num /= static_cast<double>(terms.size());
    den /= static_cast<double>(terms.size());
    if (std::abs(den) < 1e-12) {
        throw NumericalError("xeb_alpha: degenerate denominator (simulated distributions are uniform)");
    }
    return num / den;
}

double xeb_alpha(std::span<const std::vector<double>> p_e, std::span<const std::vector<double>> p_s) {
    if (p_e.size() != p_s.size()) throw InputError("xeb_alpha: circuit counts differ");
    std::vector<AlphaTerms> terms;
    for (std::size_t c = 0; c < p_e.size(); ++c) terms.push_back(alpha_terms(p_e[c], p_s[c]));
    return xeb_alpha(terms);
}

DecayFit fit_decay(std::span<const int> m, std::span<const double> alpha, int dim) {
    if (m.size() != alpha.size()) throw InputError("fit_decay: length mismatch");
    if (m.size() < 3) throw NumericalError("fit_decay: at least 3 points are required");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!(alpha[i] > 0.0)) throw NumericalError("fit_decay: non-positive alpha at m = " + std::to_string(m[i]));
        const double x = m[i];
        const double y = std::log(alpha[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12) throw NumericalError("fit_decay: cycle values are degenerate");
    const double slope = (n * sxy - sx * sy) / det;
    const double icpt = (sy - slope * sx) / n;
    DecayFit f;
    f.A = std::exp(icpt);
    f.p = std::min(1.0, std::exp(slope));
    const double d = dim;
    f.e_c = (1.0 - f.p) * (1.0 - 1.0 / (d * d));
    return f;
}

double analytic_pauli_error(double per_qubit_prob, int n_qubits) { return 1.0 - std::pow(1.0 - per_qubit_prob, n_qubits); }

XebResult run_xeb(const XebConfig& config) {
    validate(config);
    const int n = config.n_qubits;
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t points = config.cycles.size();
    const std::size_t per = static_cast<std::size_t>(config.circuits);
    const bool noiseless = config.noise.per_qubit_pauli_prob == 0.0;
    const int trajectories = noiseless ? 1 : config.trajectories;

    XebResult res;
    res.records.resize(points * per);
    parallel_for(points * per, config.threads, [&](std::size_t idx) {
        const int m = config.cycles[idx / per];
        Rng circuit_rng(derive_seed(config.seed, "xeb.circuit", idx));
        Rng noise_rng(derive_seed(config.seed, "xeb.noise", idx));
        std::vector<std::vector<sim::Gate>> cycles;
        for (int c = 0; c < m; ++c) cycles.push_back(random_cycle(n, circuit_rng));
        std::vector<sim::Gate> final_layer;
        for (int q = 1; q <= n; ++q) final_layer.push_back(final_random_gate(q, circuit_rng));

        auto run = [&](bool noisy) {
            sim::StateVector s(n);
            for (const auto& layer : cycles) {
                sim::apply_all(s, layer);
                if (noisy) sim::apply_stochastic_pauli(s, config.noise, noise_rng);
            }
            sim::apply_all(s, final_layer);
            return s.probabilities();
        };
        const auto p_s = run(false);
        std::vector<double> p_e(dim, 0.0);
        for (int t = 0; t < trajectories; ++t) {
            const auto p = run(!noiseless);
            for (std::size_t i = 0; i < dim; ++i) p_e[i] += p[i];
        }
        for (auto& v : p_e) v /= trajectories;
        if (config.shots > 0) {
            std::vector<double> cdf(dim);
            double acc = 0.0;
            for (std::size_t i = 0; i < dim; ++i) cdf[i] = (acc += p_e[i]);
            std::vector<double> hist(dim, 0.0);
            for (int k = 0; k < config.shots; ++k) {
                const double u = noise_rng.uniform() * acc;
                const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
                hist[std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), dim - 1)] += 1.0;
            }
            for (auto& v : hist) v /= config.shots;
            p_e = std::move(hist);
        }
        CircuitRecord r;
        r.m = m;
        r.circuit = static_cast<int>(idx % per);
        r.terms = alpha_terms(p_e, p_s);
        r.alpha_contribution = r.terms.denominator != 0.0 ? r.terms.numerator / r.terms.denominator : 0.0;
        res.records[idx] = r;
    });
    for (std::size_t pt = 0; pt < points; ++pt) {
        std::vector<AlphaTerms> terms;
        for (std::size_t c = 0; c < per; ++c) terms.push_back(res.records[pt * per + c].terms);
        res.m.push_back(config.cycles[pt]);
        res.alpha.push_back(xeb_alpha(terms));
    }
    if (points >= 3) {
        res.fit = fit_decay(res.m, res.alpha, static_cast<int>(dim));
    }
    return res;
}

std::string results_csv(const XebResult& result) {
    CsvWriter w({"m", "circuit", "alpha_contribution", "numerator", "denominator"});
    for (const auto& r : result.records) {
        w.add_row({std::to_string(r.m), std::to_string(r.circuit), format_double(r.alpha_contribution),
                   format_double(r.terms.numerator), format_double(r.terms.denominator)});
    }
    return w.str();
}

std::string summary_json(const XebConfig& config, const XebResult& result) {
    nlohmann::json doc;
    doc["format"] = "qadv.xeb_summary";
    doc["version"] = 1;
    doc["n_qubits"] = config.n_qubits;
    doc["dimension"] = 1 << config.n_qubits;
    doc["per_qubit_pauli_prob"] = config.noise.per_qubit_pauli_prob;
    doc["mode"] = config.shots > 0 ? "shots" : "exact";
    doc["m"] = result.m;
    doc["alpha"] = result.alpha;
    doc["A"] = result.fit.A;
    doc["p"] = result.fit.p;
    doc["e_c"] = result.fit.e_c;
    doc["analytic_e_c"] = analytic_pauli_error(config.noise.per_qubit_pauli_prob, config.n_qubits);
    return doc.dump(1) + "\n";
}

}  // namespace qadv::xeb
