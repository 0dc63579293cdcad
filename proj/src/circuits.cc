// Copyright 2026 The bcdist Authors
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

#include "bcdist/circuits.h"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "bcdist/errors.h"
#include "bcdist/parallel.h"

namespace bcd {
namespace {

CliffordCircuit make(int n, std::initializer_list<Gate> body) {
    CliffordCircuit c{n, body};
    for (int q = 2; q <= n; q++) c.gates.push_back(Gate::h(q));
    return c;
}

WernerProfile profile_of(const CliffordCircuit &c) {
    return werner_profile_of_inverse(circuit_to_symplectic(c).inverse().matrix()).canonical();
}

struct Cost {
    int two_qubit = 0;
    int depth = 0;
    uint64_t trial = 0;
    auto operator<=>(const Cost &) const = default;
};

// Removes single gates while the profile is unchanged, restarting after each removal.
CliffordCircuit shrink(CliffordCircuit c, const WernerProfile &target) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < c.gates.size(); i++) {
            if (!is_two_qubit(c.gates[i].kind)) continue;
            CliffordCircuit trial = c;
            trial.gates.erase(trial.gates.begin() + static_cast<std::ptrdiff_t>(i));
            if (profile_of(trial) == target) {
                c = std::move(trial);
                changed = true;
                break;
            }
        }
        for (size_t i = 0; i < c.gates.size() && !changed; i++) {
            if (!is_two_qubit(c.gates[i].kind)) continue;
            for (size_t j = i + 1; j < c.gates.size(); j++) {
                if (!(c.gates[j] == c.gates[i])) continue;
                CliffordCircuit trial = c;
                trial.gates.erase(trial.gates.begin() + static_cast<std::ptrdiff_t>(j));
                trial.gates.erase(trial.gates.begin() + static_cast<std::ptrdiff_t>(i));
                if (profile_of(trial) == target) {
                    c = std::move(trial);
                    changed = true;
                    break;
                }
            }
        }
    }
    return c;
}

bool commute(const Gate &g, const Gate &h) {
    auto touches = [](const Gate &x, int q) { return x.qubits[0] == q || (x.arity() == 2 && x.qubits[1] == q); };
    bool share = touches(g, h.qubits[0]) || (h.arity() == 2 && touches(g, h.qubits[1]));
    if (!share) return true;
    if (g.kind == GateKind::CZ && h.kind == GateKind::CZ) return true;
    if (g.kind == GateKind::CNOT && h.kind == GateKind::CNOT) {
        return g.qubits[0] != h.qubits[1] && g.qubits[1] != h.qubits[0];
    }
    if (g.kind == GateKind::CZ && h.kind == GateKind::CNOT) return !touches(g, h.qubits[1]);
    if (g.kind == GateKind::CNOT && h.kind == GateKind::CZ) return !touches(h, g.qubits[1]);
    return false;
}

// Reorders commuting gates by list scheduling: each step places the ready gate
// that can start in the earliest layer.
CliffordCircuit compact(const CliffordCircuit &c) {
    const size_t k = c.gates.size();
    std::vector<std::vector<size_t>> deps(k);
    for (size_t j = 0; j < k; j++)
        for (size_t i = 0; i < j; i++)
            if (!commute(c.gates[i], c.gates[j])) deps[j].push_back(i);
    std::vector<int> layer(k, -1), level(static_cast<size_t>(c.n) + 1, 0);
    std::vector<bool> done(k, false);
    for (size_t placed = 0; placed < k; placed++) {
        size_t pick = k;
        int best = INT32_MAX;
        for (size_t j = 0; j < k; j++) {
            if (done[j]) continue;
            int start = 0;
            bool ready = true;
            for (size_t d : deps[j]) {
                if (!done[d]) {
                    ready = false;
                    break;
                }
                start = std::max(start, layer[d] + 1);
            }
            if (!ready) continue;
            const Gate &g = c.gates[j];
            start = std::max(start, level[g.qubits[0]]);
            if (g.arity() == 2) start = std::max(start, level[g.qubits[1]]);
            if (start < best) {
                best = start;
                pick = j;
            }
        }
        done[pick] = true;
        layer[pick] = best;
        const Gate &g = c.gates[pick];
        level[g.qubits[0]] = best + 1;
        if (g.arity() == 2) level[g.qubits[1]] = best + 1;
    }
    std::vector<size_t> order(k);
    for (size_t j = 0; j < k; j++) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return layer[x] < layer[y]; });
    CliffordCircuit out{c.n, {}};
    for (size_t j : order) out.gates.push_back(c.gates[j]);
    return depth(out) < depth(c) ? out : c;
}

}  // namespace

void CliffordCircuit::validate() const {
    if (n < 1 || n > kMaxPairs) throw DimensionError("circuit qubit count out of range");
    for (const auto &g : gates) g.validate(n);
}

CliffordCircuit CliffordCircuit::operator+(const CliffordCircuit &later) const {
    if (later.n != n) throw DimensionError("circuit qubit counts differ");
    CliffordCircuit out = *this;
    out.gates.insert(out.gates.end(), later.gates.begin(), later.gates.end());
    return out;
}

SymplecticMatrix circuit_to_symplectic(const CliffordCircuit &c) {
    c.validate();
    BinaryMatrix m = BinaryMatrix::identity(c.n);
    for (const auto &g : c.gates) apply_gate_rows(m, g);
    return SymplecticMatrix::trusted(m);
}

int depth(const CliffordCircuit &c) {
    std::vector<int> level(static_cast<size_t>(c.n) + 1, 0);
    int out = 0;
    for (const auto &g : c.gates) {
        int l = level[g.qubits[0]];
        if (g.arity() == 2) l = std::max(l, level[g.qubits[1]]);
        l++;
        level[g.qubits[0]] = l;
        if (g.arity() == 2) level[g.qubits[1]] = l;
        out = std::max(out, l);
    }
    return out;
}

int two_qubit_count(const CliffordCircuit &c) {
    return static_cast<int>(
        std::count_if(c.gates.begin(), c.gates.end(), [](const Gate &g) { return is_two_qubit(g.kind); }));
}

std::string circuit_to_json(const CliffordCircuit &c) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &g : c.gates) {
        nlohmann::json qs = nlohmann::json::array();
        for (int k = 0; k < g.arity(); k++) qs.push_back(g.qubits[k]);
        out.push_back({{"gate", std::string(gate_name(g.kind))}, {"qubits", qs}});
    }
    return out.dump();
}

CliffordCircuit circuit_from_json(std::string_view text, int n) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("bad circuit JSON: ") + e.what());
    }
    if (!doc.is_array()) throw InputError("circuit JSON must be a list");
    CliffordCircuit c{n, {}};
    for (const auto &item : doc) {
        if (!item.contains("gate") || !item.contains("qubits")) throw InputError("circuit gate needs gate and qubits");
        Gate g;
        g.kind = gate_kind_from_name(item["gate"].get<std::string>());
        const auto &qs = item["qubits"];
        if (!qs.is_array() || static_cast<int>(qs.size()) != g.arity()) throw InputError("wrong qubit count for gate");
        g.qubits = {qs[0].get<int>(), g.arity() == 2 ? qs[1].get<int>() : 0};
        c.gates.push_back(g);
    }
    c.validate();
    return c;
}

std::string circuit_diagram(const CliffordCircuit &c) {
    std::vector<int> level(static_cast<size_t>(c.n) + 1, 0);
    std::vector<std::vector<const Gate *>> layers;
    for (const auto &g : c.gates) {
        int lo = g.qubits[0], hi = g.arity() == 2 ? g.qubits[1] : lo;
        if (lo > hi) std::swap(lo, hi);
        // Vertical wires occupy every qubit between the two ends.
        int l = 0;
        for (int q = lo; q <= hi; q++) l = std::max(l, level[q]);
        for (int q = lo; q <= hi; q++) level[q] = l + 1;
        if (static_cast<int>(layers.size()) <= l) layers.resize(l + 1);
        layers[l].push_back(&g);
    }
    std::vector<std::string> rows(c.n);
    for (int q = 1; q <= c.n; q++) rows[q - 1] = "q" + std::to_string(q) + (q < 10 ? " : " : ": ");
    for (const auto &layer : layers) {
        std::vector<std::string> cell(c.n, "---");
        for (const Gate *g : layer) {
            int a = g->qubits[0], b = g->qubits[1];
            switch (g->kind) {
                case GateKind::H: cell[a - 1] = "-H-"; break;
                case GateKind::S: cell[a - 1] = "-S-"; break;
                case GateKind::X: cell[a - 1] = "-X-"; break;
                case GateKind::CNOT: cell[a - 1] = "-@-"; cell[b - 1] = "-X-"; break;
                case GateKind::CZ: cell[a - 1] = "-Z-"; cell[b - 1] = "-Z-"; break;
                case GateKind::SWAP: cell[a - 1] = "-x-"; cell[b - 1] = "-x-"; break;
            }
            if (g->arity() == 2) {
                for (int q = std::min(a, b) + 1; q < std::max(a, b); q++) cell[q - 1] = "-|-";
            }
        }
        for (int q = 0; q < c.n; q++) rows[q] += cell[q] + "-";
    }
    std::string out;
    for (const auto &r : rows) out += r + "\n";
    return out;
}

const std::map<int, CliffordCircuit> &published_circuits() {
    using G = Gate;
    static const std::map<int, CliffordCircuit> circuits = {
        {4, make(4, {G::cnot(4, 1), G::cz(2, 3), G::cz(1, 2), G::cz(3, 4)})},
        {5, make(5, {G::cnot(3, 1), G::cnot(5, 1), G::cnot(4, 3), G::cz(1, 3), G::cz(2, 5), G::cz(2, 3), G::cz(4, 5)})},
        {6, make(6, {G::cnot(3, 1), G::cnot(3, 2), G::cnot(5, 1), G::cnot(4, 3), G::cz(5, 6), G::cz(2, 3), G::cz(1, 3),
                     G::cz(2, 5)})},
        {7, make(7, {G::cnot(5, 4), G::cnot(3, 1), G::cnot(5, 3), G::cnot(2, 1), G::cz(6, 7), G::cz(2, 6), G::cz(1, 3),
                     G::cz(2, 4), G::cz(3, 7), G::cz(3, 4), G::cz(5, 6)})},
        {8, make(8, {G::cnot(8, 3), G::cnot(7, 6), G::cnot(3, 2), G::cnot(8, 4), G::cnot(4, 1), G::cnot(8, 7),
                     G::cnot(6, 4), G::cz(3, 5), G::cz(1, 7), G::cz(5, 6), G::cz(4, 7), G::cz(3, 7), G::cz(2, 4)})},
    };
    return circuits;
}

CliffordCircuit synthesis_candidate(int n, Rng &rng, bool swap_w) {
    CliffordCircuit c{n, {}};
    std::uniform_int_distribution<int> len(0, 3 * n), qubit(1, n);
    int l = len(rng);
    for (int k = 0; k < l; k++) {
        int i, j;
        do {
            i = qubit(rng);
            j = qubit(rng);
        } while (j >= i);
        c.gates.push_back(Gate::cnot(i, j));
    }
    double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    std::bernoulli_distribution edge(density);
    for (int i = 1; i <= n; i++)
        for (int j = i + 1; j <= n; j++)
            if (edge(rng)) c.gates.push_back(Gate::cz(i, j));
    if (swap_w && n >= 2) {
        int j = std::uniform_int_distribution<int>(1, n)(rng);
        if (j != 1) c.gates.push_back(Gate::swap(1, j));
    }
    for (int q = 2; q <= n; q++) c.gates.push_back(Gate::h(q));
    return c;
}

SynthesisResult synthesize(const WernerProfile &target, int n, const SynthesisOptions &options) {
    if (target.n != n) throw DimensionError("target profile pair count differs from n");
    const WernerProfile goal = target.canonical();
    const uint64_t chunk = std::max<uint64_t>(options.chunk_trials, 1);
    const uint64_t chunks = (options.budget + chunk - 1) / chunk;
    const uint64_t wave = static_cast<uint64_t>(std::max(options.jobs, 1));
    SynthesisResult result;
    std::optional<Cost> best;
    std::optional<uint64_t> first_hit_chunk;
    for (uint64_t start = 0; start < chunks; start += wave) {
        uint64_t count = std::min(wave, chunks - start);
        if (first_hit_chunk && options.patience) count = std::min(count, *first_hit_chunk + *options.patience + 1 - start);
        struct ChunkBest {
            uint64_t hits = 0;
            std::optional<Cost> cost;
            CliffordCircuit circuit;
        };
        std::vector<ChunkBest> found(count);
        parallel_for(static_cast<size_t>(count), options.jobs, [&](size_t k) {
            uint64_t c = start + k;
            uint64_t lo = c * chunk, hi = std::min(options.budget, lo + chunk);
            Rng rng = chunk_rng(options.seed, c);
            auto &fb = found[k];
            for (uint64_t t = lo; t < hi; t++) {
                auto cand = synthesis_candidate(n, rng, options.swap_w);
                if (profile_of(cand) != goal) continue;
                fb.hits++;
                auto small = shrink(std::move(cand), goal);
                auto packed = compact(small);
                if (profile_of(packed) == goal) small = std::move(packed);
                Cost cost{two_qubit_count(small), depth(small), t};
                if (!fb.cost || cost < *fb.cost) {
                    fb.cost = cost;
                    fb.circuit = std::move(small);
                }
            }
        });
        for (uint64_t k = 0; k < count; k++) {
            uint64_t c = start + k;
            result.trials = std::min(options.budget, (c + 1) * chunk);
            result.hits += found[k].hits;
            if (found[k].cost) {
                if (!first_hit_chunk) first_hit_chunk = c;
                if (!best || *found[k].cost < *best) {
                    best = found[k].cost;
                    result.circuit = found[k].circuit;
                }
            }
        }
        if (options.progress) options.progress(result.trials, result.hits);
        if (first_hit_chunk && options.patience && start + count > *first_hit_chunk + *options.patience) break;
    }
    if (best) {
        result.found = true;
        result.best_two_qubit = best->two_qubit;
        result.best_depth = best->depth;
        result.trial = best->trial;
    }
    return result;
}

}  // namespace bcd
