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

#ifndef BCDIST_CIRCUITS_H
#define BCDIST_CIRCUITS_H

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcdist/gf2.h"
#include "bcdist/pauli_state.h"

namespace bcd {

/// Gates in temporal order: gates[0] acts first.
struct CliffordCircuit {
    int n = 1;
    std::vector<Gate> gates;

    /// Throws DimensionError on any out-of-range gate.
    void validate() const;
    CliffordCircuit operator+(const CliffordCircuit &later) const;
    bool operator==(const CliffordCircuit &) const = default;
};

/// gate_matrix(g_k)···gate_matrix(g_1).
SymplecticMatrix circuit_to_symplectic(const CliffordCircuit &c);

/// Greedy layering in the given order; gates sharing a qubit never share a layer.
int depth(const CliffordCircuit &c);
int two_qubit_count(const CliffordCircuit &c);

/// [{"gate": "CNOT", "qubits": [i, j]}, ...]
std::string circuit_to_json(const CliffordCircuit &c);
CliffordCircuit circuit_from_json(std::string_view text, int n);
/// One text row per qubit, one column per layer.
std::string circuit_diagram(const CliffordCircuit &c);

/// The optimal circuits for n = 4..8 as published.
const std::map<int, CliffordCircuit> &published_circuits();

struct SynthesisOptions {
    uint64_t budget = 1000000;
    uint64_t seed = 1;
    int jobs = 1;
    uint64_t chunk_trials = 1u << 14;
    /// Stop this many chunks after the first chunk that contains a hit.
    /// Unset runs the whole budget.
    std::optional<uint64_t> patience;
    /// Also try W = H_2···H_n·SWAP(1, j).
    bool swap_w = false;
    std::function<void(uint64_t trials, uint64_t hits)> progress;
};

struct SynthesisResult {
    bool found = false;
    CliffordCircuit circuit;
    uint64_t trials = 0;
    uint64_t hits = 0;
    /// Smallest circuit found, as (two-qubit gates, depth); best-effort value on a miss.
    int best_two_qubit = 0;
    int best_depth = 0;
    /// Trial index that produced `circuit`.
    uint64_t trial = 0;
};

/// Random search over CNOT↑ sequence, CZ set, then H_2..H_n. A candidate is
/// accepted iff its canonical Werner profile equals `target`; accepted
/// candidates are shrunk by greedy gate deletion and the lexicographically
/// smallest (two-qubit count, depth, trial) wins. Chunk c draws from
/// chunk_rng(seed, c), so the result is independent of `jobs`.
SynthesisResult synthesize(const WernerProfile &target, int n, const SynthesisOptions &options);

/// One random candidate circuit, before shrinking.
CliffordCircuit synthesis_candidate(int n, Rng &rng, bool swap_w);

}  // namespace bcd

#endif
