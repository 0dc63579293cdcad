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

#ifndef BCDIST_DEJMPS_H
#define BCDIST_DEJMPS_H

#include <array>
#include <string>
#include <vector>

#include "bcdist/circuits.h"
#include "bcdist/pauli_state.h"
#include "bcdist/werner_enum.h"

namespace bcd {

/// Single-qubit Clifford rotations modulo Paulis, one per element of Sp(2, F2).
struct Rotation {
    std::string label;
    /// Gates in time order on qubit 1.
    std::vector<Gate> gates;
};

/// I, H, S, HS, SH, HSH (labels read in time order).
const std::array<Rotation, 6> &rotation_catalog();
/// Index of the rotation that fixes X and exchanges Y and Z.
constexpr int kDejmpsRotation = 5;

/// Rotation `rot` on both pairs, CNOT from pair 1 onto pair 2, pair 2 measured.
CliffordCircuit dejmps_circuit(int rot);

struct StepResult {
    double p_suc = 0;
    /// Output (F, F₁, F₂, F₃) in I, X, Y, Z order, normalised.
    BellVector out{};
};

StepResult dejmps_step(const BellVector &a, const BellVector &b, int rot);

/// For each rotation, where a pair of input Paulis (I, X, Y, Z indices) goes:
/// the surviving output Pauli, or -1 when the step rejects.
const std::array<std::array<std::array<int8_t, 4>, 4>, 6> &dejmps_step_table();

/// Unnormalised output of one step, entries summing to the success probability
/// times the input masses.
template <typename T>
std::array<T, 4> dejmps_step_unnormalized(const std::array<T, 4> &a, const std::array<T, 4> &b, int rot) {
    const auto &table = dejmps_step_table()[rot];
    std::array<T, 4> out{};
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            int c = table[i][j];
            if (c >= 0) out[c] = out[c] + a[i] * b[j];
        }
    }
    return out;
}

/// A binary tree of pairs. Leaves have no children and no rotation. The left
/// child's pair is kept at each internal node.
struct TreePlan {
    struct Node {
        int left = -1;
        int right = -1;
        int rotation = -1;
        int leaves = 1;
    };
    std::vector<Node> nodes;
    int root = -1;

    int leaves() const { return nodes.empty() ? 0 : nodes[root].leaves; }
    /// Nested form such as "HSH(I(*,*),*)".
    std::string str() const;
    std::string json() const;
    /// Same tree with the rotation of every internal node set to `rot`.
    TreePlan with_rotation(int rot) const;
};

/// One plan per unordered tree shape with n leaves, rotations unset.
std::vector<TreePlan> tree_shapes(int n);

/// The plan as an n-qubit circuit. The subtree rooted at v occupies a
/// contiguous qubit block and keeps its first qubit; the root keeps qubit 1.
CliffordCircuit plan_circuit(const TreePlan &plan);

/// Evaluates a plan on identical input pairs by the chain rule.
NumericStats plan_stats(const TreePlan &plan, const BellVector &input);
PolyStats plan_stats_werner(const TreePlan &plan);

template <typename T>
struct ConcatenatedSet {
    int n = 1;
    std::vector<DistStats<T>> stats;
    std::vector<TreePlan> plans;
};

/// Every distinct output of concatenated DEJMPS on n identical Werner pairs over
/// all tree shapes and per-node rotations, one plan each.
const ConcatenatedSet<RationalPolynomial> &concatenated_werner(int n);
ConcatenatedSet<double> concatenated_numeric(int n, const BellVector &input);

struct ConcatenatedBest {
    PolyStats stats;
    TreePlan plan;
    DominanceReport report;
};

ConcatenatedBest best_concatenated(int n, std::span<const GridPoint> grid);
ConcatenatedBest best_concatenated(int n);

struct ConcatenatedNumericBest {
    NumericStats stats;
    TreePlan plan;
};

/// Plan maximising F_out on identical input pairs; ties keep the first plan.
ConcatenatedNumericBest best_concatenated(int n, const BellVector &input);

}  // namespace bcd

#endif
