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

#include "bcdist/dejmps.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "json.hpp"

#include "bcdist/errors.h"

namespace bcd {

namespace {

uint32_t pair_bits(int i, int j) {
    // Pair 1 on qubit 1, pair 2 on qubit 2: bit layout x1 x2 z1 z2.
    return bell_index_x(i) | (bell_index_x(j) << 1) | (bell_index_z(i) << 2) | (bell_index_z(j) << 3);
}

void check_normalized(const BellVector &v, const char *what) {
    double sum = 0;
    for (double p : v) {
        if (!(p >= 0)) throw InputError(std::string(what) + ": negative Bell coefficient");
        sum += p;
    }
    if (std::abs(sum - 1) > 1e-12) throw InputError(std::string(what) + ": Bell coefficients do not sum to 1");
}

template <typename T>
DistStats<T> finish(const std::array<T, 4> &u) {
    DistStats<T> s;
    s.p_suc = u[0] + u[1] + u[2] + u[3];
    s.f_num = u[0];
    s.fi_nums = {u[1], u[2], u[3]};
    canonicalize(s);
    return s;
}

std::array<RationalPolynomial, 4> werner_leaf() {
    auto f = RationalPolynomial::x();
    auto rest = (RationalPolynomial::constant(1) - f) * Rational(1, 3);
    return {f, rest, rest, rest};
}

template <typename T>
std::array<T, 4> evaluate_unnormalized(const TreePlan &plan, int v, const std::array<T, 4> &leaf) {
    const auto &node = plan.nodes[v];
    if (node.left < 0) return leaf;
    auto a = evaluate_unnormalized(plan, node.left, leaf);
    auto b = evaluate_unnormalized(plan, node.right, leaf);
    return dejmps_step_unnormalized(a, b, node.rotation);
}

void check_plan(const TreePlan &plan) {
    if (plan.nodes.empty() || plan.root < 0) throw ContractViolation("TreePlan: empty plan");
    for (const auto &node : plan.nodes) {
        if (node.left >= 0 && (node.rotation < 0 || node.rotation >= 6)) {
            throw ContractViolation("TreePlan: internal node without a rotation");
        }
    }
}

int add_node(TreePlan &plan, TreePlan::Node node) {
    plan.nodes.push_back(node);
    return static_cast<int>(plan.nodes.size()) - 1;
}

int copy_subtree(TreePlan &dst, const TreePlan &src, int v) {
    auto node = src.nodes[v];
    if (node.left >= 0) {
        node.left = copy_subtree(dst, src, node.left);
        node.right = copy_subtree(dst, src, node.right);
    }
    return add_node(dst, node);
}

std::string str_of(const TreePlan &plan, int v) {
    const auto &node = plan.nodes[v];
    if (node.left < 0) return "*";
    std::string label = node.rotation >= 0 ? rotation_catalog()[node.rotation].label : "?";
    return label + "(" + str_of(plan, node.left) + "," + str_of(plan, node.right) + ")";
}

nlohmann::json json_of(const TreePlan &plan, int v) {
    const auto &node = plan.nodes[v];
    if (node.left < 0) return "pair";
    nlohmann::json j;
    j["rotation"] = node.rotation >= 0 ? rotation_catalog()[node.rotation].label : nullptr;
    j["children"] = {json_of(plan, node.left), json_of(plan, node.right)};
    return j;
}

int assign(const TreePlan &plan, int v, int first, CliffordCircuit &out) {
    const auto &node = plan.nodes[v];
    if (node.left < 0) return first;
    int kl = assign(plan, node.left, first, out);
    int kr = assign(plan, node.right, first + plan.nodes[node.left].leaves, out);
    for (int q : {kl, kr}) {
        for (const auto &g : rotation_catalog()[node.rotation].gates) {
            out.gates.push_back(g.kind == GateKind::H ? Gate::h(q) : Gate::s(q));
        }
    }
    out.gates.push_back(Gate::cnot(kl, kr));
    return kl;
}

// Subtree outcomes by leaf count, each with the provenance needed to rebuild a plan.
template <typename T>
struct DpEntry {
    std::array<T, 4> u;
    int left_size = 0;
    int left_index = -1;
    int right_size = 0;
    int right_index = -1;
    int rotation = -1;
};

template <typename T>
using DpTable = std::vector<std::vector<DpEntry<T>>>;

template <typename T>
int rebuild(const DpTable<T> &dp, int size, int index, TreePlan &plan) {
    const auto &e = dp[size][index];
    if (size == 1) return add_node(plan, {});
    TreePlan::Node node;
    node.left = rebuild(dp, e.left_size, e.left_index, plan);
    node.right = rebuild(dp, e.right_size, e.right_index, plan);
    node.rotation = e.rotation;
    node.leaves = size;
    return add_node(plan, node);
}

template <typename T>
ConcatenatedSet<T> concatenated(int n, const std::array<T, 4> &leaf) {
    if (n < 1 || n > kMaxPairs) throw DimensionError("concatenated DEJMPS: pair count out of range");
    DpTable<T> dp(n + 1);
    dp[1].push_back({leaf});
    for (int k = 2; k <= n; k++) {
        std::map<std::array<T, 4>, int> seen;
        for (int i = (k + 1) / 2; i < k; i++) {
            int j = k - i;
            for (int a = 0; a < static_cast<int>(dp[i].size()); a++) {
                int b_end = i == j ? a + 1 : static_cast<int>(dp[j].size());
                for (int b = 0; b < b_end; b++) {
                    for (int rot = 0; rot < 6; rot++) {
                        auto u = dejmps_step_unnormalized(dp[i][a].u, dp[j][b].u, rot);
                        if (seen.emplace(u, static_cast<int>(dp[k].size())).second) {
                            dp[k].push_back({u, i, a, j, b, rot});
                        }
                    }
                }
            }
        }
    }
    ConcatenatedSet<T> out;
    out.n = n;
    std::map<std::pair<T, T>, std::vector<size_t>> by_key;
    for (int idx = 0; idx < static_cast<int>(dp[n].size()); idx++) {
        auto s = finish(dp[n][idx].u);
        auto &bucket = by_key[{s.p_suc, s.f_num}];
        bool dup = std::any_of(bucket.begin(), bucket.end(), [&](size_t o) { return out.stats[o] == s; });
        if (dup) continue;
        bucket.push_back(out.stats.size());
        out.stats.push_back(s);
        TreePlan plan;
        plan.root = rebuild(dp, n, idx, plan);
        out.plans.push_back(std::move(plan));
    }
    return out;
}

}  // namespace

const std::array<Rotation, 6> &rotation_catalog() {
    static const std::array<Rotation, 6> catalog = {{
        {"I", {}},
        {"H", {Gate::h(1)}},
        {"S", {Gate::s(1)}},
        {"HS", {Gate::h(1), Gate::s(1)}},
        {"SH", {Gate::s(1), Gate::h(1)}},
        {"HSH", {Gate::h(1), Gate::s(1), Gate::h(1)}},
    }};
    return catalog;
}

CliffordCircuit dejmps_circuit(int rot) {
    if (rot < 0 || rot >= 6) throw InputError("dejmps: rotation index out of range");
    CliffordCircuit c{2, {}};
    for (int q : {1, 2}) {
        for (const auto &g : rotation_catalog()[rot].gates) {
            c.gates.push_back(g.kind == GateKind::H ? Gate::h(q) : Gate::s(q));
        }
    }
    c.gates.push_back(Gate::cnot(1, 2));
    return c;
}

const std::array<std::array<std::array<int8_t, 4>, 4>, 6> &dejmps_step_table() {
    static const auto table = [] {
        std::array<std::array<std::array<int8_t, 4>, 4>, 6> t{};
        for (int rot = 0; rot < 6; rot++) {
            auto cosets = preimage_cosets(circuit_to_symplectic(dejmps_circuit(rot)));
            std::array<int8_t, 16> cls;
            cls.fill(-1);
            for (int k = 0; k < 4; k++) {
                for (uint32_t u : cosets.base_span) cls[u ^ cosets.offsets[k]] = static_cast<int8_t>(k);
            }
            for (int i = 0; i < 4; i++) {
                for (int j = 0; j < 4; j++) t[rot][i][j] = cls[pair_bits(i, j)];
            }
        }
        return t;
    }();
    return table;
}

StepResult dejmps_step(const BellVector &a, const BellVector &b, int rot) {
    check_normalized(a, "dejmps_step");
    check_normalized(b, "dejmps_step");
    std::array<BellVector, 2> pairs{a, b};
    auto state = BellDiagonalState::product(pairs);
    auto sums = coset_sums(circuit_to_symplectic(dejmps_circuit(rot)), state);
    StepResult r;
    r.p_suc = sums[0] + sums[1] + sums[2] + sums[3];
    for (int k = 0; k < 4; k++) r.out[k] = r.p_suc > 0 ? sums[k] / r.p_suc : 0.0;
    return r;
}

std::string TreePlan::str() const {
    return nodes.empty() ? "" : str_of(*this, root);
}

std::string TreePlan::json() const {
    return nodes.empty() ? "null" : json_of(*this, root).dump();
}

TreePlan TreePlan::with_rotation(int rot) const {
    TreePlan p = *this;
    for (auto &node : p.nodes) {
        if (node.left >= 0) node.rotation = rot;
    }
    return p;
}

std::vector<TreePlan> tree_shapes(int n) {
    if (n < 1 || n > kMaxPairs) throw DimensionError("tree_shapes: leaf count out of range");
    std::vector<std::vector<TreePlan>> shapes(n + 1);
    TreePlan leaf;
    leaf.root = add_node(leaf, {});
    shapes[1].push_back(leaf);
    for (int k = 2; k <= n; k++) {
        for (int i = (k + 1) / 2; i < k; i++) {
            int j = k - i;
            for (size_t a = 0; a < shapes[i].size(); a++) {
                size_t b_end = i == j ? a + 1 : shapes[j].size();
                for (size_t b = 0; b < b_end; b++) {
                    TreePlan t;
                    TreePlan::Node node;
                    node.left = copy_subtree(t, shapes[i][a], shapes[i][a].root);
                    node.right = copy_subtree(t, shapes[j][b], shapes[j][b].root);
                    node.leaves = k;
                    t.root = add_node(t, node);
                    shapes[k].push_back(std::move(t));
                }
            }
        }
    }
    return shapes[n];
}

CliffordCircuit plan_circuit(const TreePlan &plan) {
    check_plan(plan);
    CliffordCircuit c{plan.leaves(), {}};
    assign(plan, plan.root, 1, c);
    return c;
}

NumericStats plan_stats(const TreePlan &plan, const BellVector &input) {
    check_plan(plan);
    check_normalized(input, "plan_stats");
    // Chain rule: normalised state per node, success probabilities multiplied.
    auto eval = [&](auto &&self, int v) -> std::pair<double, BellVector> {
        const auto &node = plan.nodes[v];
        if (node.left < 0) return {1.0, input};
        auto [pa, a] = self(self, node.left);
        auto [pb, b] = self(self, node.right);
        auto step = dejmps_step(a, b, node.rotation);
        return {pa * pb * step.p_suc, step.out};
    };
    auto [p, out] = eval(eval, plan.root);
    NumericStats s;
    s.p_suc = p;
    s.f_num = p * out[0];
    s.fi_nums = {p * out[1], p * out[2], p * out[3]};
    canonicalize(s);
    return s;
}

PolyStats plan_stats_werner(const TreePlan &plan) {
    check_plan(plan);
    return finish(evaluate_unnormalized(plan, plan.root, werner_leaf()));
}

const ConcatenatedSet<RationalPolynomial> &concatenated_werner(int n) {
    static std::mutex mu;
    static std::map<int, ConcatenatedSet<RationalPolynomial>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, concatenated(n, werner_leaf())).first;
    return it->second;
}

ConcatenatedSet<double> concatenated_numeric(int n, const BellVector &input) {
    check_normalized(input, "concatenated_numeric");
    return concatenated(n, input);
}

ConcatenatedBest best_concatenated(int n, std::span<const GridPoint> grid) {
    if (n < 2) throw DimensionError("best_concatenated: needs at least two pairs");
    const auto &set = concatenated_werner(n);
    ConcatenatedBest best;
    best.report = best_fidelity(set.stats, grid);
    best.stats = set.stats[best.report.primary];
    best.plan = set.plans[best.report.primary];
    return best;
}

ConcatenatedBest best_concatenated(int n) {
    return best_concatenated(n, default_grid());
}

ConcatenatedNumericBest best_concatenated(int n, const BellVector &input) {
    if (n < 2) throw DimensionError("best_concatenated: needs at least two pairs");
    auto set = concatenated_numeric(n, input);
    size_t best = 0;
    for (size_t i = 1; i < set.stats.size(); i++) {
        if (f_out(set.stats[i]) > f_out(set.stats[best])) best = i;
    }
    return {set.stats[best], set.plans[best]};
}

}  // namespace bcd
