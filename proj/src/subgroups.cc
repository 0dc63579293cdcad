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

#include "bcdist/subgroups.h"

#include "bcdist/errors.h"

namespace bcd {

std::vector<SymplecticMatrix> GeneratorSet::matrices() const {
    std::vector<SymplecticMatrix> out;
    out.reserve(gates.size());
    for (const auto &g : gates) out.push_back(gate_matrix(g, n));
    return out;
}

GeneratorSet dn_generators(int n) {
    if (n < 1 || n > kMaxPairs) throw DimensionError("pair count out of range");
    GeneratorSet out{GroupLabel::D, n, {}};
    out.gates.push_back(Gate::h(1));
    for (int i = 1; i <= n; i++) out.gates.push_back(Gate::s(i));
    for (int i = 1; i <= n; i++)
        for (int j = 1; j < i; j++) out.gates.push_back(Gate::cnot(i, j));
    for (int i = 2; i <= n; i++)
        for (int j = i + 1; j <= n; j++) out.gates.push_back(Gate::cnot(i, j));
    return out;
}

GeneratorSet kn_generators(int n) {
    if (n < 1 || n > kMaxPairs) throw DimensionError("pair count out of range");
    GeneratorSet out{GroupLabel::K, n, {}};
    for (int i = 1; i <= n; i++)
        for (int j = i + 1; j <= n; j++) out.gates.push_back(Gate::swap(i, j));
    for (int i = 1; i <= n; i++) out.gates.push_back(Gate::h(i));
    for (int i = 1; i <= n; i++) out.gates.push_back(Gate::s(i));
    return out;
}

BigInt dn_order(int n) {
    if (n < 1) throw DimensionError("pair count must be positive");
    if (n == 1) return 6;
    BigInt out = 6;
    out <<= (n * n - 1);
    for (int j = 1; j < n; j++) out *= (BigInt(1) << j) - 1;
    return out;
}

BigInt dn_index(int n) {
    if (n < 1) throw DimensionError("pair count must be positive");
    BigInt out = (BigInt(1) << n) - 1;
    for (int j = 1; j <= n; j++) out *= (BigInt(1) << j) + 1;
    return out / 3;
}

bool is_in_dn(const SymplecticMatrix &m) {
    int n = m.n();
    uint32_t base_mask = low_mask(2 * n) & ~low_mask(n + 1);
    for (int q = 2; q <= n; q++) {
        if (m.apply(1u << (n + q - 1)) & ~base_mask) return false;
    }
    return true;
}

SubspaceKey coset_key_of_inverse(const BinaryMatrix &inverse) {
    int n = inverse.n();
    std::array<uint32_t, kMaxPairs> cols{};
    for (int q = 2; q <= n; q++) cols[q - 2] = inverse.col(n + q - 1);
    return subspace_key_raw(std::span<const uint32_t>(cols.data(), n - 1), n);
}

SubspaceKey coset_key(const SymplecticMatrix &m) { return coset_key_of_inverse(m.inverse().matrix()); }

std::unordered_set<BinaryMatrix> bfs_closure(const GeneratorSet &gens, size_t limit) {
    std::vector<BinaryMatrix> mats;
    for (const auto &g : gens.matrices()) mats.push_back(g.matrix());
    std::unordered_set<BinaryMatrix> seen{BinaryMatrix::identity(gens.n)};
    std::vector<BinaryMatrix> frontier{BinaryMatrix::identity(gens.n)};
    while (!frontier.empty()) {
        std::vector<BinaryMatrix> next;
        for (const auto &m : frontier) {
            for (const auto &g : mats) {
                BinaryMatrix p = g * m;
                if (seen.insert(p).second) {
                    if (seen.size() > limit) throw ContractViolation("group closure exceeds limit");
                    next.push_back(p);
                }
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

SymplecticMatrix random_word(const GeneratorSet &gens, int length, Rng &rng) {
    BinaryMatrix m = BinaryMatrix::identity(gens.n);
    std::uniform_int_distribution<size_t> pick(0, gens.gates.size() - 1);
    for (int k = 0; k < length; k++) apply_gate_rows(m, gens.gates[pick(rng)]);
    return SymplecticMatrix::trusted(m);
}

}  // namespace bcd
