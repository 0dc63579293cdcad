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

#ifndef BCDIST_SUBGROUPS_H
#define BCDIST_SUBGROUPS_H

#include <unordered_set>
#include <vector>

#include "bcdist/gf2.h"

namespace bcd {

enum class GroupLabel : uint8_t { D, K };

/// Generators of the distillation subgroup D_n or of the Werner symmetry group K_n.
struct GeneratorSet {
    GroupLabel label = GroupLabel::D;
    int n = 1;
    std::vector<Gate> gates;

    std::vector<SymplecticMatrix> matrices() const;
};

/// {H_1, S_1..S_n} ∪ {CNOT_ij : j < i} ∪ {CNOT_ij : 2 <= i < j}.
GeneratorSet dn_generators(int n);
/// {SWAP_ij : i < j} ∪ {H_i} ∪ {S_i}.
GeneratorSet kn_generators(int n);

BigInt dn_order(int n);
/// [Sp(2n, F2) : D_n] = (2^n - 1) ∏_{j=1}^{n} (2^j + 1) / 3.
BigInt dn_index(int n);

/// True iff M maps base(n) onto itself.
bool is_in_dn(const SymplecticMatrix &m);

/// Canonical key of the right coset D_n·M, i.e. of the subspace M⁻¹[base].
SubspaceKey coset_key(const SymplecticMatrix &m);
/// Same, from an already computed inverse.
SubspaceKey coset_key_of_inverse(const BinaryMatrix &inverse);

/// Breadth-first closure of the generated group. Throws ContractViolation once
/// more than `limit` elements are found.
std::unordered_set<BinaryMatrix> bfs_closure(const GeneratorSet &gens, size_t limit = 1u << 22);

/// Product of `length` generators drawn uniformly.
SymplecticMatrix random_word(const GeneratorSet &gens, int length, Rng &rng);

}  // namespace bcd

#endif
