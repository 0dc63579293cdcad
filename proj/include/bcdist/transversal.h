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

#ifndef BCDIST_TRANSVERSAL_H
#define BCDIST_TRANSVERSAL_H

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bcdist/gf2.h"
#include "bcdist/pauli_state.h"

namespace bcd {

/// Largest n the transversal machinery accepts (keys are packed in 128 bits).
inline constexpr int kMaxTransversalPairs = 8;

using PackedKey = unsigned __int128;
using PackedRows = std::array<uint16_t, 2 * kMaxTransversalPairs>;

struct TransversalEntry {
    PackedKey key = 0;
    PackedRows rows{};
};

PackedKey pack_key(const SubspaceKey &key);
SubspaceKey unpack_key(PackedKey key, int n);
PackedRows pack_rows(const BinaryMatrix &m);
BinaryMatrix unpack_rows(const PackedRows &rows, int n);

/// One representative per right coset D_n·M, stored sorted by key.
struct Transversal {
    int n = 1;
    BigInt target_size = 1;
    bool complete = false;
    uint64_t samples = 0;
    std::vector<TransversalEntry> entries;

    size_t size() const { return entries.size(); }
    SubspaceKey key(size_t i) const { return unpack_key(entries[i].key, n); }
    SymplecticMatrix rep(size_t i) const { return SymplecticMatrix::trusted(unpack_rows(entries[i].rows, n)); }
    std::optional<SymplecticMatrix> find(const SubspaceKey &key) const;
};

struct TransversalOptions {
    uint64_t seed = 1;
    int jobs = 1;
    /// Maximum number of random samples; 0 selects 50·index·ln(index).
    uint64_t budget = 0;
    uint64_t chunk_samples = 1u << 14;
    std::function<void(uint64_t samples, size_t found)> progress;
};

uint64_t default_sample_budget(int n);

/// Coupon-collector construction. Chunk c draws from an rng seeded by (seed, c);
/// the result is the union of chunks 0..C-1 for the first C that completes the
/// transversal, keeping the smallest matrix per key. Independent of `jobs`.
Transversal build_transversal(int n, const TransversalOptions &options);

/// Adds every element of `group` to a transversal; used for exhaustive checks.
Transversal transversal_from_matrices(int n, std::span<const SymplecticMatrix> matrices);

struct CosetStats {
    size_t index = 0;
    NumericStats stats;
};

/// numeric_stats of every representative, in entry order. Throws
/// ContractViolation on an incomplete transversal.
std::vector<CosetStats> enumerate_stats(const Transversal &t, const BellDiagonalState &state, int jobs = 1);

/// Positions of the entries not strictly dominated in (p_suc, F_out), by
/// descending p_suc then descending F_out. Exact ties are all kept.
std::vector<size_t> pareto_envelope_indices(std::span<const NumericStats> entries);
std::vector<NumericStats> pareto_envelope(std::span<const NumericStats> entries);

}  // namespace bcd

#endif
