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

#ifndef BCDIST_WERNER_ENUM_H
#define BCDIST_WERNER_ENUM_H

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bcdist/gf2.h"
#include "bcdist/pauli_state.h"
#include "bcdist/rational.h"

namespace bcd {

/// Bit of the edge {i, j} (0-based, i < j) in a graph bitmask.
constexpr int edge_index(int i, int j) { return j * (j - 1) / 2 + i; }

/// One canonical (minimum) edge bitmask per isomorphism class of graphs on m
/// labelled nodes, ascending. Supports 0 <= m <= 7.
const std::vector<uint32_t> &graphs_up_to_iso(int m);

/// (a, b) pairs over F2^m with a <= b <= a^b as unsigned integers, ascending.
std::vector<std::pair<uint32_t, uint32_t>> ab_pairs(int m);
/// Direct count of `ab_pairs(m)`.
uint64_t count_ab_pairs(int m);
/// (4^m + 3·2^m + 2) / 6.
uint64_t count_ab_pairs_formula(int m);

/// A triple (a, b, E) of the canonical form. Bit i-1 of a (or b) is its entry i.
struct WernerCase {
    uint32_t a = 0;
    uint32_t b = 0;
    uint32_t e = 0;
    bool operator==(const WernerCase &) const = default;
    std::string str() const;
};

/// The case stream for n pairs: pairs ascending, then graphs ascending.
/// Case index = pair_index · graphs + graph_index.
class CaseSpace {
   public:
    explicit CaseSpace(int n);
    int n() const { return n_; }
    uint64_t size() const { return static_cast<uint64_t>(pairs_.size()) * graphs_->size(); }
    WernerCase at(uint64_t index) const;
    size_t pair_count() const { return pairs_.size(); }
    size_t graph_count() const { return graphs_->size(); }

   private:
    int n_;
    std::vector<std::pair<uint32_t, uint32_t>> pairs_;
    const std::vector<uint32_t> *graphs_;
};

CaseSpace enumerate_cases(int n);

/// M' = [[A, B], [0, Aᵀ]] with A = [[1, 0], [a, I]] and B = [[0, bᵀ], [b, E + b aᵀ]].
SymplecticMatrix build_representative(const WernerCase &c, int n);

/// A distillation protocol with its exact Werner statistics.
struct Protocol {
    int n = 1;
    SymplecticMatrix rep;
    PolyStats stats;
    /// Canonical Werner profile (fi cosets sorted).
    WernerProfile profile;
    std::optional<WernerCase> source_case;
    uint64_t case_index = 0;
    std::optional<SubspaceKey> source_key;

    std::string source_str() const;
};

Protocol make_protocol(const SymplecticMatrix &rep);

/// First case index of every canonical profile within one chunk of the stream.
struct ChunkResult {
    std::vector<std::pair<uint64_t, WernerProfile>> firsts;
};

ChunkResult evaluate_chunk(const CaseSpace &space, uint64_t begin, uint64_t end);

struct DistinctOptions {
    int jobs = 1;
    uint64_t chunk_cases = 1u << 14;
    std::function<void(uint64_t chunks_done, uint64_t chunks_total)> progress;
    /// Returns a previously journaled chunk, if any.
    std::function<std::optional<ChunkResult>(uint64_t chunk)> lookup;
    /// Called once per freshly computed chunk, in chunk order.
    std::function<void(uint64_t chunk, const ChunkResult &)> on_chunk;
};

struct DistinctResult {
    int n = 2;
    uint64_t cases = 0;
    std::vector<Protocol> protocols;
};

/// Evaluates every case and keeps one protocol per distinct canonical
/// statistics, the first in case order. Independent of `jobs`.
DistinctResult distinct_protocols(int n, const DistinctOptions &options = {});

/// Deduplicates arbitrary matrices by Werner statistics, first occurrence kept.
std::vector<Protocol> distinct_from_matrices(int n, std::span<const SymplecticMatrix> matrices);

/// A fidelity grid point with its exact value.
struct GridPoint {
    double value = 0;
    BigRational exact;
};

/// lo, lo + step, ... up to hi inclusive, all parsed exactly from decimals.
std::vector<GridPoint> make_grid(std::string_view lo, std::string_view hi, std::string_view step);
std::vector<GridPoint> default_grid();

/// Protocols with identical (p_suc, f_num).
struct StatsGroup {
    RationalPolynomial p_suc;
    RationalPolynomial f_num;
    std::vector<size_t> members;
};

struct Crossover {
    double f_before = 0;
    double f_after = 0;
    size_t from_group = 0;
    size_t to_group = 0;
};

struct DominanceReport {
    std::vector<StatsGroup> groups;
    /// Argmax group per grid point: the dominant group when there is one, else
    /// the smallest group index among the exact maxima.
    std::vector<size_t> winners;
    std::vector<Crossover> crossovers;
    bool dominant = false;
    /// Dominant group, or the group winning most grid points.
    size_t best_group = 0;
    /// Smallest-index member of `best_group`.
    size_t primary = 0;
};

/// Pointwise F_out maximisation over `stats` on `grid`, compared exactly.
DominanceReport best_fidelity(std::span<const PolyStats> stats, std::span<const GridPoint> grid);
DominanceReport best_fidelity_protocol(std::span<const Protocol> protocols, std::span<const GridPoint> grid);

}  // namespace bcd

#endif
