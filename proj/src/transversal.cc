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

#include "bcdist/transversal.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "bcdist/errors.h"
#include "bcdist/parallel.h"
#include "bcdist/subgroups.h"

namespace bcd {
namespace {

constexpr int kRowBits = 16;
constexpr int kMaxKeyRows = kMaxTransversalPairs;

struct PackedKeyHash {
    size_t operator()(PackedKey k) const noexcept {
        uint64_t lo = static_cast<uint64_t>(k), hi = static_cast<uint64_t>(k >> 64);
        return static_cast<size_t>(lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x632BE59BD9B4E019ull + (lo << 6)));
    }
};

void check_transversal_pairs(int n) {
    if (n < 1 || n > kMaxTransversalPairs) throw DimensionError("transversal supports 1 <= n <= 8");
}

PackedKey key_of(const SymplecticMatrix &m) { return pack_key(coset_key(m)); }

// Sorted by key, keeping the smallest rows per key.
void sort_unique(std::vector<TransversalEntry> &v) {
    std::sort(v.begin(), v.end(), [](const TransversalEntry &a, const TransversalEntry &b) {
        return a.key != b.key ? a.key < b.key : a.rows < b.rows;
    });
    v.erase(std::unique(v.begin(), v.end(),
                        [](const TransversalEntry &a, const TransversalEntry &b) { return a.key == b.key; }),
            v.end());
}

}  // namespace

PackedKey pack_key(const SubspaceKey &key) {
    if (key.basis.size() > static_cast<size_t>(kMaxKeyRows)) throw DimensionError("key too large to pack");
    PackedKey out = 0;
    for (size_t i = 0; i < key.basis.size(); i++) {
        out |= static_cast<PackedKey>(key.basis[i]) << (kRowBits * (kMaxKeyRows - 1 - i));
    }
    return out;
}

SubspaceKey unpack_key(PackedKey key, int n) {
    SubspaceKey out{n, {}};
    for (int i = 0; i < kMaxKeyRows; i++) {
        uint32_t row = static_cast<uint32_t>(key >> (kRowBits * (kMaxKeyRows - 1 - i))) & 0xFFFFu;
        if (row == 0) break;
        out.basis.push_back(row);
    }
    return out;
}

PackedRows pack_rows(const BinaryMatrix &m) {
    PackedRows out{};
    for (int i = 0; i < m.dim(); i++) out[i] = static_cast<uint16_t>(m.row(i));
    return out;
}

BinaryMatrix unpack_rows(const PackedRows &rows, int n) {
    BinaryMatrix m(n);
    for (int i = 0; i < 2 * n; i++) m.set_row(i, rows[i]);
    return m;
}

std::optional<SymplecticMatrix> Transversal::find(const SubspaceKey &k) const {
    PackedKey p = pack_key(k);
    auto it = std::lower_bound(entries.begin(), entries.end(), p,
                               [](const TransversalEntry &e, PackedKey v) { return e.key < v; });
    if (it == entries.end() || it->key != p) return std::nullopt;
    return rep(static_cast<size_t>(it - entries.begin()));
}

uint64_t default_sample_budget(int n) {
    double index = dn_index(n).convert_to<double>();
    double b = 50.0 * index * std::log(std::max(index, 2.0));
    return std::max<uint64_t>(static_cast<uint64_t>(b), 1024);
}

Transversal build_transversal(int n, const TransversalOptions &options) {
    check_transversal_pairs(n);
    Transversal t;
    t.n = n;
    t.target_size = dn_index(n);
    const size_t target = t.target_size.convert_to<size_t>();
    const uint64_t budget = options.budget ? options.budget : default_sample_budget(n);
    const uint64_t chunk = std::max<uint64_t>(options.chunk_samples, 1);
    const uint64_t num_chunks = (budget + chunk - 1) / chunk;
    const size_t wave = static_cast<size_t>(std::max(options.jobs, 1)) * 2;

    std::unordered_map<PackedKey, size_t, PackedKeyHash> where;
    uint64_t next_chunk = 0;
    while (next_chunk < num_chunks && where.size() < target) {
        size_t count = static_cast<size_t>(std::min<uint64_t>(wave, num_chunks - next_chunk));
        std::vector<std::vector<TransversalEntry>> results(count);
        parallel_for(count, options.jobs, [&](size_t k) {
            uint64_t c = next_chunk + k;
            uint64_t lo = c * chunk, hi = std::min(budget, lo + chunk);
            Rng rng = chunk_rng(options.seed, c);
            auto &out = results[k];
            out.reserve(static_cast<size_t>(hi - lo));
            for (uint64_t s = lo; s < hi; s++) {
                auto m = random_symplectic(n, rng);
                out.push_back({key_of(m), pack_rows(m.matrix())});
            }
            sort_unique(out);
        });
        for (size_t k = 0; k < count && where.size() < target; k++) {
            uint64_t c = next_chunk + k;
            t.samples = std::min(budget, (c + 1) * chunk);
            for (const auto &e : results[k]) {
                auto [it, inserted] = where.try_emplace(e.key, t.entries.size());
                if (inserted) {
                    t.entries.push_back(e);
                } else if (e.rows < t.entries[it->second].rows) {
                    t.entries[it->second].rows = e.rows;
                }
            }
            if (options.progress) options.progress(t.samples, t.entries.size());
        }
        next_chunk += count;
    }
    t.complete = t.entries.size() == target;
    sort_unique(t.entries);
    return t;
}

Transversal transversal_from_matrices(int n, std::span<const SymplecticMatrix> matrices) {
    check_transversal_pairs(n);
    Transversal t;
    t.n = n;
    t.target_size = dn_index(n);
    for (const auto &m : matrices) t.entries.push_back({key_of(m), pack_rows(m.matrix())});
    sort_unique(t.entries);
    t.samples = matrices.size();
    t.complete = BigInt(t.entries.size()) == t.target_size;
    return t;
}

std::vector<CosetStats> enumerate_stats(const Transversal &t, const BellDiagonalState &state, int jobs) {
    if (!t.complete) throw ContractViolation("transversal is incomplete");
    if (state.n != t.n) throw DimensionError("state and transversal pair counts differ");
    std::vector<CosetStats> out(t.size());
    const size_t block = 1024;
    size_t blocks = (t.size() + block - 1) / block;
    parallel_for(blocks, jobs, [&](size_t b) {
        for (size_t i = b * block; i < std::min(t.size(), (b + 1) * block); i++) {
            out[i] = {i, numeric_stats(t.rep(i), state)};
        }
    });
    return out;
}

std::vector<size_t> pareto_envelope_indices(std::span<const NumericStats> entries) {
    std::vector<size_t> order(entries.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = i;
    auto fo = [&](size_t i) { return f_out(entries[i]); };
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (entries[a].p_suc != entries[b].p_suc) return entries[a].p_suc > entries[b].p_suc;
        return fo(a) > fo(b);
    });
    std::vector<size_t> out;
    double best_higher = -1;
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        double p = entries[order[i]].p_suc, top = fo(order[i]);
        while (j < order.size() && entries[order[j]].p_suc == p) {
            if (fo(order[j]) == top && top > best_higher) out.push_back(order[j]);
            j++;
        }
        best_higher = std::max(best_higher, top);
        i = j;
    }
    return out;
}

std::vector<NumericStats> pareto_envelope(std::span<const NumericStats> entries) {
    std::vector<NumericStats> out;
    for (size_t i : pareto_envelope_indices(entries)) out.push_back(entries[i]);
    return out;
}

}  // namespace bcd
