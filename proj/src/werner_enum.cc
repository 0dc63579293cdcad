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

#include "bcdist/werner_enum.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "bcdist/errors.h"
#include "bcdist/parallel.h"
#include "bcdist/subgroups.h"

namespace bcd {
namespace {

constexpr int kMaxGraphNodes = 7;

std::vector<uint32_t> compute_graphs(int m) {
    int edges = m * (m - 1) / 2;
    uint32_t total = 1u << edges;
    if (m < 2) return {0};
    // Edge permutation induced by each adjacent transposition (k, k+1), as
    // lookup tables over 7-bit slices of the mask.
    const int slices = (edges + 6) / 7;
    std::vector<std::vector<std::array<uint32_t, 128>>> tables(m - 1, std::vector<std::array<uint32_t, 128>>(slices));
    for (int k = 0; k + 1 < m; k++) {
        std::vector<int> perm(edges);
        auto relabel = [k](int v) { return v == k ? k + 1 : (v == k + 1 ? k : v); };
        for (int j = 1; j < m; j++)
            for (int i = 0; i < j; i++) {
                int a = relabel(i), b = relabel(j);
                if (a > b) std::swap(a, b);
                perm[edge_index(i, j)] = edge_index(a, b);
            }
        for (int s = 0; s < slices; s++)
            for (uint32_t v = 0; v < 128; v++) {
                uint32_t out = 0;
                for (int t = 0; t < 7; t++) {
                    int e = 7 * s + t;
                    if (e < edges && (v >> t & 1u)) out |= 1u << perm[e];
                }
                tables[k][s][v] = out;
            }
    }
    auto permute = [&](uint32_t mask, int k) {
        uint32_t out = 0;
        for (int s = 0; s < slices; s++) out |= tables[k][s][(mask >> (7 * s)) & 127u];
        return out;
    };
    std::vector<bool> seen(total, false);
    std::vector<uint32_t> reps, stack;
    for (uint32_t g = 0; g < total; g++) {
        if (seen[g]) continue;
        reps.push_back(g);
        seen[g] = true;
        stack.push_back(g);
        while (!stack.empty()) {
            uint32_t cur = stack.back();
            stack.pop_back();
            for (int k = 0; k + 1 < m; k++) {
                uint32_t nxt = permute(cur, k);
                if (!seen[nxt]) {
                    seen[nxt] = true;
                    stack.push_back(nxt);
                }
            }
        }
    }
    return reps;
}

std::string bits_str(uint32_t v, int len) {
    std::string s;
    for (int i = 0; i < len; i++) s.push_back((v >> i & 1u) ? '1' : '0');
    return s;
}

}  // namespace

const std::vector<uint32_t> &graphs_up_to_iso(int m) {
    if (m < 0 || m > kMaxGraphNodes) throw DimensionError("graphs_up_to_iso supports 0 <= m <= 7");
    static std::mutex mu;
    static std::array<std::vector<uint32_t>, kMaxGraphNodes + 1> cache;
    static std::array<bool, kMaxGraphNodes + 1> ready{};
    std::lock_guard<std::mutex> lock(mu);
    if (!ready[m]) {
        cache[m] = compute_graphs(m);
        ready[m] = true;
    }
    return cache[m];
}

std::vector<std::pair<uint32_t, uint32_t>> ab_pairs(int m) {
    if (m < 0 || m > 15) throw DimensionError("ab_pairs supports 0 <= m <= 15");
    std::vector<std::pair<uint32_t, uint32_t>> out;
    uint32_t top = 1u << m;
    for (uint32_t a = 0; a < top; a++)
        for (uint32_t b = a; b < top; b++)
            if (b <= (a ^ b)) out.emplace_back(a, b);
    return out;
}

uint64_t count_ab_pairs(int m) {
    if (m < 0 || m > 15) throw DimensionError("count_ab_pairs supports 0 <= m <= 15");
    uint64_t count = 0;
    uint32_t top = 1u << m;
    for (uint32_t a = 0; a < top; a++)
        for (uint32_t b = a; b < top; b++) count += b <= (a ^ b);
    return count;
}

uint64_t count_ab_pairs_formula(int m) {
    uint64_t p2 = 1ull << m;
    return (p2 * p2 + 3 * p2 + 2) / 6;
}

std::string WernerCase::str() const {
    std::ostringstream os;
    os << "a=" << a << ";b=" << b << ";E=" << e;
    return os.str();
}

CaseSpace::CaseSpace(int n) : n_(n) {
    if (n < 2 || n > kMaxGraphNodes + 1) throw DimensionError("Werner enumeration supports 2 <= n <= 8");
    pairs_ = ab_pairs(n - 1);
    graphs_ = &graphs_up_to_iso(n - 1);
}

WernerCase CaseSpace::at(uint64_t index) const {
    uint64_t g = graphs_->size();
    const auto &[a, b] = pairs_[index / g];
    return WernerCase{a, b, (*graphs_)[index % g]};
}

CaseSpace enumerate_cases(int n) { return CaseSpace(n); }

SymplecticMatrix build_representative(const WernerCase &c, int n) {
    if (n < 1 || n > kMaxPairs) throw DimensionError("pair count out of range");
    int m = n - 1;
    if ((c.a >> m) || (c.b >> m) || (m >= 2 ? (c.e >> (m * (m - 1) / 2)) : c.e)) {
        throw DimensionError("case does not fit the pair count");
    }
    auto a = [&](int i) { return (c.a >> (i - 1)) & 1u; };
    auto b = [&](int i) { return (c.b >> (i - 1)) & 1u; };
    auto e = [&](int i, int j) {
        if (i == j) return 0u;
        int lo = std::min(i, j) - 1, hi = std::max(i, j) - 1;
        return (c.e >> edge_index(lo, hi)) & 1u;
    };
    BinaryMatrix mat(n);
    // Row 0: A row (1, 0..0), B row (0, bᵀ).
    uint32_t row0 = 1u;
    for (int j = 1; j < n; j++) row0 |= b(j) << (n + j);
    mat.set_row(0, row0);
    for (int i = 1; i < n; i++) {
        uint32_t row = a(i) | (1u << i) | (b(i) << n);
        for (int j = 1; j < n; j++) row |= ((e(i, j) ^ (b(i) & a(j))) & 1u) << (n + j);
        mat.set_row(i, row);
    }
    // Lower block Aᵀ.
    uint32_t d0 = 1u << n;
    for (int j = 1; j < n; j++) d0 |= a(j) << (n + j);
    mat.set_row(n, d0);
    for (int i = 1; i < n; i++) mat.set_row(n + i, 1u << (n + i));
    return SymplecticMatrix::trusted(mat);
}

std::string Protocol::source_str() const {
    if (source_case) {
        int m = n - 1;
        std::ostringstream os;
        os << "a=" << bits_str(source_case->a, m) << " b=" << bits_str(source_case->b, m)
           << " E=" << source_case->e;
        return os.str();
    }
    if (source_key) return "key=" + source_key->str();
    return "matrix";
}

Protocol make_protocol(const SymplecticMatrix &rep) {
    Protocol p;
    p.n = rep.n();
    p.rep = rep;
    p.profile = werner_profile(rep).canonical();
    p.stats = profile_stats(p.profile);
    return p;
}

ChunkResult evaluate_chunk(const CaseSpace &space, uint64_t begin, uint64_t end) {
    ChunkResult out;
    std::unordered_map<WernerProfile, size_t> where;
    for (uint64_t idx = begin; idx < end; idx++) {
        auto rep = build_representative(space.at(idx), space.n());
        auto prof = werner_profile_of_inverse(rep.inverse().matrix()).canonical();
        if (where.try_emplace(prof, out.firsts.size()).second) out.firsts.emplace_back(idx, prof);
    }
    return out;
}

DistinctResult distinct_protocols(int n, const DistinctOptions &options) {
    CaseSpace space(n);
    DistinctResult result;
    result.n = n;
    result.cases = space.size();
    const uint64_t chunk = std::max<uint64_t>(options.chunk_cases, 1);
    const uint64_t chunks = (space.size() + chunk - 1) / chunk;
    std::unordered_map<WernerProfile, uint64_t> first;
    std::vector<std::pair<uint64_t, WernerProfile>> order;
    const uint64_t wave = static_cast<uint64_t>(std::max(options.jobs, 1)) * 4;
    for (uint64_t start = 0; start < chunks; start += wave) {
        uint64_t count = std::min(wave, chunks - start);
        std::vector<ChunkResult> results(count);
        std::vector<bool> fresh(count, false);
        parallel_for(static_cast<size_t>(count), options.jobs, [&](size_t k) {
            uint64_t c = start + k;
            if (options.lookup) {
                if (auto hit = options.lookup(c)) {
                    results[k] = std::move(*hit);
                    return;
                }
            }
            results[k] = evaluate_chunk(space, c * chunk, std::min(space.size(), (c + 1) * chunk));
            fresh[k] = true;
        });
        for (uint64_t k = 0; k < count; k++) {
            if (fresh[k] && options.on_chunk) options.on_chunk(start + k, results[k]);
            for (auto &[idx, prof] : results[k].firsts) {
                if (first.try_emplace(prof, idx).second) order.emplace_back(idx, prof);
            }
        }
        if (options.progress) options.progress(start + count, chunks);
    }
    result.protocols.resize(order.size());
    parallel_for(order.size(), options.jobs, [&](size_t i) {
        auto &[idx, prof] = order[i];
        Protocol &p = result.protocols[i];
        p.n = n;
        p.source_case = space.at(idx);
        p.case_index = idx;
        p.rep = build_representative(*p.source_case, n);
        p.profile = prof;
        p.stats = profile_stats(prof);
    });
    return result;
}

std::vector<Protocol> distinct_from_matrices(int n, std::span<const SymplecticMatrix> matrices) {
    std::vector<Protocol> out;
    std::unordered_map<WernerProfile, size_t> where;
    for (size_t i = 0; i < matrices.size(); i++) {
        if (matrices[i].n() != n) throw DimensionError("matrix pair count differs from n");
        auto prof = werner_profile(matrices[i]).canonical();
        if (where.try_emplace(prof, out.size()).second) {
            Protocol p;
            p.n = n;
            p.rep = matrices[i];
            p.profile = prof;
            p.stats = profile_stats(prof);
            p.case_index = i;
            out.push_back(std::move(p));
        }
    }
    return out;
}

std::vector<GridPoint> make_grid(std::string_view lo, std::string_view hi, std::string_view step) {
    BigRational l = parse_decimal(lo), h = parse_decimal(hi), s = parse_decimal(step);
    if (s <= 0) throw InputError("grid step must be positive");
    if (h < l) throw InputError("grid upper bound below lower bound");
    std::vector<GridPoint> out;
    for (BigRational x = l; x <= h; x += s) out.push_back({x.convert_to<double>(), x});
    return out;
}

std::vector<GridPoint> default_grid() { return make_grid("0.5", "0.999", "0.001"); }

DominanceReport best_fidelity(std::span<const PolyStats> stats, std::span<const GridPoint> grid) {
    DominanceReport rep;
    if (stats.empty()) throw InputError("no protocols to compare");
    std::map<std::pair<RationalPolynomial, RationalPolynomial>, size_t> index;
    std::vector<size_t> group_of(stats.size());
    for (size_t i = 0; i < stats.size(); i++) {
        auto key = std::make_pair(stats[i].p_suc, stats[i].f_num);
        auto [it, inserted] = index.try_emplace(key, rep.groups.size());
        if (inserted) rep.groups.push_back({stats[i].p_suc, stats[i].f_num, {}});
        rep.groups[it->second].members.push_back(i);
    }
    const size_t G = rep.groups.size();
    std::vector<uint64_t> wins(G, 0);
    std::vector<bool> always(G, true);
    std::vector<double> vals(G);
    for (const auto &pt : grid) {
        double best = -1;
        for (size_t g = 0; g < G; g++) {
            double p = rep.groups[g].p_suc(pt.value);
            vals[g] = p > 0 ? rep.groups[g].f_num(pt.value) / p : -1;
            best = std::max(best, vals[g]);
        }
        // Exact comparison among the numerically close candidates.
        std::vector<size_t> cand;
        for (size_t g = 0; g < G; g++)
            if (vals[g] >= 0 && vals[g] >= best - 1e-9) cand.push_back(g);
        std::vector<BigRational> exact(cand.size());
        BigRational top = -1;
        for (size_t k = 0; k < cand.size(); k++) {
            BigRational p = eval_big(rep.groups[cand[k]].p_suc, pt.exact);
            exact[k] = p > 0 ? BigRational(eval_big(rep.groups[cand[k]].f_num, pt.exact) / p) : BigRational(-1);
            if (exact[k] > top) top = exact[k];
        }
        std::vector<bool> is_max(G, false);
        size_t winner = G;
        for (size_t k = 0; k < cand.size(); k++) {
            if (exact[k] == top) {
                is_max[cand[k]] = true;
                winner = std::min(winner, cand[k]);
            }
        }
        for (size_t g = 0; g < G; g++) always[g] = always[g] && is_max[g];
        if (winner == G) throw ContractViolation("no protocol has positive success probability");
        wins[winner]++;
        rep.winners.push_back(winner);
    }
    rep.dominant = false;
    for (size_t g = 0; g < G && !grid.empty(); g++) {
        if (always[g]) {
            rep.dominant = true;
            rep.best_group = g;
            break;
        }
    }
    if (rep.dominant) {
        std::fill(rep.winners.begin(), rep.winners.end(), rep.best_group);
    } else {
        rep.best_group = static_cast<size_t>(std::max_element(wins.begin(), wins.end()) - wins.begin());
        for (size_t i = 1; i < rep.winners.size(); i++) {
            if (rep.winners[i] != rep.winners[i - 1]) {
                rep.crossovers.push_back({grid[i - 1].value, grid[i].value, rep.winners[i - 1], rep.winners[i]});
            }
        }
    }
    rep.primary = rep.groups[rep.best_group].members.front();
    return rep;
}

DominanceReport best_fidelity_protocol(std::span<const Protocol> protocols, std::span<const GridPoint> grid) {
    std::vector<PolyStats> stats;
    stats.reserve(protocols.size());
    for (const auto &p : protocols) stats.push_back(p.stats);
    return best_fidelity(stats, grid);
}

}  // namespace bcd
