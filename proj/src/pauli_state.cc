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

#include "bcdist/pauli_state.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>

#include "bcdist/errors.h"

namespace bcd {

namespace {

void check_pairs(int n) {
    if (n < 1 || n > kMaxPairs) {
        throw DimensionError("pair count must lie in [1, 16], got " + std::to_string(n));
    }
}

constexpr double kNormTolerance = 1e-12;

// Non-identity positions of a raw vector.
inline int support(uint32_t v, int n, uint32_t lo) {
    return std::popcount((v | (v >> n)) & lo);
}

}  // namespace

BellDiagonalState BellDiagonalState::product(std::span<const BellVector> pairs) {
    int n = static_cast<int>(pairs.size());
    check_pairs(n);
    if (n > 12) {
        throw DimensionError("dense Bell-diagonal states are limited to 12 pairs");
    }
    for (const auto &p : pairs) {
        double sum = 0;
        for (double v : p) {
            if (v < 0) {
                throw InputError("negative Bell coefficient");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kNormTolerance) {
            throw InputError("pair coefficients must sum to 1");
        }
    }
    BellDiagonalState s;
    s.n = n;
    s.probs.assign(size_t{1} << (2 * n), 0.0);
    for (uint32_t bits = 0; bits < s.probs.size(); bits++) {
        double p = 1;
        for (int q = 0; q < n; q++) {
            uint32_t x = (bits >> q) & 1u;
            uint32_t z = (bits >> (n + q)) & 1u;
            int idx = x ? (z ? 2 : 1) : (z ? 3 : 0);
            p *= pairs[q][idx];
        }
        s.probs[bits] = p;
    }
    return s;
}

BellDiagonalState BellDiagonalState::werner(int n, double fidelity) {
    double q = (1 - fidelity) / 3;
    std::vector<BellVector> pairs(static_cast<size_t>(n), BellVector{fidelity, q, q, q});
    return product(pairs);
}

BellDiagonalState BellDiagonalState::from_probs(int n, std::vector<double> probs, bool renormalize) {
    check_pairs(n);
    if (probs.size() != (size_t{1} << (2 * n))) {
        throw InputError("expected 4^n probabilities");
    }
    double sum = 0;
    for (double v : probs) {
        if (!(v >= 0)) {
            throw InputError("probabilities must be nonnegative");
        }
        sum += v;
    }
    if (renormalize) {
        if (!(sum > 0)) {
            throw InputError("cannot renormalise an all-zero state");
        }
        for (double &v : probs) {
            v /= sum;
        }
    } else if (std::abs(sum - 1.0) > kNormTolerance) {
        throw InputError("probabilities must sum to 1 (pass renormalize to rescale)");
    }
    return BellDiagonalState{n, std::move(probs)};
}

std::vector<PauliVector> base(int n) {
    check_pairs(n);
    std::vector<PauliVector> out;
    // Free coordinates: Z parts of qubits 2..n, i.e. bits n+1 .. 2n-1.
    for (uint32_t k = 0; k < (1u << (n - 1)); k++) {
        out.emplace_back(k << (n + 1), n);
    }
    return out;
}

std::vector<PauliVector> pillars(int n) {
    check_pairs(n);
    std::vector<PauliVector> out;
    // Free coordinates: X and Z of qubit 1 plus Z parts of qubits 2..n.
    for (uint32_t k = 0; k < (1u << (n + 1)); k++) {
        uint32_t bits = (k & 1u) | ((k >> 1) << n);
        out.emplace_back(bits, n);
    }
    return out;
}

BellVector output_vector(const NumericStats &s) {
    if (!(s.p_suc > 0)) {
        return {0, 0, 0, 0};
    }
    return {s.f_num / s.p_suc, s.fi_nums[0] / s.p_suc, s.fi_nums[1] / s.p_suc, s.fi_nums[2] / s.p_suc};
}

PreimageCosets preimage_cosets(const SymplecticMatrix &m) {
    int n = m.n();
    BinaryMatrix inv = m.inverse().matrix();
    PreimageCosets out;
    out.n = n;
    std::vector<uint32_t> gens;
    for (int j = n + 1; j < 2 * n; j++) {
        gens.push_back(inv.col(j));
    }
    out.base_span.reserve(size_t{1} << gens.size());
    uint32_t cur = 0;
    out.base_span.push_back(0);
    for (uint32_t i = 1; i < (1u << gens.size()); i++) {
        cur ^= gens[std::countr_zero(i)];
        out.base_span.push_back(cur);
    }
    uint32_t cx = inv.col(0);
    uint32_t cz = inv.col(n);
    out.offsets = {0, cx, cx ^ cz, cz};
    return out;
}

BellVector coset_sums(const SymplecticMatrix &m, const BellDiagonalState &state) {
    if (state.n != m.n()) {
        throw DimensionError("numeric_stats: state and matrix pair counts differ");
    }
    PreimageCosets cosets = preimage_cosets(m);
    BellVector sums{0, 0, 0, 0};
    for (int k = 0; k < 4; k++) {
        double acc = 0;
        for (uint32_t u : cosets.base_span) {
            acc += state[u ^ cosets.offsets[k]];
        }
        sums[k] = acc;
    }
    return sums;
}

void canonicalize(NumericStats &s) {
    std::sort(s.fi_nums.begin(), s.fi_nums.end(), std::greater<>());
}

void canonicalize(PolyStats &s) {
    std::sort(s.fi_nums.begin(), s.fi_nums.end(), std::greater<>());
}

NumericStats numeric_stats(const SymplecticMatrix &m, const BellDiagonalState &state) {
    BellVector sums = coset_sums(m, state);
    NumericStats s;
    s.f_num = sums[0];
    s.fi_nums = {sums[1], sums[2], sums[3]};
    s.p_suc = sums[0] + sums[1] + sums[2] + sums[3];
    canonicalize(s);
    return s;
}

WernerProfile WernerProfile::canonical() const {
    WernerProfile out = *this;
    std::sort(out.counts.begin() + 1, out.counts.end(), std::greater<>());
    return out;
}

WernerProfile werner_profile_of_inverse(const BinaryMatrix &inv) {
    int n = inv.n();
    uint32_t lo = low_mask(n);
    std::array<uint32_t, kMaxPairs> gens{};
    int g = 0;
    for (int j = n + 1; j < 2 * n; j++) {
        gens[g++] = inv.col(j);
    }
    uint32_t cx = inv.col(0);
    uint32_t cz = inv.col(n);
    uint32_t cy = cx ^ cz;

    WernerProfile prof;
    prof.n = n;
    auto &c0 = prof.counts[0];
    auto &c1 = prof.counts[1];
    auto &c2 = prof.counts[2];
    auto &c3 = prof.counts[3];
    uint32_t cur = 0;
    uint32_t total = 1u << g;
    for (uint32_t i = 0;;) {
        c0[n - support(cur, n, lo)]++;
        c1[n - support(cur ^ cx, n, lo)]++;
        c2[n - support(cur ^ cy, n, lo)]++;
        c3[n - support(cur ^ cz, n, lo)]++;
        if (++i == total) {
            break;
        }
        cur ^= gens[std::countr_zero(i)];
    }
    return prof;
}

WernerProfile werner_profile(const SymplecticMatrix &m) {
    return werner_profile_of_inverse(m.inverse().matrix());
}

namespace {

// Fʷ ((1-F)/3)^{n-w}, memoised per (n, w).
const RationalPolynomial &weight_monomial(int n, int w) {
    static std::mutex mu;
    static std::vector<std::vector<RationalPolynomial>> table;
    std::lock_guard<std::mutex> lock(mu);
    if (table.empty()) {
        table.resize(kMaxPairs + 1);
        RationalPolynomial e({Rational(1, 3), Rational(-1, 3)});
        for (int nn = 1; nn <= kMaxPairs; nn++) {
            for (int ww = 0; ww <= nn; ww++) {
                RationalPolynomial p = RationalPolynomial::constant(1);
                for (int k = 0; k < ww; k++) {
                    p = p * RationalPolynomial::x();
                }
                for (int k = 0; k < nn - ww; k++) {
                    p = p * e;
                }
                table[nn].push_back(p);
            }
        }
    }
    return table[n][w];
}

}  // namespace

RationalPolynomial werner_weight_polynomial(std::span<const uint32_t> counts, int n) {
    check_pairs(n);
    RationalPolynomial acc;
    for (int w = 0; w <= n; w++) {
        if (counts[w] != 0) {
            acc += weight_monomial(n, w) * Rational(static_cast<int64_t>(counts[w]));
        }
    }
    return acc;
}

PolyStats profile_stats(const WernerProfile &profile) {
    PolyStats s;
    std::array<RationalPolynomial, 4> parts;
    for (int k = 0; k < 4; k++) {
        parts[k] = werner_weight_polynomial(profile.counts[k], profile.n);
    }
    s.f_num = parts[0];
    s.fi_nums = {parts[1], parts[2], parts[3]};
    s.p_suc = parts[0] + parts[1] + parts[2] + parts[3];
    canonicalize(s);
    return s;
}

NumericStats profile_numeric(const WernerProfile &profile, double fidelity) {
    int n = profile.n;
    double q = (1 - fidelity) / 3;
    std::array<double, kMaxPairs + 1> mono{};
    for (int w = 0; w <= n; w++) {
        mono[w] = std::pow(fidelity, w) * std::pow(q, n - w);
    }
    std::array<double, 4> parts{};
    for (int k = 0; k < 4; k++) {
        double acc = 0;
        for (int w = 0; w <= n; w++) {
            acc += profile.counts[k][w] * mono[w];
        }
        parts[k] = acc;
    }
    NumericStats s;
    s.f_num = parts[0];
    s.fi_nums = {parts[1], parts[2], parts[3]};
    s.p_suc = parts[0] + parts[1] + parts[2] + parts[3];
    canonicalize(s);
    return s;
}

PolyStats werner_stats(const SymplecticMatrix &m, int n) {
    if (m.n() != n) {
        throw DimensionError("werner_stats: matrix pair count differs from n");
    }
    return profile_stats(werner_profile(m));
}

RationalPolynomial stats_in_epsilon(const RationalPolynomial &p) {
    return p.reflect();
}

LeadingTerm leading_infidelity_term(const PolyStats &stats) {
    if (stats.p_suc(Rational(1)) != Rational(1)) {
        throw ContractViolation("leading_infidelity_term: p_suc(1) must equal 1");
    }
    if (stats.f_num(Rational(1)) != Rational(1)) {
        throw ContractViolation("leading_infidelity_term: f_num(1) must equal 1");
    }
    // 1 - F_out = (p_suc - f_num) / p_suc and p_suc = 1 + O(ε), so the first
    // nonzero term of p_suc - f_num in ε is the leading correction.
    RationalPolynomial diff = stats_in_epsilon(stats.p_suc - stats.f_num);
    for (int k = 0; k <= diff.degree(); k++) {
        if (!diff.coeff(k).is_zero()) {
            return LeadingTerm{k, diff.coeff(k)};
        }
    }
    return LeadingTerm{};
}

}  // namespace bcd
