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

#ifndef BCDIST_PAULI_STATE_H
#define BCDIST_PAULI_STATE_H

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bcdist/gf2.h"
#include "bcdist/rational.h"

namespace bcd {

/// Bell-coefficient order used for single pairs everywhere: (p_I, p_X, p_Y, p_Z).
using BellVector = std::array<double, 4>;

/// Bits (x, z) of the Pauli at position `index` of a BellVector.
constexpr uint32_t bell_index_x(int index) { return index == 1 || index == 2; }
constexpr uint32_t bell_index_z(int index) { return index == 2 || index == 3; }

/// n Bell-diagonal pairs described by 4^n probabilities indexed by PauliVector bits.
struct BellDiagonalState {
    int n = 1;
    std::vector<double> probs;

    static BellDiagonalState product(std::span<const BellVector> pairs);
    static BellDiagonalState werner(int n, double fidelity);
    /// Throws InputError unless the entries are nonnegative and sum to 1 within
    /// 1e-12; with `renormalize` the sum only has to be positive.
    static BellDiagonalState from_probs(int n, std::vector<double> probs, bool renormalize = false);

    double operator[](uint32_t bits) const { return probs[bits]; }
};

/// Pauli strings I⊗Q₂⊗…⊗Qₙ with Q ∈ {I, Z}.
std::vector<PauliVector> base(int n);
/// Pauli strings P₁⊗Q₂⊗…⊗Qₙ with Q ∈ {I, Z}; the symplectic complement of the base.
std::vector<PauliVector> pillars(int n);

/// Success probability, unnormalised fidelity and the three other unnormalised
/// output coefficients. fi_nums is kept sorted in descending order.
template <typename T>
struct DistStats {
    T p_suc{};
    T f_num{};
    std::array<T, 3> fi_nums{};

    bool operator==(const DistStats &) const = default;
};

using NumericStats = DistStats<double>;
using PolyStats = DistStats<RationalPolynomial>;

inline double f_out(const NumericStats &s) {
    return s.p_suc > 0 ? s.f_num / s.p_suc : 0.0;
}
/// Output Bell vector (F, F₁, F₂, F₃) normalised by p_suc; zeros if p_suc = 0.
BellVector output_vector(const NumericStats &s);

/// The four preimage cosets M⁻¹[𝓑 + o] for o = 0, e₁, e₁+e_{n+1}, e_{n+1}:
/// the base preimage span plus one offset per coset.
struct PreimageCosets {
    int n = 1;
    std::vector<uint32_t> base_span;
    std::array<uint32_t, 4> offsets{};
};

PreimageCosets preimage_cosets(const SymplecticMatrix &m);

/// Unsorted probability mass of the four cosets (I, X, Y, Z order).
BellVector coset_sums(const SymplecticMatrix &m, const BellDiagonalState &state);
NumericStats numeric_stats(const SymplecticMatrix &m, const BellDiagonalState &state);

/// For each of the four cosets, how many preimage vectors act as identity on
/// exactly w qubits. Werner statistics are a fixed linear image of this.
struct WernerProfile {
    int n = 1;
    std::array<std::array<uint32_t, kMaxPairs + 1>, 4> counts{};

    /// Same profile with the three non-fidelity cosets sorted (descending).
    WernerProfile canonical() const;
    bool operator==(const WernerProfile &) const = default;
    auto operator<=>(const WernerProfile &) const = default;
};

WernerProfile werner_profile(const SymplecticMatrix &m);
/// Hot-loop entry point taking M⁻¹ directly.
WernerProfile werner_profile_of_inverse(const BinaryMatrix &inverse);

/// Σ_w counts[w] Fʷ ((1-F)/3)^{n-w} as an exact polynomial in F.
RationalPolynomial werner_weight_polynomial(std::span<const uint32_t> counts, int n);
PolyStats profile_stats(const WernerProfile &profile);
/// Direct double evaluation of a profile at input fidelity F.
NumericStats profile_numeric(const WernerProfile &profile, double fidelity);
PolyStats werner_stats(const SymplecticMatrix &m, int n);

/// Sorts fi_nums descending (numeric by value, polynomials coefficient-lexicographically).
void canonicalize(NumericStats &s);
void canonicalize(PolyStats &s);

/// Re-expresses a polynomial in F as a polynomial in ε = 1 - F.
RationalPolynomial stats_in_epsilon(const RationalPolynomial &p);

/// F_out = 1 - coefficient·ε^order + O(ε^{order+1}). order = -1 when F_out ≡ 1.
struct LeadingTerm {
    int order = -1;
    Rational coefficient;
};
LeadingTerm leading_infidelity_term(const PolyStats &stats);

}  // namespace bcd

template <>
struct std::hash<bcd::WernerProfile> {
    size_t operator()(const bcd::WernerProfile &p) const noexcept {
        uint64_t h = 1469598103934665603ull;
        for (const auto &row : p.counts) {
            for (int w = 0; w <= p.n; w++) {
                h = (h ^ row[w]) * 1099511628211ull;
            }
        }
        return static_cast<size_t>(h);
    }
};

#endif
