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

#ifndef BCDIST_GF2_H
#define BCDIST_GF2_H

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bcd {

using BigInt = boost::multiprecision::cpp_int;
using Rng = std::mt19937_64;

inline constexpr int kMaxPairs = 16;

/// Mask of the low `bits` bits of a word.
constexpr uint32_t low_mask(int bits) {
    return bits >= 32 ? 0xFFFFFFFFu : ((1u << bits) - 1u);
}

/// Parity of a word over F2.
constexpr uint32_t parity(uint32_t w) {
    return static_cast<uint32_t>(std::popcount(w) & 1);
}

/// A phase-free Pauli string on n qubits as a vector in F2^{2n}.
///
/// Coordinate k (1-based) lives at bit k-1. Coordinates 1..n hold the X parts of
/// qubits 1..n, coordinates n+1..2n the Z parts. Read as an unsigned integer,
/// coordinate 1 is the least significant bit.
struct PauliVector {
    uint32_t bits = 0;
    int n = 1;

    PauliVector() = default;
    PauliVector(uint32_t bits, int n);

    /// Standard basis vector e_k, 1 <= k <= 2n.
    static PauliVector unit(int k, int n);
    /// Parses a string like "XIZY" (one letter per qubit, qubit 1 first).
    static PauliVector from_string(std::string_view paulis);

    bool x(int qubit) const { return (bits >> (qubit - 1)) & 1u; }
    bool z(int qubit) const { return (bits >> (n + qubit - 1)) & 1u; }
    /// Number of qubits on which the string acts as identity.
    int identity_count() const;

    std::string str() const;

    PauliVector operator^(const PauliVector &other) const;
    bool operator==(const PauliVector &) const = default;
};

/// Symplectic form vᵀΩw with Ω = [[0, I],[I, 0]]; 1 iff the strings anti-commute.
uint32_t symplectic_inner(const PauliVector &v, const PauliVector &w);

/// Same as `symplectic_inner` on raw words; no dimension check.
inline uint32_t symplectic_inner_raw(uint32_t v, uint32_t w, int n) {
    uint32_t lo = low_mask(n);
    return parity(((v & lo) & (w >> n)) ^ ((v >> n) & (w & lo)));
}

/// Dense 2n x 2n matrix over F2, one word per row.
///
/// Row i (0-based) is rows[i]; bit j of that word is the entry in column j.
class BinaryMatrix {
   public:
    BinaryMatrix() = default;
    explicit BinaryMatrix(int n);
    BinaryMatrix(int n, std::span<const uint32_t> rows);

    static BinaryMatrix identity(int n);

    int n() const { return n_; }
    int dim() const { return 2 * n_; }

    bool get(int row, int col) const { return (rows_[row] >> col) & 1u; }
    void set(int row, int col, bool value);
    uint32_t row(int i) const { return rows_[i]; }
    void set_row(int i, uint32_t value);
    /// Column j as a word (bit i = entry (i, j)).
    uint32_t col(int j) const;
    std::span<const uint32_t> rows() const { return {rows_.data(), static_cast<size_t>(dim())}; }

    /// Matrix-vector product on a raw word.
    uint32_t apply(uint32_t v) const;
    PauliVector apply(const PauliVector &v) const;

    BinaryMatrix transpose() const;
    BinaryMatrix operator*(const BinaryMatrix &rhs) const;
    bool operator==(const BinaryMatrix &other) const;
    /// Lexicographic order on the row words.
    bool operator<(const BinaryMatrix &other) const;
    bool is_identity() const;

    // Elementary row operations used by gate images.
    void swap_rows(int a, int b) { std::swap(rows_[a], rows_[b]); }
    void add_row(int src, int dst) { rows_[dst] ^= rows_[src]; }

    std::string str() const;

   private:
    int n_ = 0;
    std::array<uint32_t, 2 * kMaxPairs> rows_{};
};

/// 2n x 2n matrix satisfying MᵀΩM = Ω; a bilocal Clifford protocol modulo Paulis.
class SymplecticMatrix {
   public:
    SymplecticMatrix() = default;
    /// Validates the symplectic condition; throws ContractViolation otherwise.
    explicit SymplecticMatrix(const BinaryMatrix &m);

    static SymplecticMatrix identity(int n);
    /// Skips validation. Only for matrices symplectic by construction.
    static SymplecticMatrix trusted(const BinaryMatrix &m);

    int n() const { return m_.n(); }
    const BinaryMatrix &matrix() const { return m_; }
    uint32_t apply(uint32_t v) const { return m_.apply(v); }
    PauliVector apply(const PauliVector &v) const { return m_.apply(v); }

    /// Inverse by the block formula [[Dᵀ, Bᵀ],[Cᵀ, Aᵀ]].
    SymplecticMatrix inverse() const;
    SymplecticMatrix operator*(const SymplecticMatrix &rhs) const;
    bool operator==(const SymplecticMatrix &other) const { return m_ == other.m_; }
    bool operator<(const SymplecticMatrix &other) const { return m_ < other.m_; }

   private:
    BinaryMatrix m_;
};

bool is_symplectic(const BinaryMatrix &m);
/// Throws ContractViolation when `m` is not symplectic.
SymplecticMatrix symplectic_inverse(const BinaryMatrix &m);

/// Independent generator for work item `chunk` of a run seeded with `seed`.
Rng chunk_rng(uint64_t seed, uint64_t chunk);

/// Uniform element of Sp(2n, F2) via sequential symplectic-basis completion.
SymplecticMatrix random_symplectic(int n, Rng &rng);

/// |Sp(2n, F2)| = 2^{n²} ∏_{j=1}^{n} (4^j - 1).
BigInt sp_order(int n);

/// Canonical basis of a subspace of F2^{2n}: reduced row-echelon form with
/// strictly decreasing pivots (pivot = highest set bit).
struct SubspaceKey {
    int n = 1;
    std::vector<uint32_t> basis;

    size_t dimension() const { return basis.size(); }
    /// All 2^dim elements of the span, in Gray-code order starting with 0.
    std::vector<uint32_t> span() const;
    std::string str() const;

    bool operator==(const SubspaceKey &) const = default;
    auto operator<=>(const SubspaceKey &) const = default;
};

SubspaceKey subspace_key(std::span<const PauliVector> vectors);
SubspaceKey subspace_key_raw(std::span<const uint32_t> vectors, int n);

enum class GateKind : uint8_t { H, S, X, CNOT, CZ, SWAP };

std::string_view gate_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);
bool is_two_qubit(GateKind kind);

/// A Clifford generator acting on 1-based qubit indices.
///
/// For CNOT, qubits[0] is the control and qubits[1] the target.
struct Gate {
    GateKind kind = GateKind::H;
    std::array<int, 2> qubits{1, 0};

    static Gate h(int q) { return {GateKind::H, {q, 0}}; }
    static Gate s(int q) { return {GateKind::S, {q, 0}}; }
    static Gate x(int q) { return {GateKind::X, {q, 0}}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}}; }
    static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}}; }
    static Gate swap(int a, int b) { return {GateKind::SWAP, {a, b}}; }

    int arity() const { return is_two_qubit(kind) ? 2 : 1; }
    /// Throws DimensionError unless all indices lie in [1, n] (and differ).
    void validate(int n) const;
    std::string str() const;

    bool operator==(const Gate &other) const;
};

/// Left-multiplies `m` by the symplectic image of `g` (a row operation).
void apply_gate_rows(BinaryMatrix &m, const Gate &g);
/// Symplectic image of a single gate on n qubits.
SymplecticMatrix gate_matrix(const Gate &g, int n);

}  // namespace bcd

template <>
struct std::hash<bcd::SubspaceKey> {
    size_t operator()(const bcd::SubspaceKey &k) const noexcept {
        uint64_t h = 0x9E3779B97F4A7C15ull ^ static_cast<uint64_t>(k.n);
        for (uint32_t b : k.basis) {
            h ^= b + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        }
        return static_cast<size_t>(h);
    }
};

template <>
struct std::hash<bcd::BinaryMatrix> {
    size_t operator()(const bcd::BinaryMatrix &m) const noexcept {
        uint64_t h = 1469598103934665603ull;
        for (uint32_t r : m.rows()) {
            h = (h ^ r) * 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

#endif
