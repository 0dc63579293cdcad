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

#include "bcdist/gf2.h"

#include <algorithm>
#include <sstream>

#include "bcdist/errors.h"

namespace bcd {

namespace {

void check_pairs(int n) {
    if (n < 1 || n > kMaxPairs) {
        throw DimensionError("pair count must lie in [1, 16], got " + std::to_string(n));
    }
}

uint32_t swap_halves(uint32_t v, int n) {
    uint32_t lo = low_mask(n);
    return ((v & lo) << n) | ((v >> n) & lo);
}

}  // namespace

PauliVector::PauliVector(uint32_t bits, int n) : bits(bits), n(n) {
    check_pairs(n);
    if ((bits & ~low_mask(2 * n)) != 0) {
        throw DimensionError("PauliVector has bits set beyond position 2n");
    }
}

PauliVector PauliVector::unit(int k, int n) {
    check_pairs(n);
    if (k < 1 || k > 2 * n) {
        throw DimensionError("unit vector index out of range");
    }
    return PauliVector(1u << (k - 1), n);
}

PauliVector PauliVector::from_string(std::string_view paulis) {
    int n = static_cast<int>(paulis.size());
    check_pairs(n);
    uint32_t bits = 0;
    for (int q = 0; q < n; q++) {
        bool x = false;
        bool z = false;
        switch (paulis[q]) {
            case 'I': case '_': break;
            case 'X': x = true; break;
            case 'Y': x = z = true; break;
            case 'Z': z = true; break;
            default: throw InputError("bad Pauli character '" + std::string(1, paulis[q]) + "'");
        }
        bits |= (uint32_t{x} << q) | (uint32_t{z} << (n + q));
    }
    return PauliVector(bits, n);
}

int PauliVector::identity_count() const {
    uint32_t lo = low_mask(n);
    return n - std::popcount((bits | (bits >> n)) & lo);
}

std::string PauliVector::str() const {
    std::string out;
    for (int q = 1; q <= n; q++) {
        out += "IXZY"[x(q) + 2 * z(q)];
    }
    return out;
}

PauliVector PauliVector::operator^(const PauliVector &other) const {
    if (n != other.n) {
        throw DimensionError("PauliVector pair counts differ");
    }
    return PauliVector(bits ^ other.bits, n);
}

uint32_t symplectic_inner(const PauliVector &v, const PauliVector &w) {
    if (v.n != w.n) {
        throw DimensionError("symplectic_inner: pair counts differ");
    }
    return symplectic_inner_raw(v.bits, w.bits, v.n);
}

BinaryMatrix::BinaryMatrix(int n) : n_(n) {
    check_pairs(n);
}

BinaryMatrix::BinaryMatrix(int n, std::span<const uint32_t> rows) : n_(n) {
    check_pairs(n);
    if (rows.size() != static_cast<size_t>(2 * n)) {
        throw DimensionError("BinaryMatrix needs exactly 2n rows");
    }
    uint32_t mask = low_mask(2 * n);
    for (size_t i = 0; i < rows.size(); i++) {
        if (rows[i] & ~mask) {
            throw DimensionError("BinaryMatrix row has bits beyond column 2n");
        }
        rows_[i] = rows[i];
    }
}

BinaryMatrix BinaryMatrix::identity(int n) {
    BinaryMatrix m(n);
    for (int i = 0; i < 2 * n; i++) {
        m.rows_[i] = 1u << i;
    }
    return m;
}

void BinaryMatrix::set(int row, int col, bool value) {
    uint32_t bit = 1u << col;
    rows_[row] = value ? (rows_[row] | bit) : (rows_[row] & ~bit);
}

void BinaryMatrix::set_row(int i, uint32_t value) {
    rows_[i] = value & low_mask(dim());
}

uint32_t BinaryMatrix::col(int j) const {
    uint32_t c = 0;
    for (int i = 0; i < dim(); i++) {
        c |= ((rows_[i] >> j) & 1u) << i;
    }
    return c;
}

uint32_t BinaryMatrix::apply(uint32_t v) const {
    uint32_t out = 0;
    for (int i = 0; i < dim(); i++) {
        out |= parity(rows_[i] & v) << i;
    }
    return out;
}

PauliVector BinaryMatrix::apply(const PauliVector &v) const {
    if (v.n != n_) {
        throw DimensionError("matrix-vector product: pair counts differ");
    }
    return PauliVector(apply(v.bits), n_);
}

BinaryMatrix BinaryMatrix::transpose() const {
    BinaryMatrix t(n_);
    for (int j = 0; j < dim(); j++) {
        t.rows_[j] = col(j);
    }
    return t;
}

BinaryMatrix BinaryMatrix::operator*(const BinaryMatrix &rhs) const {
    if (n_ != rhs.n_) {
        throw DimensionError("matrix product: pair counts differ");
    }
    // Row i of the product is the XOR of rhs rows selected by row i of lhs.
    BinaryMatrix out(n_);
    for (int i = 0; i < dim(); i++) {
        uint32_t acc = 0;
        for (uint32_t r = rows_[i]; r; r &= r - 1) {
            acc ^= rhs.rows_[std::countr_zero(r)];
        }
        out.rows_[i] = acc;
    }
    return out;
}

bool BinaryMatrix::operator==(const BinaryMatrix &other) const {
    return n_ == other.n_ && std::equal(rows().begin(), rows().end(), other.rows().begin());
}

bool BinaryMatrix::operator<(const BinaryMatrix &other) const {
    if (n_ != other.n_) {
        return n_ < other.n_;
    }
    auto a = rows();
    auto b = other.rows();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool BinaryMatrix::is_identity() const {
    for (int i = 0; i < dim(); i++) {
        if (rows_[i] != (1u << i)) {
            return false;
        }
    }
    return true;
}

std::string BinaryMatrix::str() const {
    std::ostringstream out;
    for (int i = 0; i < dim(); i++) {
        if (i == n_) {
            out << std::string(2 * n_ + 1, '-') << '\n';
        }
        for (int j = 0; j < dim(); j++) {
            if (j == n_) {
                out << '|';
            }
            out << (get(i, j) ? '1' : '.');
        }
        out << '\n';
    }
    return out.str();
}

bool is_symplectic(const BinaryMatrix &m) {
    int n = m.n();
    if (n < 1) {
        return false;
    }
    // MᵀΩM = Ω means the columns form a symplectic basis:
    // ω(col a, col b) = 1 iff {a, b} = {k, n+k}.
    std::array<uint32_t, 2 * kMaxPairs> cols{};
    for (int j = 0; j < 2 * n; j++) {
        cols[j] = m.col(j);
    }
    for (int a = 0; a < 2 * n; a++) {
        for (int b = a; b < 2 * n; b++) {
            uint32_t expected = (b == a + n) ? 1u : 0u;
            if (symplectic_inner_raw(cols[a], cols[b], n) != expected) {
                return false;
            }
        }
    }
    return true;
}

SymplecticMatrix::SymplecticMatrix(const BinaryMatrix &m) : m_(m) {
    if (!is_symplectic(m)) {
        throw ContractViolation("matrix is not symplectic");
    }
}

SymplecticMatrix SymplecticMatrix::identity(int n) {
    return trusted(BinaryMatrix::identity(n));
}

SymplecticMatrix SymplecticMatrix::trusted(const BinaryMatrix &m) {
    SymplecticMatrix s;
    s.m_ = m;
    return s;
}

SymplecticMatrix SymplecticMatrix::inverse() const {
    // M⁻¹ = Ω Mᵀ Ω: swap the row halves and the column halves of the transpose.
    int n = m_.n();
    BinaryMatrix t = m_.transpose();
    BinaryMatrix inv(n);
    for (int i = 0; i < 2 * n; i++) {
        int src = i < n ? i + n : i - n;
        inv.set_row(i, swap_halves(t.row(src), n));
    }
    return trusted(inv);
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix &rhs) const {
    return trusted(m_ * rhs.m_);
}

SymplecticMatrix symplectic_inverse(const BinaryMatrix &m) {
    return SymplecticMatrix(m).inverse();
}

Rng chunk_rng(uint64_t seed, uint64_t chunk) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(chunk),
                      static_cast<uint32_t>(chunk >> 32)};
    return Rng(seq);
}

SymplecticMatrix random_symplectic(int n, Rng &rng) {
    check_pairs(n);
    uint32_t mask = low_mask(2 * n);
    std::array<uint32_t, kMaxPairs> us{};
    std::array<uint32_t, kMaxPairs> ws{};

    // Projection onto the symplectic complement of the pairs fixed so far.
    // It is linear with equal-size fibres, so it maps uniform to uniform.
    auto project = [&](uint32_t r, int fixed) {
        uint32_t out = r;
        for (int i = 0; i < fixed; i++) {
            if (symplectic_inner_raw(r, ws[i], n)) {
                out ^= us[i];
            }
            if (symplectic_inner_raw(r, us[i], n)) {
                out ^= ws[i];
            }
        }
        return out;
    };

    for (int k = 0; k < n; k++) {
        uint32_t u;
        do {
            u = project(static_cast<uint32_t>(rng()) & mask, k);
        } while (u == 0);
        uint32_t w;
        do {
            w = project(static_cast<uint32_t>(rng()) & mask, k);
        } while (symplectic_inner_raw(u, w, n) == 0);
        us[k] = u;
        ws[k] = w;
    }

    BinaryMatrix cols(n);
    for (int k = 0; k < n; k++) {
        cols.set_row(k, us[k]);
        cols.set_row(n + k, ws[k]);
    }
    return SymplecticMatrix::trusted(cols.transpose());
}

BigInt sp_order(int n) {
    if (n < 1) {
        throw DimensionError("sp_order: n must be positive");
    }
    BigInt result = 1;
    result <<= (n * n);
    BigInt four_j = 1;
    for (int j = 1; j <= n; j++) {
        four_j *= 4;
        result *= (four_j - 1);
    }
    return result;
}

std::vector<uint32_t> SubspaceKey::span() const {
    std::vector<uint32_t> out;
    out.reserve(size_t{1} << basis.size());
    uint32_t cur = 0;
    out.push_back(cur);
    for (uint32_t i = 1; i < (1u << basis.size()); i++) {
        cur ^= basis[std::countr_zero(i)];
        out.push_back(cur);
    }
    return out;
}

std::string SubspaceKey::str() const {
    std::string out = "[";
    for (size_t i = 0; i < basis.size(); i++) {
        if (i) {
            out += ",";
        }
        out += PauliVector(basis[i], n).str();
    }
    return out + "]";
}

SubspaceKey subspace_key_raw(std::span<const uint32_t> vectors, int n) {
    check_pairs(n);
    std::vector<uint32_t> rows;
    for (uint32_t v : vectors) {
        for (uint32_t r : rows) {
            uint32_t pivot = std::bit_floor(r);
            if (v & pivot) {
                v ^= r;
            }
        }
        if (v == 0) {
            continue;
        }
        uint32_t pivot = std::bit_floor(v);
        for (uint32_t &r : rows) {
            if (r & pivot) {
                r ^= v;
            }
        }
        rows.push_back(v);
    }
    std::sort(rows.begin(), rows.end(), std::greater<>());
    return SubspaceKey{n, std::move(rows)};
}

SubspaceKey subspace_key(std::span<const PauliVector> vectors) {
    if (vectors.empty()) {
        return SubspaceKey{1, {}};
    }
    int n = vectors.front().n;
    std::vector<uint32_t> raw;
    raw.reserve(vectors.size());
    for (const auto &v : vectors) {
        if (v.n != n) {
            throw DimensionError("subspace_key: vectors have different pair counts");
        }
        raw.push_back(v.bits);
    }
    return subspace_key_raw(raw, n);
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::X: return "X";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::SWAP: return "SWAP";
    }
    return "?";
}

GateKind gate_kind_from_name(std::string_view name) {
    for (GateKind k : {GateKind::H, GateKind::S, GateKind::X, GateKind::CNOT, GateKind::CZ, GateKind::SWAP}) {
        if (gate_name(k) == name) {
            return k;
        }
    }
    throw InputError("unknown gate '" + std::string(name) + "'");
}

bool is_two_qubit(GateKind kind) {
    return kind == GateKind::CNOT || kind == GateKind::CZ || kind == GateKind::SWAP;
}

void Gate::validate(int n) const {
    for (int k = 0; k < arity(); k++) {
        if (qubits[k] < 1 || qubits[k] > n) {
            throw DimensionError("gate " + str() + " has a qubit index outside [1, " + std::to_string(n) + "]");
        }
    }
    if (arity() == 2 && qubits[0] == qubits[1]) {
        throw DimensionError("gate " + str() + " needs two distinct qubits");
    }
}

std::string Gate::str() const {
    std::string out(gate_name(kind));
    out += "_" + std::to_string(qubits[0]);
    if (arity() == 2) {
        out += "," + std::to_string(qubits[1]);
    }
    return out;
}

bool Gate::operator==(const Gate &other) const {
    return kind == other.kind && qubits[0] == other.qubits[0] && (arity() == 1 || qubits[1] == other.qubits[1]);
}

void apply_gate_rows(BinaryMatrix &m, const Gate &g) {
    int n = m.n();
    g.validate(n);
    int i = g.qubits[0] - 1;
    int j = g.qubits[1] - 1;
    switch (g.kind) {
        case GateKind::H:
            m.swap_rows(i, n + i);
            break;
        case GateKind::S:
            m.add_row(i, n + i);
            break;
        case GateKind::X:
            break;
        case GateKind::CNOT:
            m.add_row(i, j);
            m.add_row(n + j, n + i);
            break;
        case GateKind::CZ:
            m.add_row(i, n + j);
            m.add_row(j, n + i);
            break;
        case GateKind::SWAP:
            m.swap_rows(i, j);
            m.swap_rows(n + i, n + j);
            break;
    }
}

SymplecticMatrix gate_matrix(const Gate &g, int n) {
    BinaryMatrix m = BinaryMatrix::identity(n);
    apply_gate_rows(m, g);
    return SymplecticMatrix::trusted(m);
}

}  // namespace bcd
