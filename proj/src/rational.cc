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

#include "bcdist/rational.h"

#include <algorithm>

#include "bcdist/errors.h"

namespace bcd {

namespace {

Int128 abs128(Int128 v) {
    return v < 0 ? -v : v;
}

Int128 gcd128(Int128 a, Int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        Int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int128 checked_mul(Int128 a, Int128 b) {
    Int128 out;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw ArithmeticOverflow("128-bit rational multiplication overflow");
    }
    return out;
}

Int128 checked_add(Int128 a, Int128 b) {
    Int128 out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw ArithmeticOverflow("128-bit rational addition overflow");
    }
    return out;
}

}  // namespace

std::string int128_to_string(Int128 v) {
    if (v == 0) {
        return "0";
    }
    bool neg = v < 0;
    // Work with negative values so the minimum does not overflow.
    if (!neg) {
        v = -v;
    }
    std::string digits;
    while (v != 0) {
        digits += static_cast<char>('0' - static_cast<int>(v % 10));
        v /= 10;
    }
    if (neg) {
        digits += '-';
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

Rational::Rational(Int128 num, Int128 den) {
    if (den == 0) {
        throw ContractViolation("rational with zero denominator");
    }
    if (den < 0) {
        num = checked_mul(num, -1);
        den = checked_mul(den, -1);
    }
    Int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
    if (den_ == 1) {
        return int128_to_string(num_);
    }
    return int128_to_string(num_) + "/" + int128_to_string(den_);
}

Rational Rational::parse(std::string_view text) {
    auto parse_int = [](std::string_view s) -> Int128 {
        if (s.empty()) {
            throw InputError("empty integer in rational");
        }
        bool neg = false;
        size_t i = 0;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) {
            throw InputError("bad integer in rational");
        }
        Int128 v = 0;
        for (; i < s.size(); i++) {
            if (s[i] < '0' || s[i] > '9') {
                throw InputError("bad digit in rational '" + std::string(s) + "'");
            }
            v = checked_add(checked_mul(v, 10), s[i] - '0');
        }
        return neg ? -v : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text), 1);
    }
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational Rational::operator+(const Rational &o) const {
    if (den_ == o.den_) {
        return Rational(checked_add(num_, o.num_), den_);
    }
    Int128 g = gcd128(den_, o.den_);
    Int128 lhs = checked_mul(num_, o.den_ / g);
    Int128 rhs = checked_mul(o.num_, den_ / g);
    return Rational(checked_add(lhs, rhs), checked_mul(den_, o.den_ / g));
}

Rational Rational::operator-(const Rational &o) const {
    return *this + (-o);
}

Rational Rational::operator*(const Rational &o) const {
    // Cross-cancel first to keep intermediates small.
    Int128 g1 = gcd128(num_, o.den_);
    Int128 g2 = gcd128(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1));
}

Rational Rational::operator/(const Rational &o) const {
    if (o.num_ == 0) {
        throw ContractViolation("rational division by zero");
    }
    return *this * Rational(o.den_, o.num_);
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = checked_mul(num_, -1);
    r.den_ = den_;
    return r;
}

std::strong_ordering Rational::operator<=>(const Rational &o) const {
    Int128 lhs = checked_mul(num_, o.den_);
    Int128 rhs = checked_mul(o.num_, den_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

RationalPolynomial RationalPolynomial::constant(const Rational &c) {
    return RationalPolynomial({c});
}

RationalPolynomial RationalPolynomial::x() {
    return RationalPolynomial({Rational(0), Rational(1)});
}

void RationalPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

Rational RationalPolynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) {
        return Rational(0);
    }
    return coeffs_[k];
}

double RationalPolynomial::operator()(double x) const {
    double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + it->to_double();
    }
    return acc;
}

Rational RationalPolynomial::operator()(const Rational &x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

RationalPolynomial RationalPolynomial::reflect() const {
    // Horner in the polynomial ring: acc <- acc * (1 - x) + c_k.
    RationalPolynomial one_minus_x({Rational(1), Rational(-1)});
    RationalPolynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * one_minus_x + constant(*it);
    }
    return acc;
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial &o) const {
    std::vector<Rational> out(std::max(coeffs_.size(), o.coeffs_.size()));
    for (size_t k = 0; k < out.size(); k++) {
        out[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
    }
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial &o) const {
    return *this + o * Rational(-1);
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial &o) const {
    if (is_zero() || o.is_zero()) {
        return {};
    }
    std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
    for (size_t i = 0; i < coeffs_.size(); i++) {
        if (coeffs_[i].is_zero()) {
            continue;
        }
        for (size_t j = 0; j < o.coeffs_.size(); j++) {
            out[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::operator*(const Rational &c) const {
    std::vector<Rational> out(coeffs_);
    for (auto &v : out) {
        v *= c;
    }
    return RationalPolynomial(std::move(out));
}

std::strong_ordering RationalPolynomial::operator<=>(const RationalPolynomial &o) const {
    size_t len = std::max(coeffs_.size(), o.coeffs_.size());
    for (size_t k = 0; k < len; k++) {
        auto c = coeff(static_cast<int>(k)) <=> o.coeff(static_cast<int>(k));
        if (c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

std::string RationalPolynomial::str(std::string_view var) const {
    if (coeffs_.empty()) {
        return "0";
    }
    std::string out;
    for (int k = degree(); k >= 0; k--) {
        const Rational &c = coeffs_[k];
        if (c.is_zero()) {
            continue;
        }
        bool neg = c.num() < 0;
        Rational mag = neg ? -c : c;
        if (!out.empty()) {
            out += neg ? "-" : "+";
        } else if (neg) {
            out += "-";
        }
        bool unit = mag == Rational(1);
        if (!unit || k == 0) {
            out += mag.str();
        }
        if (k >= 1) {
            out += var;
        }
        if (k >= 2) {
            out += "^" + std::to_string(k);
        }
    }
    return out;
}

std::string RationalPolynomial::coeff_str() const {
    std::string out;
    for (size_t k = 0; k < coeffs_.size(); k++) {
        if (k) {
            out += ";";
        }
        out += coeffs_[k].str();
    }
    return out.empty() ? "0" : out;
}

RationalPolynomial RationalPolynomial::parse_coeffs(std::string_view text) {
    std::vector<Rational> coeffs;
    if (text.empty() || text == "0") return RationalPolynomial();
    size_t start = 0;
    while (true) {
        size_t end = text.find(';', start);
        coeffs.push_back(Rational::parse(text.substr(start, end == std::string_view::npos ? end : end - start)));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return RationalPolynomial(std::move(coeffs));
}

namespace {

BigInt big_of(Int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt out = static_cast<uint64_t>(u >> 64);
    out <<= 64;
    out += static_cast<uint64_t>(u);
    return neg ? BigInt(-out) : out;
}

}  // namespace

BigRational to_big(const Rational &r) { return BigRational(big_of(r.num()), big_of(r.den())); }

BigRational eval_big(const RationalPolynomial &p, const BigRational &x) {
    BigRational acc = 0;
    const auto &c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + to_big(*it);
    return acc;
}

BigRational parse_decimal(std::string_view text) {
    std::string s(text);
    bool neg = !s.empty() && s[0] == '-';
    if (neg || (!s.empty() && s[0] == '+')) s = s.substr(1);
    size_t dot = s.find('.');
    std::string digits = dot == std::string::npos ? s : s.substr(0, dot) + s.substr(dot + 1);
    size_t scale = dot == std::string::npos ? 0 : s.size() - dot - 1;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw InputError("bad decimal '" + std::string(text) + "'");
    }
    // cpp_int reads a leading zero as an octal prefix.
    size_t nz = digits.find_first_not_of('0');
    BigInt num(nz == std::string::npos ? std::string("0") : digits.substr(nz));
    BigInt den = 1;
    for (size_t k = 0; k < scale; k++) den *= 10;
    BigRational out(num, den);
    return neg ? BigRational(-out) : out;
}

}  // namespace bcd
