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

#ifndef BCDIST_RATIONAL_H
#define BCDIST_RATIONAL_H

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bcd {

using Int128 = __int128;

std::string int128_to_string(Int128 v);

/// Exact rational on signed 128-bit integers, always in lowest terms with a
/// positive denominator. Every operation throws ArithmeticOverflow instead of
/// wrapping.
class Rational {
   public:
    constexpr Rational() = default;
    constexpr Rational(int64_t v) : num_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(Int128 num, Int128 den);

    Int128 num() const { return num_; }
    Int128 den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    double to_double() const;
    /// "p/q", or "p" when q = 1.
    std::string str() const;
    /// Parses "p/q" or "p".
    static Rational parse(std::string_view text);

    Rational operator+(const Rational &o) const;
    Rational operator-(const Rational &o) const;
    Rational operator*(const Rational &o) const;
    Rational operator/(const Rational &o) const;
    Rational operator-() const;
    Rational &operator+=(const Rational &o) { return *this = *this + o; }
    Rational &operator-=(const Rational &o) { return *this = *this - o; }
    Rational &operator*=(const Rational &o) { return *this = *this * o; }

    bool operator==(const Rational &o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational &o) const;

   private:
    Int128 num_ = 0;
    Int128 den_ = 1;
};

/// Univariate polynomial with exact rational coefficients; coeffs[k] multiplies x^k.
/// Trailing zero coefficients are always trimmed, so the zero polynomial has no
/// coefficients.
class RationalPolynomial {
   public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coeffs);
    static RationalPolynomial constant(const Rational &c);
    /// The polynomial x.
    static RationalPolynomial x();

    const std::vector<Rational> &coeffs() const { return coeffs_; }
    /// Degree, -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Rational coeff(int k) const;
    bool is_zero() const { return coeffs_.empty(); }

    double operator()(double x) const;
    Rational operator()(const Rational &x) const;

    /// p(1 - x), re-expanded exactly.
    RationalPolynomial reflect() const;

    RationalPolynomial operator+(const RationalPolynomial &o) const;
    RationalPolynomial operator-(const RationalPolynomial &o) const;
    RationalPolynomial operator*(const RationalPolynomial &o) const;
    RationalPolynomial operator*(const Rational &c) const;
    RationalPolynomial &operator+=(const RationalPolynomial &o) { return *this = *this + o; }

    bool operator==(const RationalPolynomial &o) const { return coeffs_ == o.coeffs_; }
    /// Coefficient-lexicographic order starting from the constant term; missing
    /// coefficients count as zero.
    std::strong_ordering operator<=>(const RationalPolynomial &o) const;

    /// Human form, highest power first, e.g. "8/9F^2-4/9F+5/9".
    std::string str(std::string_view var = "F") const;
    /// Machine form: exact coefficients from power 0 upward, separated by ';'.
    std::string coeff_str() const;
    /// Parses the machine form.
    static RationalPolynomial parse_coeffs(std::string_view text);

   private:
    void trim();
    std::vector<Rational> coeffs_;
};

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigRational to_big(const Rational &r);
/// Exact evaluation without 128-bit limits.
BigRational eval_big(const RationalPolynomial &p, const BigRational &x);
/// Exact rational value of a decimal string such as "0.930025".
BigRational parse_decimal(std::string_view text);

}  // namespace bcd

#endif
