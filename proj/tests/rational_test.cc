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

#include "gtest/gtest.h"

#include "bcdist/errors.h"

using namespace bcd;

TEST(rational, normalization) {
    Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(Rational(4, 2).str(), "2");
    EXPECT_EQ(Rational(0, -7), Rational(0));
    EXPECT_THROW(Rational(1, 0), ContractViolation);
}

TEST(rational, arithmetic) {
    Rational a(1, 3), b(1, 6);
    EXPECT_EQ(a + b, Rational(1, 2));
    EXPECT_EQ(a - b, Rational(1, 6));
    EXPECT_EQ(a * b, Rational(1, 18));
    EXPECT_EQ(a / b, Rational(2));
    EXPECT_EQ(-a, Rational(-1, 3));
    EXPECT_LT(b, a);
    EXPECT_DOUBLE_EQ(Rational(5, 9).to_double(), 5.0 / 9.0);
}

TEST(rational, parse_round_trip) {
    for (const char *s : {"0", "-272/243", "10/9", "7"}) EXPECT_EQ(Rational::parse(s).str(), s);
    EXPECT_EQ(Rational::parse("4/6"), Rational(2, 3));
    EXPECT_THROW(Rational::parse("x/3"), InputError);
    EXPECT_THROW(Rational::parse(""), InputError);
}

TEST(rational, overflow_detected) {
    Rational big(Int128(1) << 100, 1);
    EXPECT_THROW(big * big, ArithmeticOverflow);
    Rational odd(1, (Int128(1) << 100) + 1);
    EXPECT_THROW(odd + Rational(1, (Int128(1) << 100) - 1), ArithmeticOverflow);
}

TEST(polynomial, trim_and_degree) {
    RationalPolynomial p({Rational(1), Rational(0), Rational(0)});
    EXPECT_EQ(p.degree(), 0);
    EXPECT_TRUE(RationalPolynomial({Rational(0)}).is_zero());
    EXPECT_EQ(RationalPolynomial().degree(), -1);
}

TEST(polynomial, reflect_table_row) {
    // 8/9F^2 - 4/9F + 5/9 written in ε = 1 - F.
    RationalPolynomial p({Rational(5, 9), Rational(-4, 9), Rational(8, 9)});
    RationalPolynomial e = p.reflect();
    EXPECT_EQ(e, RationalPolynomial({Rational(1), Rational(-4, 3), Rational(8, 9)}));
    EXPECT_EQ(e.reflect(), p);
    EXPECT_EQ(RationalPolynomial::constant(Rational(3, 7)).reflect(), RationalPolynomial::constant(Rational(3, 7)));
}

TEST(polynomial, evaluation_and_ops) {
    RationalPolynomial p({Rational(5, 9), Rational(-4, 9), Rational(8, 9)});
    EXPECT_NEAR(p(0.7), 0.68, 1e-15);
    EXPECT_EQ(p(Rational(7, 10)), Rational(17, 25));
    auto x = RationalPolynomial::x();
    EXPECT_EQ(x * x - x * x, RationalPolynomial());
    EXPECT_EQ((x + RationalPolynomial::constant(1)) * (x - RationalPolynomial::constant(1)),
              RationalPolynomial({Rational(-1), Rational(0), Rational(1)}));
    EXPECT_EQ(p * Rational(9), RationalPolynomial({Rational(5), Rational(-4), Rational(8)}));
}

TEST(polynomial, formatting) {
    RationalPolynomial p({Rational(5, 9), Rational(-4, 9), Rational(8, 9)});
    EXPECT_EQ(p.str(), "8/9F^2-4/9F+5/9");
    EXPECT_EQ(p.coeff_str(), "5/9;-4/9;8/9");
    EXPECT_EQ(RationalPolynomial().str(), "0");
    EXPECT_EQ(RationalPolynomial::x().str("e"), "e");
}

TEST(polynomial, ordering) {
    RationalPolynomial a({Rational(1), Rational(2)}), b({Rational(1), Rational(3)}), c({Rational(1)});
    EXPECT_LT(a, b);
    EXPECT_LT(c, a);
    EXPECT_EQ(a <=> a, std::strong_ordering::equal);
}
