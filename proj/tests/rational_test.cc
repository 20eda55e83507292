// Copyright 2026 The Unsplit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unsplit/rational.h"

#include <optional>

#include "gtest/gtest.h"

namespace unsplit {
namespace {

TEST(RationalTest, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(ParseRational("7"), Rational(7));
  EXPECT_EQ(ParseRational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(ParseRational("0.25"), Rational(1, 4));
  EXPECT_EQ(ParseRational("-1.5"), Rational(-3, 2));
}

TEST(RationalTest, RejectsMalformedText) {
  EXPECT_EQ(ParseRational(""), std::nullopt);
  EXPECT_EQ(ParseRational("1/0"), std::nullopt);
  EXPECT_EQ(ParseRational("abc"), std::nullopt);
  EXPECT_EQ(ParseRational("1/2/3"), std::nullopt);
}

TEST(RationalTest, FormatsInLowestTerms) {
  EXPECT_EQ(FormatRational(Rational(6) / 4), "3/2");
  EXPECT_EQ(FormatRational(Rational(-8) / 4), "-2");
  EXPECT_EQ(FormatRational(Rational(0)), "0");
}

TEST(RationalTest, FormatThenParseIsIdentity) {
  for (int num = -12; num <= 12; ++num) {
    for (int den = 1; den <= 7; ++den) {
      const Rational value = Rational(num) / den;
      EXPECT_EQ(ParseRational(FormatRational(Rational(value))), Rational(value));
    }
  }
}

TEST(RationalTest, FloorAndCeilMatchIntegerDivision) {
  for (int num = -20; num <= 20; ++num) {
    for (int den = 1; den <= 6; ++den) {
      Rational value(num, den);
      value.canonicalize();
      // Reference floor division on plain ints.
      int floor = num / den;
      if (num % den != 0 && num < 0) --floor;
      const int ceil = num % den == 0 ? num / den : floor + 1;
      EXPECT_EQ(Floor(value), Rational(floor)) << num << "/" << den;
      EXPECT_EQ(Ceil(value), Rational(ceil)) << num << "/" << den;
      EXPECT_EQ(IsIntegral(value), num % den == 0);
    }
  }
}

}  // namespace
}  // namespace unsplit
