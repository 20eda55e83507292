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

#ifndef UNSPLIT_RATIONAL_H_
#define UNSPLIT_RATIONAL_H_

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace unsplit {

// Exact arbitrary-precision rational. Always kept in canonical form
// (positive denominator, coprime numerator and denominator).
//
// Beware of `auto` with GMP expression templates: always spell out
// `Rational x = a + b;`.
using Rational = mpq_class;

// Accepts integers ("-3"), decimals ("1.25", "-.5") and fractions ("7/2").
// Returns nullopt on anything else, including a zero denominator.
std::optional<Rational> ParseRational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string FormatRational(const Rational& value);

Rational Floor(const Rational& value);
Rational Ceil(const Rational& value);
bool IsIntegral(const Rational& value);

}  // namespace unsplit

#endif  // UNSPLIT_RATIONAL_H_
