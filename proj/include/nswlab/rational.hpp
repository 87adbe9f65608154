// Copyright 2026 The nswlab Authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "nswlab/errors.hpp"

namespace nswlab {

using BigInt = boost::multiprecision::cpp_int;
// Always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw InputError("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

// Accepts "p" or "p/q" with an optional leading '-'. Any valid p/q is
// accepted; the result is reduced.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) {
    throw ParseError("not a rational literal: \"" + std::string(text) + "\"");
  }
  BigInt n{std::string(num)};
  BigInt d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  if (negative) n = -n;
  return Rational(n, d);
}

// "p" when the denominator is 1, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
  const BigInt& den = boost::multiprecision::denominator(r);
  std::string out = boost::multiprecision::numerator(r).str();
  if (den != 1) {
    out += '/';
    out += den.str();
  }
  return out;
}

// Natural log of a positive integer of any size.
inline double log_of(const BigInt& x) {
  if (x <= 0) return -INFINITY;
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 960) return std::log(x.convert_to<double>());
  const auto shift = bits - 900;
  const BigInt head = x >> shift;
  return std::log(head.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline double log_of(const Rational& r) {
  if (r <= 0) return -INFINITY;
  return log_of(boost::multiprecision::numerator(r)) -
         log_of(boost::multiprecision::denominator(r));
}

inline double to_double(const Rational& r) { return std::exp(log_of(r)) * (r < 0 ? -1 : 1); }

// Exact integer power; negative exponents invert.
inline Rational pow(const Rational& base, std::int64_t exponent) {
  if (exponent < 0) {
    if (base == 0) throw InputError("zero raised to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Rational result(1);
  Rational acc = base;
  auto e = static_cast<std::uint64_t>(exponent);
  while (e != 0) {
    if (e & 1U) result *= acc;
    e >>= 1U;
    if (e != 0) acc *= acc;
  }
  return result;
}

}  // namespace nswlab
