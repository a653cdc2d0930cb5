// Copyright 2026 The AIFV Authors
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

// Exact rational arithmetic. Probabilities, Kraft weights, average lengths
// and IP coefficients all live here; doubles only appear for entropies,
// bounds and reporting.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "aifv/error.hpp"

namespace aifv {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

// base^exp for exp >= 0.
inline Rational pow_int(const Rational& base, int exp) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exp));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exp));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// K^{-d}.
inline Rational inv_pow(int base, int exp) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exp));
  return Rational(mpz_class(1), den);
}

// round(x * 2^bits) / 2^bits, i.e. a dyadic approximation with error <= 2^-(bits+1)
// plus the rounding error of x itself.
inline Rational dyadic_approx(long double x, int bits) {
  long double scaled = std::ldexp(x, bits);
  long double rounded = std::floor(scaled + 0.5L);
  mpz_class num;
  // rounded fits comfortably in the 64-bit mantissa of long double for the
  // magnitudes used here (|x| < 2^20, bits <= 40).
  num = static_cast<long>(static_cast<long long>(rounded));
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "7", "-3", "9/20", "0.45", ".5", "1.25e-3". Decimals are parsed
// exactly (0.45 == 9/20).
inline Rational parse_rational(std::string_view text) {
  auto bad = [&]() -> Rational {
    fail(ErrorCode::kParse, "not a rational number: '" + std::string(text) + "'");
  };
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) return bad();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    Rational r;
    try {
      mpz_class n(num, 10), d(den, 10);
      if (d == 0) return bad();
      r = Rational(n, d);
    } catch (const std::invalid_argument&) {
      return bad();
    }
    r.canonicalize();
    return r;
  }

  size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  int frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return bad();
  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') return bad();
    std::string exp_text = s.substr(pos + 1);
    if (exp_text.empty()) return bad();
    size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      return bad();
    }
    if (used != exp_text.size() || exponent > 1000 || exponent < -1000) return bad();
  }
  mpz_class num(digits, 10);
  if (negative) num = -num;
  long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift < 0 ? Rational(num, scale) : Rational(num * scale, 1);
  r.canonicalize();
  return r;
}

}  // namespace aifv
