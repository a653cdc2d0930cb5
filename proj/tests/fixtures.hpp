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

// Reference codes and distributions shared by the unit and acceptance tests.

#include <string>
#include <vector>

#include "aifv/aifv.hpp"

namespace aifv::fixtures {

inline Rational q(long n, long d) { return make_rational(n, d); }

inline SourceDistribution uniform(size_t n) { return family_distribution(DistributionFamily::kUniform, n); }

inline SourceDistribution four_skewed() {  // 0.45, 0.3, 0.2, 0.05
  return make_distribution({"a", "b", "c", "d"}, {q(9, 20), q(6, 20), q(4, 20), q(1, 20)});
}

inline SourceDistribution three_skewed() {  // 0.9, 0.05, 0.05
  return make_distribution({"a", "b", "c"}, {q(9, 10), q(1, 20), q(1, 20)});
}

inline SourceDistribution four_ternary_skewed() {  // 0.8, 0.1, 0.05, 0.05
  return make_distribution({"a", "b", "c", "d"}, {q(8, 10), q(1, 10), q(1, 20), q(1, 20)});
}

// Ternary, five equiprobable symbols.
inline AifvCode ternary_five() {
  return code_from_codeword_lists(Family::ternary(), {"a", "b", "c", "d", "e"},
                                  {{{"a", "0"}, {"b", "1"}, {"c", "2"}, {"d", "10"}, {"e", "20"}},
                                   {{"a", "1"}, {"b", "10"}, {"c", "20"}, {"d", "21"}, {"e", "22"}}});
}

// Binary, 0.45 / 0.3 / 0.2 / 0.05; c is a master in both trees.
inline AifvCode binary_four() {
  return code_from_codeword_lists(Family::binary(), {"a", "b", "c", "d"},
                                  {{{"a", "0"}, {"b", "10"}, {"c", "11"}, {"d", "1100"}},
                                   {{"a", "01"}, {"b", "10"}, {"c", "11"}, {"d", "1100"}}});
}

// Binary with a master root in T0.
inline AifvCode binary_master_root() {
  return code_from_codeword_lists(Family::binary(), {"a", "b", "c"},
                                  {{{"a", ""}, {"b", "000"}, {"c", "001"}},
                                   {{"a", "1"}, {"b", "010"}, {"c", "011"}}});
}

// Ternary with a symbol on the incomplete T0 root.
inline AifvCode ternary_incomplete_root() {
  return code_from_codeword_lists(Family::ternary(), {"a", "b", "c", "d"},
                                  {{{"a", ""}, {"b", "00"}, {"c", "01"}, {"d", "02"}},
                                   {{"a", "1"}, {"b", "20"}, {"c", "21"}, {"d", "22"}}});
}

// 4-ary code with three trees, ten symbols.
inline AifvCode quaternary_ten() {
  std::vector<std::string> ab{"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
  return code_from_codeword_lists(
      Family::kary(4), ab,
      {{{"a", "0"}, {"b", "1"}, {"c", "2"}, {"d", "10"}, {"e", "20"}, {"f", "21"}, {"g", "30"}, {"h", "31"},
        {"i", "32"}, {"j", "33"}},
       {{"a", "1"}, {"b", "10"}, {"d", "11"}, {"c", "2"}, {"e", "20"}, {"f", "21"}, {"g", "30"}, {"h", "31"},
        {"i", "32"}, {"j", "33"}},
       {{"a", "2"}, {"d", "20"}, {"f", "21"}, {"b", "30"}, {"c", "31"}, {"h", "310"}, {"g", "32"}, {"e", "33"},
        {"i", "330"}, {"j", "331"}}});
}

// 4-ary code with three trees, eight symbols, symbol-bearing roots.
inline AifvCode quaternary_eight() {
  std::vector<std::string> ab{"a", "b", "c", "d", "e", "f", "g", "h"};
  return code_from_codeword_lists(
      Family::kary(4), ab,
      {{{"a", ""}, {"b", "0"}, {"c", "00"}, {"d", "10"}, {"e", "11"}, {"f", "12"}, {"g", "13"}, {"h", "130"}},
       {{"a", ""}, {"b", "10"}, {"e", "110"}, {"f", "111"}, {"g", "112"}, {"h", "113"}, {"c", "12"}, {"d", "13"}},
       {{"a", "2"}, {"b", "30"}, {"c", "31"}, {"d", "32"}, {"f", "320"}, {"e", "33"}, {"g", "330"}, {"h", "331"}}});
}

inline std::string dotted(const AifvCode& code, const std::vector<std::string>& message) {
  std::string out;
  CodewordTable table(code);
  size_t pos = 0;
  for (size_t i = 0; i < message.size(); ++i) {
    const auto& e = table.entry(pos, *code.symbol_index(message[i]));
    if (i) out += '.';
    out += e.word.empty() ? "λ" : to_string(e.word);
    pos = static_cast<size_t>(e.next_position);
  }
  return out;
}

}  // namespace aifv::fixtures
