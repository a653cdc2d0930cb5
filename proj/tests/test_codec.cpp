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

#include <gtest/gtest.h>

#include <random>

#include "aifv/aifv.hpp"
#include "fixtures.hpp"

namespace aifv {
namespace {

std::vector<std::string> chars(const std::string& s) { return char_labels(s); }

std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += s;
  return out;
}

std::string decode_text(const AifvCode& code, const std::string& bits, size_t n, DecodeStats* st = nullptr) {
  return joined(labels_of(code, decode(code, parse_codeword(bits), n, st)));
}

TEST(CodewordTable, ReferenceTables) {
  auto f1 = fixtures::ternary_five();
  CodewordTable t(f1);
  const char* t1[] = {"1", "10", "20", "21", "22"};
  for (int s = 0; s < 5; ++s) EXPECT_EQ(to_string(t.entry(1, s).word), t1[s]);
  auto f8 = fixtures::ternary_incomplete_root();
  CodewordTable t8(f8);
  EXPECT_TRUE(t8.entry(0, 0).word.empty());
  EXPECT_EQ(t8.entry(0, 0).next_tree, 1);
  EXPECT_EQ(to_string(t8.entry(0, 3).word), "02");
}

TEST(Encode, ReferenceSequences) {
  auto f1 = fixtures::ternary_five();
  EXPECT_EQ(fixtures::dotted(f1, chars("cdebac")), "2.21.20.1.1.20");
  EXPECT_EQ(to_string(encode(f1, chars("cdebac")).stream), "221201120");
  auto f6 = fixtures::binary_four();
  EXPECT_EQ(fixtures::dotted(f6, chars("cadbca")), "11.01.1100.10.11.01");
  EXPECT_EQ(fixtures::dotted(f6, chars("cbcaab")), "11.10.11.01.0.10");
  auto f9 = fixtures::binary_master_root();
  EXPECT_EQ(fixtures::dotted(f9, chars("aaab")), "λ.1.λ.010");
  EXPECT_EQ(to_string(encode(f9, chars("aaab")).stream), "1010");
  auto f8 = fixtures::ternary_incomplete_root();
  EXPECT_EQ(fixtures::dotted(f8, chars("aabaaacd")), "λ.1.00.λ.1.λ.21.02");
  EXPECT_THROW(encode(f1, chars("cz")), Error);
}

TEST(Decode, ReferenceSequences) {
  auto f1 = fixtures::ternary_five();
  EXPECT_EQ(decode_text(f1, "10020", 3), "dae");
  EXPECT_EQ(decode_text(f1, "1120", 3), "bac");
  EXPECT_EQ(decode_text(f1, "221201120", 6), "cdebac");
  auto f6 = fixtures::binary_four();
  EXPECT_EQ(decode_text(f6, "11011100101101", 6), "cadbca");
  EXPECT_EQ(decode_text(f6, "11101101010", 6), "cbcaab");
  auto f9 = fixtures::binary_master_root();
  EXPECT_EQ(decode_text(f9, "1010", 4), "aaab");
  auto f8 = fixtures::ternary_incomplete_root();
  EXPECT_EQ(decode_text(f8, "10012102", 8), "aabaaacd");
}

TEST(Decode, Errors) {
  auto f1 = fixtures::ternary_five();
  auto bad = [&](const std::string& bits, size_t n) {
    try {
      decode(f1, parse_codeword(bits), n);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParse;
  };
  EXPECT_EQ(bad("22", 3), ErrorCode::kTruncatedStream);
  EXPECT_EQ(bad("221201120", 5), ErrorCode::kCorruptStream);
  // After the root symbol of T0, T1 has no codeword starting with 00.
  auto f9 = fixtures::binary_master_root();
  EXPECT_THROW(
      {
        try {
          decode(f9, parse_codeword("0100"), 2);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::kCorruptStream);
          throw;
        }
      },
      Error);
}

TEST(Transitions, FourAryTenSymbols) {
  auto code = fixtures::quaternary_ten();
  auto msg = chars("abacgcebbd");
  EXPECT_EQ(fixtures::dotted(code, msg), "0.1.1.31.30.2.33.30.1.11");
  auto trace = transition_trace(code, msg);
  std::vector<int> children, trees;
  for (const auto& s : trace) {
    children.push_back(s.children);
    trees.push_back(s.tree);
  }
  EXPECT_EQ(children, (std::vector<int>{0, 1, 2, 1, 0, 2, 2, 0, 1, 0}));
  EXPECT_EQ(trees, (std::vector<int>{0, 0, 1, 2, 1, 0, 2, 2, 0, 1}));
  DecodeStats st;
  auto stream = encode(code, msg).stream;
  EXPECT_EQ(labels_of(code, decode(code, stream, msg.size(), &st)), msg);
  EXPECT_EQ(st.trace, trees);
  EXPECT_LE(st.max_rewind, 1);
}

TEST(Transitions, FourAryEightSymbols) {
  auto code = fixtures::quaternary_eight();
  auto msg = chars("badbacgaec");
  EXPECT_EQ(fixtures::dotted(code, msg), "0.λ.32.10.λ.31.13.λ.33.31");
  auto stream = encode(code, msg).stream;
  EXPECT_EQ(labels_of(code, decode(code, stream, msg.size())), msg);
}

TEST(Transitions, BinaryTrace) {
  auto trace = transition_trace(fixtures::binary_four(), chars("cadbca"));
  std::vector<int> trees;
  for (const auto& s : trace) trees.push_back(s.tree);
  EXPECT_EQ(trees, (std::vector<int>{0, 1, 0, 0, 0, 1}));
  auto plain = code_from_codeword_lists(Family::binary(), {"a", "b", "c", "d"},
                                        {{{"a", "00"}, {"b", "01"}, {"c", "10"}, {"d", "11"}},
                                         {{"a", "01"}, {"b", "10"}, {"c", "110"}, {"d", "111"}}});
  for (const auto& s : transition_trace(plain, chars("abcdabcd"))) EXPECT_EQ(s.tree, 0);
  EXPECT_EQ(to_string(encode(plain, chars("dcba")).stream), "11100100");
}

// Codes produced by the optimizer on random sources, plus the fixtures.
std::vector<std::pair<AifvCode, SourceDistribution>> corpus() {
  std::vector<std::pair<AifvCode, SourceDistribution>> out;
  std::mt19937_64 rng(7);
  for (const auto& family : {Family::binary(), Family::ternary(), Family::kary_two_tree(4, 2),
                             Family::kary_two_tree(5, 1)}) {
    for (int n : {2, 3, 5, 8, 12}) {
      std::vector<std::string> labels;
      std::vector<Rational> probs;
      long total = 0;
      std::vector<long> w;
      for (int t = 0; t < n; ++t) {
        w.push_back(1 + static_cast<long>(rng() % 40));
        total += w.back();
      }
      for (int t = 0; t < n; ++t) {
        labels.push_back(default_label(static_cast<size_t>(t)));
        probs.push_back(make_rational(w[static_cast<size_t>(t)], total));
      }
      auto dist = make_distribution(labels, probs);
      OptimizeOptions o;
      o.allow_full_depth = true;
      out.emplace_back(optimize(dist, family, o).code, dist);
    }
  }
  out.emplace_back(fixtures::ternary_five(), fixtures::uniform(5));
  out.emplace_back(fixtures::binary_four(), fixtures::four_skewed());
  out.emplace_back(fixtures::binary_master_root(), fixtures::three_skewed());
  out.emplace_back(fixtures::ternary_incomplete_root(), fixtures::four_ternary_skewed());
  return out;
}

TEST(Codec, RandomRoundTripsAndDelayBound) {
  auto codes = corpus();
  std::mt19937_64 rng(2026);
  int cases = 0;
  for (int rep = 0; cases < 10000; ++rep) {
    for (const auto& [code, dist] : codes) {
      const int n = static_cast<int>(code.alphabet().size());
      const size_t len = rng() % 201;
      std::vector<int> msg(len);
      for (auto& s : msg) s = static_cast<int>(rng() % static_cast<uint64_t>(n));
      auto enc = encode(code, msg);
      DecodeStats st;
      auto back = decode(code, enc.stream, msg.size(), &st);
      ASSERT_EQ(back, msg);
      ASSERT_EQ(st.trace, enc.trace);
      ASSERT_LE(st.max_rewind, code.family().delay_bound());
      for (int r : st.rewinds) ASSERT_LE(r, code.family().delay_bound());
      ++cases;
    }
  }
  EXPECT_GE(cases, 10000);
}

TEST(Codec, DecoderObjectIsReusable) {
  Decoder dec(fixtures::ternary_five());
  EXPECT_EQ(dec.decode(parse_codeword("10020"), 3), (std::vector<int>{3, 0, 4}));
  EXPECT_EQ(dec.decode(parse_codeword("1120"), 3), (std::vector<int>{1, 0, 2}));
}

}  // namespace
}  // namespace aifv
