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

using fixtures::q;

SourceDistribution random_dist(std::mt19937_64& rng, size_t n) {
  std::uniform_int_distribution<long> w(1, 60);
  std::vector<Rational> p;
  Rational total = 0;
  for (size_t i = 0; i < n; ++i) {
    p.push_back(Rational(w(rng)));
    total += p.back();
  }
  std::vector<std::string> labels;
  for (size_t i = 0; i < n; ++i) {
    p[i] /= total;
    labels.push_back("s" + std::to_string(i));
  }
  return make_distribution(labels, p);
}

TEST(Huffman, KnownLengths) {
  EXPECT_EQ(huffman_length(fixtures::uniform(5), 3), q(8, 5));
  EXPECT_EQ(huffman_length(fixtures::uniform(4), 3), q(3, 2));
  EXPECT_EQ(huffman_length(fixtures::four_ternary_skewed(), 3), q(11, 10));
  EXPECT_EQ(huffman_length(fixtures::four_skewed(), 2), q(9, 5));
  EXPECT_EQ(huffman_length(fixtures::uniform(5), 2), q(12, 5));
  EXPECT_EQ(huffman_length(fixtures::uniform(8), 2), 3);
}

TEST(Huffman, TreeIsCompleteAndConsistent) {
  std::mt19937_64 rng(3);
  for (int K : {2, 3, 4, 5}) {
    for (size_t n : {2, 3, 4, 7, 11, 16}) {
      auto d = random_dist(rng, n);
      auto h = build_huffman(d, K);
      EXPECT_EQ(h.tree.tree_index(), 0);
      EXPECT_EQ(h.tree.alphabet_size(), static_cast<int>(n));
      Rational L = 0, kraft = 0;
      for (size_t t = 0; t < n; ++t) {
        auto w = h.tree.path(h.tree.symbol_node(static_cast<int>(t)));
        EXPECT_EQ(static_cast<int>(w.size()), h.depths[t]);
        EXPECT_EQ(h.tree.node(h.tree.symbol_node(static_cast<int>(t))).kind, NodeKind::kLeaf);
        L += d.prob(t) * static_cast<long>(w.size());
        kraft += inv_pow(K, h.depths[t]);
      }
      EXPECT_EQ(L, h.average_length);
      EXPECT_LE(kraft, 1);
      if (K == 2) {
        EXPECT_EQ(kraft, 1);
      }
    }
  }
}

TEST(Huffman, Errors) {
  auto one = make_distribution({"a"}, {Rational(1)});
  try {
    huffman_length(one, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyAlphabet);
  }
  try {
    huffman_length(fixtures::uniform(3), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadArity);
  }
}

TEST(Product, PairDistribution) {
  auto d = product_distribution(fixtures::four_skewed());
  ASSERT_EQ(d.size(), 16u);
  EXPECT_EQ(d.prob(0), q(2025, 10000));
  EXPECT_EQ(d.prob(1), q(9, 20) * q(6, 20));
  Rational total = 0;
  for (size_t i = 0; i < d.size(); ++i) total += d.prob(i);
  EXPECT_EQ(total, 1);
  EXPECT_EQ(huffman_pair_rate(fixtures::uniform(4), 3), q(43, 32));
  EXPECT_EQ(huffman_pair_rate(fixtures::four_skewed(), 2), q(1393, 800));
  try {
    product_distribution(fixtures::uniform(65));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
  }
  EXPECT_EQ(product_distribution(fixtures::uniform(65), 65 * 65).size(), 65u * 65u);
}

TEST(Huffman, MatchesLengthProgram) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    size_t n = 2 + rep % 7;
    auto d = random_dist(rng, n);
    auto ip = build_ip_huffman_binary(d, static_cast<int>(n) - 1);
    auto sol = solve_exact(ip);
    ASSERT_EQ(sol.status, SolveStatus::kOptimal);
    EXPECT_EQ(sol.objective, huffman_length(d, 2)) << "n=" << n;
    auto tree = solution_to_tree(sol, ip);
    EXPECT_EQ(tree_stats(tree, d).L, sol.objective);
  }
}

TEST(Huffman, AifvNeverWorse) {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 12; ++rep) {
    size_t n = 2 + rep % 4;
    auto d = random_dist(rng, n);
    EXPECT_LE(brute_force_pair(d, Family::binary(), 4).L, huffman_length(d, 2));
    EXPECT_LE(brute_force_pair(d, Family::ternary(), 3).L, huffman_length(d, 3));
  }
}

}  // namespace
}  // namespace aifv
