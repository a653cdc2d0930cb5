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

#include <algorithm>
#include <queue>
#include <string>
#include <vector>

#include "aifv/code_tree.hpp"
#include "aifv/distribution.hpp"
#include "aifv/rational.hpp"
#include "aifv/tree_builder.hpp"

namespace aifv {

struct HuffmanCode {
  CodeTree tree;               // only leaves and complete nodes; tree index 0
  std::vector<int> depths;     // codeword length per symbol
  Rational average_length;
};

// Codeword lengths of the K-ary Huffman code. Zero-probability dummies pad
// the alphabet to n = 1 (mod K-1); ties merge the lower first-symbol index
// first.
inline std::vector<int> huffman_depths(const std::vector<Rational>& probs, int K, int* dummies_out = nullptr,
                                       std::vector<int>* dummy_depths = nullptr) {
  if (K < 2) fail(ErrorCode::kBadArity, "Huffman codes need K >= 2");
  const int n = static_cast<int>(probs.size());
  if (n < 2) fail(ErrorCode::kEmptyAlphabet, "Huffman codes need at least two symbols");
  int dummies = 0;
  while ((n + dummies - 1) % (K - 1) != 0) ++dummies;
  if (dummies_out) *dummies_out = dummies;

  struct Item {
    Rational p;
    int first;                 // smallest member index, dummies after real symbols
    std::vector<int> members;  // leaf ids; >= n are dummies
  };
  auto worse = [](const Item& a, const Item& b) {
    if (a.p != b.p) return a.p > b.p;
    return a.first > b.first;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(worse)> heap(worse);
  for (int t = 0; t < n; ++t) heap.push({probs[t], t, {t}});
  for (int d = 0; d < dummies; ++d) heap.push({Rational(0), n + d, {n + d}});
  std::vector<int> depth(static_cast<size_t>(n + dummies), 0);
  while (heap.size() > 1) {
    Item merged{Rational(0), n + dummies, {}};
    for (int i = 0; i < K; ++i) {
      Item it = heap.top();
      heap.pop();
      merged.p += it.p;
      merged.first = std::min(merged.first, it.first);
      for (int m : it.members) {
        ++depth[m];
        merged.members.push_back(m);
      }
    }
    heap.push(std::move(merged));
  }
  if (dummy_depths) dummy_depths->assign(depth.begin() + n, depth.end());
  depth.resize(static_cast<size_t>(n));
  return depth;
}

inline HuffmanCode build_huffman(const SourceDistribution& dist, int K) {
  if (dist.size() < 2) fail(ErrorCode::kEmptyAlphabet, "Huffman codes need at least two symbols");
  std::vector<int> dummy_depths;
  auto depths = huffman_depths(dist.probs(), K, nullptr, &dummy_depths);
  LevelPlan plan;
  plan.family = K == 2 ? Family::binary() : Family::kary(K);
  plan.tree_index = 0;
  plan.alphabet_size = static_cast<int>(dist.size());
  int max_depth = *std::max_element(depths.begin(), depths.end());
  plan.resize(max_depth);
  for (int t = 0; t < static_cast<int>(depths.size()); ++t) plan.leaves[depths[t]].push_back(t);
  for (int d : dummy_depths) plan.pruned[d] += 1;
  HuffmanCode out;
  out.tree = build_from_levels(plan);
  out.depths = depths;
  out.average_length = 0;
  for (size_t t = 0; t < depths.size(); ++t) out.average_length += dist.prob(t) * depths[t];
  return out;
}

inline Rational huffman_length(const SourceDistribution& dist, int K) { return build_huffman(dist, K).average_length; }

inline constexpr size_t kDefaultProductCap = 4096;

// i.i.d. pairs (s, t) in row-major order, labelled "(s,t)".
inline SourceDistribution product_distribution(const SourceDistribution& dist, size_t cap = kDefaultProductCap) {
  const size_t n = dist.size();
  if (n * n > cap) {
    fail(ErrorCode::kCapExceeded, std::to_string(n * n) + " pairs exceed the cap of " + std::to_string(cap));
  }
  std::vector<std::string> labels;
  std::vector<Rational> probs;
  labels.reserve(n * n);
  probs.reserve(n * n);
  for (size_t s = 0; s < n; ++s) {
    for (size_t t = 0; t < n; ++t) {
      labels.push_back("(" + dist.label(s) + "," + dist.label(t) + ")");
      probs.push_back(dist.prob(s) * dist.prob(t));
    }
  }
  return make_distribution(std::move(labels), std::move(probs));
}

// Per-source-symbol rate of the K-ary Huffman code over pairs.
inline Rational huffman_pair_rate(const SourceDistribution& dist, int K, size_t cap = kDefaultProductCap) {
  return huffman_length(product_distribution(dist, cap), K) / 2;
}

}  // namespace aifv
