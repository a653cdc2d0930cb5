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

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "aifv/code_tree.hpp"
#include "aifv/codec.hpp"
#include "aifv/distribution.hpp"
#include "aifv/rational.hpp"
#include "aifv/validate.hpp"

namespace aifv {

struct TreeStats {
  int tree_index = 0;
  Rational L;                          // average codeword length
  std::map<int, Rational> class_mass;  // next-tree index -> probability mass

  Rational mass(int j) const {
    auto it = class_mass.find(j);
    return it == class_mass.end() ? Rational(0) : it->second;
  }
};

inline TreeStats tree_stats(const CodeTree& tree, const SourceDistribution& dist) {
  if (tree.alphabet_size() != static_cast<int>(dist.size())) {
    fail(ErrorCode::kAlphabetMismatch, "tree has " + std::to_string(tree.alphabet_size()) +
                                           " symbols, distribution " + std::to_string(dist.size()));
  }
  TreeStats s;
  s.tree_index = tree.tree_index();
  s.L = 0;
  for (int t = 0; t < tree.alphabet_size(); ++t) {
    int id = tree.symbol_node(t);
    if (id < 0) fail(ErrorCode::kInvalidTree, "symbol #" + std::to_string(t) + " missing from tree");
    const auto& p = dist.prob(static_cast<size_t>(t));
    s.L += p * tree.node(id).depth;
    auto [it, inserted] = s.class_mass.try_emplace(tree.next_tree(id), 0);
    it->second += p;
  }
  return s;
}

inline void require_same_alphabet(const AifvCode& code, const SourceDistribution& dist) {
  if (code.alphabet() != dist.labels()) fail(ErrorCode::kAlphabetMismatch, "code and distribution labels differ");
}

inline std::vector<TreeStats> code_stats(const AifvCode& code, const SourceDistribution& dist) {
  require_same_alphabet(code, dist);
  std::vector<TreeStats> out;
  for (const auto& t : code.trees()) out.push_back(tree_stats(t, dist));
  return out;
}

struct ChainSolution {
  std::vector<int> tree_indices;  // tuple order
  std::vector<Rational> Q;        // stationary probability per tree
  Rational q0, q1;                // two-tree transition masses T0->T1 and T1->T0

  Rational of(int tree_index) const {
    for (size_t i = 0; i < tree_indices.size(); ++i) {
      if (tree_indices[i] == tree_index) return Q[i];
    }
    return 0;
  }
};

// Q(T0) = q1/(q0+q1), Q(T1) = q0/(q0+q1); a chain that never leaves T0 stays
// there, one that never comes back sits in T1.
inline std::pair<Rational, Rational> two_tree_stationary(const Rational& q0, const Rational& q1) {
  if (q0 == 0) return {Rational(1), Rational(0)};
  if (q1 == 0) return {Rational(0), Rational(1)};
  Rational s = q0 + q1;
  return {q1 / s, q0 / s};
}

inline ChainSolution stationary_from_stats(const Family& family, const std::vector<TreeStats>& stats) {
  ChainSolution sol;
  for (const auto& s : stats) sol.tree_indices.push_back(s.tree_index);
  if (family.is_two_tree()) {
    int second = stats.at(1).tree_index;
    sol.q0 = stats[0].mass(second);
    sol.q1 = stats[1].mass(0);
    auto [a, b] = two_tree_stationary(sol.q0, sol.q1);
    sol.Q = {a, b};
    return sol;
  }

  // General chain over the trees reachable from T0, solved exactly.
  const size_t n = stats.size();
  std::vector<std::vector<Rational>> P(n, std::vector<Rational>(n, Rational(0)));
  auto pos = [&](int idx) -> int {
    for (size_t i = 0; i < n; ++i) {
      if (sol.tree_indices[i] == idx) return static_cast<int>(i);
    }
    return -1;
  };
  for (size_t k = 0; k < n; ++k) {
    for (const auto& [j, m] : stats[k].class_mass) {
      int p = pos(j);
      if (p < 0) fail(ErrorCode::kInvalidTree, "transition to a missing tree");
      P[k][static_cast<size_t>(p)] += m;
    }
  }
  std::vector<int> reach(n, 0);
  std::vector<size_t> stack{0};
  reach[0] = 1;
  while (!stack.empty()) {
    size_t k = stack.back();
    stack.pop_back();
    for (size_t j = 0; j < n; ++j) {
      if (P[k][j] != 0 && !reach[j]) {
        reach[j] = 1;
        stack.push_back(j);
      }
    }
  }
  std::vector<size_t> states;
  for (size_t k = 0; k < n; ++k) {
    if (reach[k]) states.push_back(k);
  }
  const size_t m = states.size();
  // Rows: balance equations for all but the last state, then normalization.
  std::vector<std::vector<Rational>> A(m, std::vector<Rational>(m + 1, Rational(0)));
  for (size_t r = 0; r + 1 < m; ++r) {
    for (size_t c = 0; c < m; ++c) {
      A[r][c] = P[states[c]][states[r]] - (r == c ? 1 : 0);
    }
  }
  for (size_t c = 0; c < m; ++c) A[m - 1][c] = 1;
  A[m - 1][m] = 1;
  for (size_t col = 0; col < m; ++col) {
    size_t piv = col;
    while (piv < m && A[piv][col] == 0) ++piv;
    if (piv == m) fail(ErrorCode::kReducibleChain, "tree-transition chain has several closed classes");
    std::swap(A[piv], A[col]);
    for (size_t r = 0; r < m; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rational f = A[r][col] / A[col][col];
      for (size_t c = col; c <= m; ++c) A[r][c] -= f * A[col][c];
    }
  }
  sol.Q.assign(n, Rational(0));
  for (size_t i = 0; i < m; ++i) sol.Q[states[i]] = A[i][m] / A[i][i];
  return sol;
}

inline ChainSolution stationary(const AifvCode& code, const SourceDistribution& dist) {
  require_valid(code);
  return stationary_from_stats(code.family(), code_stats(code, dist));
}

inline Rational average_length(const AifvCode& code, const SourceDistribution& dist) {
  require_valid(code);
  auto stats = code_stats(code, dist);
  auto chain = stationary_from_stats(code.family(), stats);
  Rational L = 0;
  for (size_t k = 0; k < stats.size(); ++k) L += chain.Q[k] * stats[k].L;
  return L;
}

// (q1*L0 + q0*L1)/(q0+q1) with the same degenerate-chain conventions.
inline Rational two_tree_rate(const Rational& L0, const Rational& q0, const Rational& L1, const Rational& q1) {
  auto [a, b] = two_tree_stationary(q0, q1);
  return a * L0 + b * L1;
}

struct TreeBound {
  int tree_index = 0;
  double L = 0;
  double lower = 0;
  double upper = 0;  // reported; holds for optimal trees, not asserted
  bool lower_ok = true;
};

struct LengthBounds {
  double H = 0;
  std::vector<TreeBound> trees;
  std::optional<double> L_aifv;
  bool global_ok = true;  // H <= L_AIFV < H + 1

  bool ok() const {
    for (const auto& t : trees) {
      if (!t.lower_ok) return false;
    }
    return global_ok;
  }
};

inline constexpr double kBoundTolerance = 1e-9;

inline LengthBounds length_bounds(const Family& family, const SourceDistribution& dist,
                                  const std::vector<TreeStats>& stats,
                                  std::optional<Rational> L_aifv = std::nullopt) {
  LengthBounds out;
  const int K = family.arity;
  out.H = entropy(dist, K);
  const double logK = std::log(static_cast<double>(K));
  const double c2 = 2.0 - std::log2(3.0);
  for (const auto& s : stats) {
    TreeBound b;
    b.tree_index = s.tree_index;
    b.L = to_double(s.L);
    double shift = 0;
    if (family.is_binary()) {
      shift = s.tree_index == 0 ? -to_double(s.mass(1)) * c2 : to_double(s.mass(0)) * c2;
    } else {
      const int k = s.tree_index;
      for (const auto& [j, m] : s.class_mass) {
        shift += to_double(m) * std::log(static_cast<double>(K - j) / static_cast<double>(K - k)) / logK;
      }
    }
    b.lower = out.H + shift;
    b.upper = b.lower + 1;
    b.lower_ok = b.L >= b.lower - kBoundTolerance;
    out.trees.push_back(b);
  }
  if (L_aifv) {
    double L = to_double(*L_aifv);
    out.L_aifv = L;
    out.global_ok = L >= out.H - kBoundTolerance && L < out.H + 1;
  }
  return out;
}

inline LengthBounds length_bounds(const AifvCode& code, const SourceDistribution& dist) {
  auto stats = code_stats(code, dist);
  std::optional<Rational> L;
  if (code.family().is_two_tree()) L = average_length(code, dist);
  return length_bounds(code.family(), dist, stats, L);
}

struct EmpiricalRate {
  double rate = 0;
  double std_error = 0;  // batch means
  uint64_t symbols = 0;
};

// Code symbols per source symbol over an i.i.d. message of n_symbols drawn
// with a seeded mt19937_64.
inline EmpiricalRate empirical_rate(const AifvCode& code, const SourceDistribution& dist, uint64_t n_symbols,
                                    uint64_t seed) {
  if (n_symbols == 0) fail(ErrorCode::kLengthMismatch, "need at least one symbol");
  require_same_alphabet(code, dist);
  CodewordTable table(code);
  std::mt19937_64 rng(seed);
  auto probs = dist.probs_as_double();
  std::discrete_distribution<int> pick(probs.begin(), probs.end());
  const uint64_t batches = n_symbols >= 1000 ? 100 : 1;
  const uint64_t per_batch = n_symbols / batches;
  std::vector<double> means;
  uint64_t total = 0, drawn = 0;
  size_t pos = 0;
  for (uint64_t b = 0; b < batches; ++b) {
    uint64_t count = b + 1 == batches ? n_symbols - drawn : per_batch;
    uint64_t len = 0;
    for (uint64_t i = 0; i < count; ++i) {
      const auto& e = table.entry(pos, pick(rng));
      len += e.word.size();
      pos = static_cast<size_t>(e.next_position);
    }
    drawn += count;
    total += len;
    means.push_back(static_cast<double>(len) / static_cast<double>(count));
  }
  EmpiricalRate r;
  r.symbols = n_symbols;
  r.rate = static_cast<double>(total) / static_cast<double>(n_symbols);
  if (means.size() > 1) {
    double mu = 0;
    for (double m : means) mu += m;
    mu /= static_cast<double>(means.size());
    double var = 0;
    for (double m : means) var += (m - mu) * (m - mu);
    var /= static_cast<double>(means.size() - 1);
    r.std_error = std::sqrt(var / static_cast<double>(means.size()));
  }
  return r;
}

}  // namespace aifv
