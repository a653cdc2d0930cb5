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
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "aifv/analysis.hpp"
#include "aifv/code_tree.hpp"
#include "aifv/distribution.hpp"
#include "aifv/error.hpp"
#include "aifv/ip_model.hpp"
#include "aifv/ip_solver.hpp"
#include "aifv/rational.hpp"
#include "aifv/validate.hpp"

namespace aifv {

struct BruteForceLimits {
  size_t max_symbols = 5;
  int max_depth = 4;
};

struct BruteForceResult {
  AifvCode code;
  Rational L;
  size_t shapes[2] = {0, 0};  // symbol-free trees examined per tree
};

namespace detail {

// A tree without symbols: node specs whose symbol fields hold slot numbers.
struct Shape {
  std::vector<CodeTree::NodeSpec> specs;  // root first
  std::vector<int> slot_depth;
  std::vector<int> slot_class;  // next-tree index of each slot
  std::vector<int> pruned;      // [depth] -> pruned positions
};

class ShapeEnumerator {
 public:
  ShapeEnumerator(const Family& family, int D, size_t slots) : f_(family), D_(D), n_(slots) {
    K_ = family.arity;
    cap_.assign(static_cast<size_t>(D + 2), family.is_binary() ? 0 : K_ - 2);
  }

  std::vector<Shape> roots(int tree_index) {
    std::vector<Shape> out;
    if (tree_index == 0) {
      for (auto& s : generic(0)) {
        if (s.slot_depth.size() == n_) out.push_back(std::move(s));
      }
      return out;
    }
    std::vector<Shape> parts;
    if (f_.is_binary()) {
      // Complete root; slave at 0 whose only child hangs off 1.
      if (D_ < 2) return out;
      Shape root;
      root.specs.push_back({NodeKind::kComplete, std::nullopt, {}});
      root.specs.push_back({NodeKind::kSlave, std::nullopt, {}});
      root.specs[0].children[0] = 1;
      root.pruned.assign(static_cast<size_t>(D_ + 2), 0);
      parts.push_back(root);
      parts = attach(parts, 1, 1, generic(2));
      parts = attach(parts, 0, 1, generic(1));
    } else {
      const int k = tree_index;
      auto saved = cap_[1];
      cap_[1] = std::min(K_ - 2, K_ - k - 1);
      for (int c = 1; c <= K_ - k; ++c) {
        Shape root;
        root.specs.push_back({NodeKind::kComplete, std::nullopt, {}});
        root.pruned.assign(static_cast<size_t>(D_ + 2), 0);
        root.pruned[1] = K_ - k - c;
        if (root.pruned[1] > cap_[1]) continue;
        std::vector<Shape> cur{root};
        for (int s = k; s < k + c; ++s) cur = attach(cur, 0, s, generic(1));
        for (auto& p : cur) parts.push_back(std::move(p));
      }
      cap_[1] = saved;
    }
    for (auto& s : parts) {
      if (s.slot_depth.size() == n_) out.push_back(std::move(s));
    }
    return out;
  }

 private:
  // Every subtree rooted at a free position of depth d.
  const std::vector<Shape>& generic(int d) {
    auto it = memo_.find(d);
    if (it != memo_.end()) return it->second;
    std::vector<Shape> out;
    auto base = [&](NodeKind kind, bool slot, int klass) {
      Shape s;
      s.specs.push_back({kind, std::nullopt, {}});
      s.pruned.assign(static_cast<size_t>(D_ + 2), 0);
      if (slot) {
        s.specs[0].symbol = 0;
        s.slot_depth.push_back(d);
        s.slot_class.push_back(klass);
      }
      return s;
    };
    out.push_back(base(NodeKind::kLeaf, true, 0));
    if (d + 1 <= D_) {
      // Complete node; absent children are pruned positions.
      const int cmin = f_.is_binary() ? K_ : 1;
      for (int c = cmin; c <= K_; ++c) {
        Shape s = base(NodeKind::kComplete, false, 0);
        s.pruned[static_cast<size_t>(d + 1)] = K_ - c;
        if (K_ - c > cap_[static_cast<size_t>(d + 1)]) continue;
        std::vector<Shape> cur{s};
        for (int x = 0; x < c && !cur.empty(); ++x) cur = attach(cur, 0, x, generic(d + 1));
        for (auto& p : cur) out.push_back(std::move(p));
      }
    }
    if (f_.is_binary()) {
      if (d + 2 <= D_) {
        Shape s = base(NodeKind::kMaster, true, 1);
        s.specs.push_back({NodeKind::kSlave, std::nullopt, {}});
        s.specs[0].children[0] = 1;
        for (auto& p : attach({s}, 1, 0, generic(d + 2))) out.push_back(std::move(p));
      }
    } else if (d + 1 <= D_) {
      const int j = f_.incomplete_children;
      Shape s = base(NodeKind::kIncomplete, true, j);
      std::vector<Shape> cur{s};
      for (int x = 0; x < j && !cur.empty(); ++x) cur = attach(cur, 0, x, generic(d + 1));
      for (auto& p : cur) out.push_back(std::move(p));
    }
    return memo_.emplace(d, std::move(out)).first->second;
  }

  // Hangs every option under spec `parent` at code symbol `sym`, dropping
  // combinations over the slot or pruning caps.
  std::vector<Shape> attach(const std::vector<Shape>& heads, int parent, int sym, const std::vector<Shape>& options) {
    std::vector<Shape> out;
    for (const auto& h : heads) {
      for (const auto& o : options) {
        if (h.slot_depth.size() + o.slot_depth.size() > n_) continue;
        bool ok = true;
        for (size_t e = 0; e < h.pruned.size() && ok; ++e) ok = h.pruned[e] + o.pruned[e] <= cap_[e];
        if (!ok) continue;
        Shape s = h;
        const int off = static_cast<int>(s.specs.size());
        const int slot_off = static_cast<int>(s.slot_depth.size());
        for (auto spec : o.specs) {
          std::map<int, int> ch;
          for (auto [c, id] : spec.children) ch[c] = id + off;
          spec.children = std::move(ch);
          if (spec.symbol) *spec.symbol += slot_off;
          s.specs.push_back(std::move(spec));
        }
        s.specs[static_cast<size_t>(parent)].children[sym] = off;
        s.slot_depth.insert(s.slot_depth.end(), o.slot_depth.begin(), o.slot_depth.end());
        s.slot_class.insert(s.slot_class.end(), o.slot_class.begin(), o.slot_class.end());
        for (size_t e = 0; e < s.pruned.size(); ++e) s.pruned[e] += o.pruned[e];
        out.push_back(std::move(s));
      }
    }
    return out;
  }

  Family f_;
  int D_;
  int K_;
  size_t n_;
  std::vector<int> cap_;
  std::map<int, std::vector<Shape>> memo_;
};

// Best tree per transition set: key is the bitmask of symbols whose class
// counts toward q (leaving T0, or returning to T0 from the second tree).
struct Profile {
  Rational L;
  Rational q;
  int shape = -1;
  std::vector<int> perm;  // slot -> symbol
};

inline std::map<uint32_t, Profile> tree_profiles(const std::vector<Shape>& shapes, const SourceDistribution& dist,
                                                 bool second) {
  const size_t n = dist.size();
  std::vector<double> p = dist.probs_as_double();
  std::map<uint32_t, Profile> best;
  std::map<uint32_t, double> best_d;
  std::vector<int> perm(n);
  for (size_t si = 0; si < shapes.size(); ++si) {
    const auto& sh = shapes[si];
    std::iota(perm.begin(), perm.end(), 0);
    do {
      uint32_t key = 0;
      double L = 0;
      for (size_t s = 0; s < n; ++s) {
        const int t = perm[s];
        L += p[static_cast<size_t>(t)] * sh.slot_depth[s];
        bool counts = second ? sh.slot_class[s] == 0 : sh.slot_class[s] != 0;
        if (counts) key |= 1u << t;
      }
      auto it = best_d.find(key);
      if (it != best_d.end() && L > it->second + 1e-9) continue;
      Rational Lx = 0;
      for (size_t s = 0; s < n; ++s) Lx += dist.prob(static_cast<size_t>(perm[s])) * sh.slot_depth[s];
      auto bt = best.find(key);
      if (bt != best.end() && Lx >= bt->second.L) continue;
      Rational q = 0;
      for (size_t t = 0; t < n; ++t) {
        if (key >> t & 1u) q += dist.prob(t);
      }
      best[key] = {Lx, q, static_cast<int>(si), perm};
      best_d[key] = to_double(Lx);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return best;
}

inline CodeTree shape_tree(const Shape& sh, const Profile& pr, const Family& f, int tree_index, int n) {
  auto specs = sh.specs;
  for (auto& s : specs) {
    if (s.symbol) s.symbol = pr.perm[static_cast<size_t>(*s.symbol)];
  }
  return CodeTree::from_nodes(f.arity, tree_index, n, specs, 0);
}

}  // namespace detail

// Exhaustive search over all valid tree pairs of depth <= D for two-tree
// families. Ties keep the pair found first.
inline BruteForceResult brute_force_pair(const SourceDistribution& dist, const Family& family, int D,
                                         const BruteForceLimits& limits = {}) {
  if (!family.is_two_tree()) fail(ErrorCode::kBadArity, "exhaustive search covers two-tree families only");
  const size_t n = dist.size();
  if (n < 2) fail(ErrorCode::kEmptyAlphabet, "need at least two symbols");
  if (n > limits.max_symbols || D > limits.max_depth) {
    fail(ErrorCode::kCapExceeded, "exhaustive search is capped at " + std::to_string(limits.max_symbols) +
                                      " symbols and depth " + std::to_string(limits.max_depth) +
                                      "; use the optimizer for larger inputs");
  }
  if (D < 1) fail(ErrorCode::kDepthTooSmall, "depth must be positive");
  const int second = family.tree_indices().at(1);
  detail::ShapeEnumerator gen(family, D, n);
  auto s0 = gen.roots(0);
  auto s1 = gen.roots(second);
  auto p0 = detail::tree_profiles(s0, dist, false);
  auto p1 = detail::tree_profiles(s1, dist, true);
  if (p0.empty() || p1.empty()) fail(ErrorCode::kInfeasible, "no valid tree pair at this depth");

  const detail::Profile* b0 = nullptr;
  const detail::Profile* b1 = nullptr;
  Rational best;
  for (const auto& [k0, a] : p0) {
    for (const auto& [k1, b] : p1) {
      Rational L = two_tree_rate(a.L, a.q, b.L, b.q);
      if (!b0 || L < best) {
        best = L;
        b0 = &a;
        b1 = &b;
      }
    }
  }
  BruteForceResult r;
  r.shapes[0] = s0.size();
  r.shapes[1] = s1.size();
  const int ni = static_cast<int>(n);
  std::vector<CodeTree> trees{detail::shape_tree(s0[static_cast<size_t>(b0->shape)], *b0, family, 0, ni),
                              detail::shape_tree(s1[static_cast<size_t>(b1->shape)], *b1, family, second, ni)};
  r.code = AifvCode(family, dist.labels(), std::move(trees));
  require_valid(r.code);
  r.L = best;
  return r;
}

struct InstanceOptimum {
  bool feasible = false;
  Rational objective;
  std::vector<int64_t> values;
  uint64_t points = 0;  // feasible points visited
};

// Enumerates every point where each symbol takes exactly one of its u/v
// variables and each z ranges over its bounds. Checks the branch-and-bound
// solver on small instances.
inline InstanceOptimum brute_force_instance(const IpInstance& ip, uint64_t max_points = 20'000'000) {
  const size_t V = ip.variables.size();
  std::vector<std::vector<int>> options(ip.meta.labels.size());
  std::vector<int> free;
  for (size_t v = 0; v < V; ++v) {
    const auto& key = ip.variables[v].key;
    if (key.kind == VarKind::kZ) {
      free.push_back(static_cast<int>(v));
    } else {
      options.at(static_cast<size_t>(key.t)).push_back(static_cast<int>(v));
    }
  }
  std::vector<size_t> pick(options.size(), 0);
  std::vector<int64_t> x(V, 0);
  InstanceOptimum best;
  for (const auto& o : options) {
    if (o.empty()) return best;
  }
  uint64_t visited = 0;
  while (true) {
    std::fill(x.begin(), x.end(), 0);
    for (size_t t = 0; t < options.size(); ++t) x[static_cast<size_t>(options[t][pick[t]])] = 1;
    // Inner odometer over the z variables.
    while (true) {
      if (++visited > max_points) fail(ErrorCode::kCapExceeded, "instance too large to enumerate");
      if (satisfies(ip, x)) {
        ++best.points;
        Rational obj = objective_of(ip, x);
        if (!best.feasible || obj < best.objective) {
          best.feasible = true;
          best.objective = obj;
          best.values = x;
        }
      }
      size_t f = 0;
      while (f < free.size() && x[static_cast<size_t>(free[f])] == ip.variables[static_cast<size_t>(free[f])].ub) {
        x[static_cast<size_t>(free[f++])] = 0;
      }
      if (f == free.size()) break;
      ++x[static_cast<size_t>(free[f])];
    }
    size_t t = 0;
    while (t < pick.size() && pick[t] + 1 == options[t].size()) pick[t++] = 0;
    if (t == pick.size()) break;
    ++pick[t];
  }
  return best;
}

}  // namespace aifv
