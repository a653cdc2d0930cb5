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

// 0-1 programs whose feasible points are exactly the code trees of depth at
// most D: per-symbol leaf/branching depth choices (u, v), pruned-position
// counts (z), a Kraft-type equality and the rows that make every choice
// buildable.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "aifv/code_tree.hpp"
#include "aifv/distribution.hpp"
#include "aifv/error.hpp"
#include "aifv/rational.hpp"

namespace aifv {

enum class VarKind { kU, kV, kZ };

struct VariableKey {
  VarKind kind = VarKind::kU;
  int t = -1;  // symbol index; -1 for Z
  int d = 0;
  friend bool operator==(const VariableKey&, const VariableKey&) = default;
  friend auto operator<=>(const VariableKey&, const VariableKey&) = default;
};

struct Variable {
  VariableKey key;
  int64_t ub = 1;
  Rational objective;
};

enum class Relation { kEq, kLe };

struct Term {
  int var;
  Rational coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;  // sorted by variable index
  Relation rel = Relation::kLe;
  Rational rhs;
};

enum class TreeRole { kT0, kT1 };  // kT1 is the second tree: T1, or T_j for two-tree K-ary codes

enum class IpKind { kHuffman, kAifv };

struct IpMetadata {
  IpKind kind = IpKind::kAifv;
  Family family = Family::binary();
  TreeRole role = TreeRole::kT0;
  Rational cost;  // C
  int depth = 0;  // D
  std::vector<std::string> labels;
  std::vector<Rational> probs;
  std::set<int> leaf_only;

  int arity() const { return family.arity; }
  int tree_index() const { return role == TreeRole::kT0 ? 0 : family.tree_indices().at(1); }
};

class IpInstance {
 public:
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  IpMetadata meta;

  int find(const VariableKey& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
  }

  int add_variable(VariableKey key, int64_t ub, Rational objective) {
    int id = static_cast<int>(variables.size());
    variables.push_back({key, ub, std::move(objective)});
    index_.emplace(key, id);
    return id;
  }

  void add_constraint(std::string name, const std::map<int, Rational>& coefs, Relation rel, Rational rhs) {
    Constraint c;
    c.name = std::move(name);
    for (const auto& [v, a] : coefs) {
      if (a != 0) c.terms.push_back({v, a});
    }
    c.rel = rel;
    c.rhs = std::move(rhs);
    constraints.push_back(std::move(c));
  }

  std::string var_name(int id) const {
    const auto& k = variables.at(static_cast<size_t>(id)).key;
    switch (k.kind) {
      case VarKind::kU: return "u_" + std::to_string(k.t) + "_" + std::to_string(k.d);
      case VarKind::kV: return "v_" + std::to_string(k.t) + "_" + std::to_string(k.d);
      case VarKind::kZ: return "z_" + std::to_string(k.d);
    }
    return "?";
  }

  // LP-format listing; coefficients as 17-significant-digit decimals.
  std::string to_lp() const {
    auto num = [](const Rational& r) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", to_double(r));
      return std::string(buf);
    };
    auto linear = [&](const std::vector<Term>& terms) {
      std::string s;
      for (const auto& t : terms) {
        double a = to_double(t.coef);
        s += (a < 0 ? " - " : (s.empty() ? " " : " + "));
        s += num(a < 0 ? Rational(-t.coef) : t.coef) + " " + var_name(t.var);
      }
      return s.empty() ? std::string(" 0") : s;
    };
    std::string out;
    out += "\\ family " + meta.family.name() + ", tree T" + std::to_string(meta.tree_index()) + ", D " +
           std::to_string(meta.depth) + ", C " + to_string(meta.cost) + "\n";
    out += "Minimize\n obj:";
    std::vector<Term> obj;
    for (int i = 0; i < static_cast<int>(variables.size()); ++i) {
      if (variables[i].objective != 0) obj.push_back({i, variables[i].objective});
    }
    out += linear(obj) + "\nSubject To\n";
    for (const auto& c : constraints) {
      out += " " + c.name + ":" + linear(c.terms) + (c.rel == Relation::kEq ? " = " : " <= ") + num(c.rhs) + "\n";
    }
    std::string bounds, bins, gens;
    for (int i = 0; i < static_cast<int>(variables.size()); ++i) {
      if (variables[i].ub == 1) {
        bins += " " + var_name(i) + "\n";
      } else {
        bounds += " 0 <= " + var_name(i) + " <= " + std::to_string(variables[i].ub) + "\n";
        gens += " " + var_name(i) + "\n";
      }
    }
    if (!bounds.empty()) out += "Bounds\n" + bounds;
    if (!bins.empty()) out += "Binaries\n" + bins;
    if (!gens.empty()) out += "Generals\n" + gens;
    out += "End\n";
    return out;
  }

 private:
  std::map<VariableKey, int> index_;
};

// ceil(log_K n) by integer arithmetic.
inline int ceil_log(int K, int64_t n) {
  int d = 0;
  for (int64_t cap = 1; cap < n; cap *= K) ++d;
  return d;
}

inline int default_depth(size_t n, int K) { return 2 * ceil_log(K, static_cast<int64_t>(n)) + 4; }

inline constexpr int kCostBits = 40;

// Seed cost 2 - log2 3 (binary) or 1 - log_K (K - j), as a dyadic rational
// within 2^-40.
inline Rational default_cost(const Family& family) {
  long double c;
  if (family.is_binary()) {
    c = 2.0L - std::log2(3.0L);
  } else {
    const long double K = family.arity, j = family.incomplete_children;
    c = 1.0L - std::log(K - j) / std::log(K);
  }
  return dyadic_approx(c, kCostBits);
}

struct IpOptions {
  std::set<int> leaf_only;  // symbols that may only sit on leaves (e.g. an end marker)
};

namespace detail {

inline IpMetadata make_meta(const SourceDistribution& dist, IpKind kind, Family family, TreeRole role, Rational C,
                            int D, const IpOptions& opts) {
  IpMetadata m;
  m.kind = kind;
  m.family = family;
  m.role = role;
  m.cost = std::move(C);
  m.depth = D;
  m.labels = dist.labels();
  m.probs = dist.probs();
  m.leaf_only = opts.leaf_only;
  return m;
}

}  // namespace detail

inline IpInstance build_ip_huffman_binary(const SourceDistribution& dist, int D) {
  const int n = static_cast<int>(dist.size());
  if (n < 2) fail(ErrorCode::kEmptyAlphabet, "need at least two symbols");
  if (D < ceil_log(2, n)) fail(ErrorCode::kDepthTooSmall, "D=" + std::to_string(D) + " cannot hold " + std::to_string(n) + " leaves");
  IpInstance ip;
  ip.meta = detail::make_meta(dist, IpKind::kHuffman, Family::binary(), TreeRole::kT0, Rational(0), D, {});
  std::map<int, Rational> kraft;
  for (int t = 0; t < n; ++t) {
    std::map<int, Rational> assign;
    for (int d = 1; d <= D; ++d) {
      int u = ip.add_variable({VarKind::kU, t, d}, 1, dist.prob(t) * d);
      kraft[u] = inv_pow(2, d);
      assign[u] = 1;
    }
    ip.add_constraint("assign_" + std::to_string(t), assign, Relation::kEq, 1);
  }
  ip.add_constraint("kraft", kraft, Relation::kEq, 1);
  return ip;
}

// Binary T0 / T1 program. Masters stop at depth D-2 so that their slave and
// grandchild fit; in the T1 role the root's slave needs a grandchild at
// depth 2, which enters the depth-0 slot row as a constant.
inline IpInstance build_ip_binary(const SourceDistribution& dist, int D, const Rational& C, TreeRole role,
                                  const IpOptions& opts = {}) {
  const int n = static_cast<int>(dist.size());
  if (n < 2) fail(ErrorCode::kEmptyAlphabet, "need at least two symbols");
  const int64_t leaves_at_D = role == TreeRole::kT0 ? (int64_t{1} << std::min(D, 62)) : 3 * (int64_t{1} << std::min(D, 60)) / 4;
  if (D < 2 || leaves_at_D < n) fail(ErrorCode::kDepthTooSmall, "D=" + std::to_string(D) + " is too small for " + std::to_string(n) + " symbols");
  IpInstance ip;
  ip.meta = detail::make_meta(dist, IpKind::kAifv, Family::binary(), role, C, D, opts);
  const int dmin = role == TreeRole::kT0 ? 0 : 1;
  const Rational three_quarters = make_rational(3, 4);
  for (int t = 0; t < n; ++t) {
    std::map<int, Rational> assign;
    const auto& p = dist.prob(t);
    for (int d = dmin; d <= D; ++d) {
      assign[ip.add_variable({VarKind::kU, t, d}, 1, p * d)] = 1;
      if (d <= D - 2 && !opts.leaf_only.count(t)) assign[ip.add_variable({VarKind::kV, t, d}, 1, p * (C + d))] = 1;
    }
    ip.add_constraint("assign_" + std::to_string(t), assign, Relation::kEq, 1);
  }
  auto add = [&](std::map<int, Rational>& row, VarKind kind, int t, int d, const Rational& a) {
    int id = ip.find({kind, t, d});
    if (id >= 0) row[id] += a;
  };
  std::map<int, Rational> kraft;
  for (int t = 0; t < n; ++t) {
    for (int d = dmin; d <= D; ++d) {
      add(kraft, VarKind::kU, t, d, inv_pow(2, d));
      add(kraft, VarKind::kV, t, d, three_quarters * inv_pow(2, d));
    }
  }
  ip.add_constraint("kraft", kraft, Relation::kEq, role == TreeRole::kT0 ? Rational(1) : three_quarters);
  for (int d = 0; d <= D - 2; ++d) {
    std::map<int, Rational> row;
    Rational rhs = 0;
    for (int t = 0; t < n; ++t) {
      add(row, VarKind::kV, t, d, Rational(1));
      add(row, VarKind::kV, t, d + 1, make_rational(1, 2));
      for (int l = d + 2; l <= D; ++l) {
        Rational w = -inv_pow(2, l - d - 2);
        add(row, VarKind::kU, t, l, w);
        add(row, VarKind::kV, t, l, w * three_quarters);
      }
    }
    if (role == TreeRole::kT1 && d == 0) rhs = -1;
    ip.add_constraint("slot_" + std::to_string(d), row, Relation::kLe, rhs);
  }
  return ip;
}

// Two-tree K-ary program for T0 / T_j. Incomplete nodes have exactly j
// children; z_d counts pruned positions at depth d.
inline IpInstance build_ip_kary_two_tree(const SourceDistribution& dist, int K, int j, int D, const Rational& C,
                                         TreeRole role, const IpOptions& opts = {}) {
  if (K < 3 || j < 1 || j > K - 2) {
    fail(ErrorCode::kBadArity, "need K >= 3 and 1 <= j <= K-2, got K=" + std::to_string(K) + ", j=" + std::to_string(j));
  }
  const int n = static_cast<int>(dist.size());
  if (n < 2) fail(ErrorCode::kEmptyAlphabet, "need at least two symbols");
  if (D < 1) fail(ErrorCode::kDepthTooSmall, "D must be at least 1");
  {
    int64_t cap = role == TreeRole::kT0 ? K : K - j;
    for (int d = 1; d < D && cap < n; ++d) cap *= K;
    if (cap < n) fail(ErrorCode::kDepthTooSmall, "D=" + std::to_string(D) + " is too small for " + std::to_string(n) + " symbols");
  }
  Family family = K == 3 ? Family::ternary() : Family::kary_two_tree(K, j);
  IpInstance ip;
  ip.meta = detail::make_meta(dist, IpKind::kAifv, family, role, C, D, opts);
  const int dmin = role == TreeRole::kT0 ? 0 : 1;
  const Rational inc_weight = make_rational(K - j, K);
  for (int t = 0; t < n; ++t) {
    std::map<int, Rational> assign;
    const auto& p = dist.prob(t);
    for (int d = dmin; d <= D; ++d) {
      assign[ip.add_variable({VarKind::kU, t, d}, 1, p * d)] = 1;
      if (d <= D - 1 && !opts.leaf_only.count(t)) assign[ip.add_variable({VarKind::kV, t, d}, 1, p * (C + d))] = 1;
    }
    ip.add_constraint("assign_" + std::to_string(t), assign, Relation::kEq, 1);
  }
  for (int d = 1; d <= D; ++d) {
    int ub = K - 2;
    if (role == TreeRole::kT1 && d == 1) ub = std::min(ub, K - j - 1);
    if (ub > 0) ip.add_variable({VarKind::kZ, -1, d}, ub, Rational(0));
  }
  auto add = [&](std::map<int, Rational>& row, VarKind kind, int t, int d, const Rational& a) {
    int id = ip.find({kind, t, d});
    if (id >= 0) row[id] += a;
  };
  // Positions at depth e, each weighing K^(e-l) for a node at depth l >= e.
  auto positions = [&](std::map<int, Rational>& row, int e, const Rational& scale) {
    for (int l = e; l <= D; ++l) {
      Rational w = scale * inv_pow(K, l - e);
      add(row, VarKind::kZ, -1, l, w);
      for (int t = 0; t < n; ++t) {
        add(row, VarKind::kU, t, l, w);
        add(row, VarKind::kV, t, l, w * inc_weight);
      }
    }
  };
  std::map<int, Rational> kraft;
  positions(kraft, dmin, inv_pow(K, dmin));
  ip.add_constraint("kraft", kraft, Relation::kEq, role == TreeRole::kT0 ? Rational(1) : inc_weight);
  for (int d = dmin; d <= D - 1; ++d) {
    // Complete nodes at depth d: c_d = (N_{d+1} - j V_d) / K >= 0.
    std::map<int, Rational> row;
    for (int t = 0; t < n; ++t) add(row, VarKind::kV, t, d, Rational(j));
    positions(row, d + 1, Rational(-1));
    ip.add_constraint("cont_" + std::to_string(d), row, Relation::kLe, 0);
    // Each complete node keeps one child: K z_{d+1} <= (K-1)(N_{d+1} - j V_d).
    if (ip.find({VarKind::kZ, -1, d + 1}) < 0) continue;
    std::map<int, Rational> cut;
    add(cut, VarKind::kZ, -1, d + 1, Rational(K));
    for (int t = 0; t < n; ++t) add(cut, VarKind::kV, t, d, Rational((K - 1) * j));
    positions(cut, d + 1, Rational(-(K - 1)));
    ip.add_constraint("zcut_" + std::to_string(d + 1), cut, Relation::kLe, 0);
  }
  return ip;
}

inline IpInstance build_ip_ternary(const SourceDistribution& dist, int D, const Rational& C, TreeRole role,
                                   const IpOptions& opts = {}) {
  return build_ip_kary_two_tree(dist, 3, 1, D, C, role, opts);
}

inline IpInstance build_ip(const SourceDistribution& dist, const Family& family, int D, const Rational& C,
                           TreeRole role, const IpOptions& opts = {}) {
  switch (family.kind) {
    case Family::Kind::kBinary: return build_ip_binary(dist, D, C, role, opts);
    case Family::Kind::kTernary: return build_ip_ternary(dist, D, C, role, opts);
    case Family::Kind::kKaryTwoTree:
      return build_ip_kary_two_tree(dist, family.arity, family.incomplete_children, D, C, role, opts);
    case Family::Kind::kKary: break;
  }
  fail(ErrorCode::kBadArity, "no IP model for unrestricted K-ary codes");
}

}  // namespace aifv
