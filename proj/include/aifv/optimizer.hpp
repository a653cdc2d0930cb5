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

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
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

struct CostState {
  int m = 0;
  Rational C;  // cost the two solves used
  Rational L0, L1;
  Rational q0, q1;  // T0 -> second tree, second tree -> T0
  Rational L;       // L_AIFV of the pair
  Rational C_next;  // (L1 - L0) / (q0 + q1), or C when the chain is degenerate
};

inline Rational cost_update(const Rational& L0, const Rational& L1, const Rational& q0, const Rational& q1) {
  Rational s = q0 + q1;
  if (s == 0) fail(ErrorCode::kDegenerateChain, "q0 + q1 = 0; the cost is undefined");
  return (L1 - L0) / s;
}

inline Rational cost_update(const CostState& s) { return cost_update(s.L0, s.L1, s.q0, s.q1); }

enum class StopReason { kFixedPoint, kTreesRepeated, kDegenerateChain, kSinglePass };

inline std::string_view stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::kFixedPoint: return "fixed-point";
    case StopReason::kTreesRepeated: return "trees-repeated";
    case StopReason::kDegenerateChain: return "degenerate-chain";
    case StopReason::kSinglePass: return "single-pass";
  }
  return "?";
}

struct OptimizeOptions {
  std::optional<int> depth;           // default_depth when empty
  std::optional<Rational> initial_cost;
  int max_iter = 100;
  double time_limit_s = std::numeric_limits<double>::infinity();  // whole run
  bool iterate = true;
  bool allow_full_depth = false;  // accept trees that reach depth D
  std::set<int> leaf_only;
};

struct OptimizeResult {
  AifvCode code;
  Rational L;
  std::vector<CostState> trace;
  StopReason stop = StopReason::kFixedPoint;
  int depth = 0;
  uint64_t nodes = 0;
  double seconds = 0;
};

// Alternates the two tree solves with the cost update until the cost stops
// changing. Two-tree families only.
inline OptimizeResult optimize(const SourceDistribution& dist, const Family& family, const OptimizeOptions& opts = {}) {
  if (!family.is_two_tree()) fail(ErrorCode::kBadArity, "the optimizer handles two-tree families");
  if (dist.size() < 2) fail(ErrorCode::kEmptyAlphabet, "need at least two symbols");
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  OptimizeResult out;
  out.depth = opts.depth.value_or(default_depth(dist.size(), family.arity));
  const int D = out.depth;
  const int second = family.tree_indices().at(1);
  IpOptions ipo;
  ipo.leaf_only = opts.leaf_only;
  Rational C = opts.initial_cost.value_or(default_cost(family));
  std::optional<std::vector<CodeTree>> prev_trees;

  auto solve = [&](TreeRole role) {
    auto ip = build_ip(dist, family, D, C, role, ipo);
    SolverOptions so;
    so.time_limit_s = opts.time_limit_s - elapsed();
    if (so.time_limit_s <= 0) fail(ErrorCode::kTimeLimitExceeded, "time limit reached before solving");
    auto sol = solve_exact(ip, so);
    out.nodes += sol.nodes;
    if (sol.status == SolveStatus::kTimeLimit) fail(ErrorCode::kTimeLimitExceeded, "solver hit the time limit");
    if (sol.status == SolveStatus::kInfeasible) {
      fail(ErrorCode::kInfeasible, "no tree of depth <= " + std::to_string(D) + " for this alphabet");
    }
    CodeTree t = solution_to_tree(sol, ip);
    if (!opts.allow_full_depth && t.max_depth() >= D) {
      fail(ErrorCode::kDepthSaturated,
           "optimal tree reaches the depth limit " + std::to_string(D) + "; raise the depth");
    }
    return t;
  };

  for (int m = 1;; ++m) {
    if (m > opts.max_iter) fail(ErrorCode::kMaxIterExceeded, "no fixed point after " + std::to_string(opts.max_iter));
    std::vector<CodeTree> trees{solve(TreeRole::kT0), solve(TreeRole::kT1)};
    AifvCode code(family, dist.labels(), trees);
    require_valid(code);
    auto s0 = tree_stats(trees[0], dist);
    auto s1 = tree_stats(trees[1], dist);

    CostState st;
    st.m = m;
    st.C = C;
    st.L0 = s0.L;
    st.L1 = s1.L;
    st.q0 = s0.mass(second);
    st.q1 = s1.mass(0);
    st.L = two_tree_rate(st.L0, st.q0, st.L1, st.q1);
    const bool degenerate = st.q0 + st.q1 == 0;
    st.C_next = degenerate ? C : cost_update(st);

    if (!out.trace.empty()) {
      const auto& prev = out.trace.back();
      // Each tree is optimal for the cost the previous pair implies, so the
      // new pair cannot be worse. L is the q1:q0 blend of the two per-tree
      // gains; with both weights positive it must drop once the cost moves.
      if (st.L > prev.L) fail(ErrorCode::kUnconstructible, "average length increased between iterations");
      if (st.C_next != st.C && st.q0 > 0 && st.q1 > 0 && st.L >= prev.L) {
        fail(ErrorCode::kUnconstructible, "cost changed without a decrease in average length");
      }
    }
    out.trace.push_back(st);
    out.code = code;
    out.L = st.L;

    if (!opts.iterate) {
      out.stop = StopReason::kSinglePass;
      break;
    }
    if (degenerate) {
      out.stop = StopReason::kDegenerateChain;
      break;
    }
    if (m >= 2 && st.C_next == st.C) {
      out.stop = StopReason::kFixedPoint;
      break;
    }
    if (prev_trees && *prev_trees == trees) {
      out.stop = StopReason::kTreesRepeated;
      break;
    }
    prev_trees = trees;
    C = st.C_next;
  }
  out.seconds = elapsed();
  return out;
}

inline std::string trace_csv(const std::vector<CostState>& trace) {
  std::ostringstream os;
  os << "m,C,L0,L1,q0,q1,L_AIFV\n";
  for (const auto& s : trace) {
    os << s.m << ',' << to_string(s.C) << ',' << to_string(s.L0) << ',' << to_string(s.L1) << ','
       << to_string(s.q0) << ',' << to_string(s.q1) << ',' << to_string(s.L) << '\n';
  }
  return os.str();
}

}  // namespace aifv
