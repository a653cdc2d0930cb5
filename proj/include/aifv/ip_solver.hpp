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

// Exact 0-1 branch and bound for IpInstance.
//
// Rows of the form sum(x) = 1 over binaries become choice groups; the search
// picks one option per group, groups in descending objective weight, options
// in variable order. Variables outside every group (pruned-position counts)
// are filled in at the leaves. Pruning uses
//   * activity bounds on every row, in scaled integer arithmetic,
//   * a fractional relaxation of the remaining budget of the one
//     nonnegative equality row (the Kraft row), solved greedily over the
//     per-group lower convex hulls,
//   * pairwise exchange: two groups whose options have identical constraint
//     columns may swap options; if the swap is cheaper, or equally cheap and
//     smaller in branching order, the current node is dominated.
// Only strictly better leaves replace the incumbent, so the reported optimum
// is the first one in branching order.

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aifv/error.hpp"
#include "aifv/ip_model.hpp"
#include "aifv/rational.hpp"
#include "aifv/tree_builder.hpp"

namespace aifv {

enum class SolveStatus { kOptimal, kInfeasible, kTimeLimit };

inline std::string_view solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kTimeLimit: return "TimeLimit";
  }
  return "?";
}

struct SolverOptions {
  double time_limit_s = std::numeric_limits<double>::infinity();
};

struct SolverSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  bool has_solution = false;  // an incumbent exists (always for Optimal)
  std::vector<int64_t> values;
  Rational objective;
  uint64_t nodes = 0;
  double seconds = 0;

  int64_t value(const IpInstance& ip, const VariableKey& key) const {
    int id = ip.find(key);
    return id < 0 ? 0 : values.at(static_cast<size_t>(id));
  }
};

namespace detail {

using Wide = __int128;

class BranchAndBound {
 public:
  BranchAndBound(const IpInstance& ip, const SolverOptions& opts) : ip_(ip), opts_(opts) {
    prepare_groups();
    prepare_rows();
    prepare_bound();
    prepare_exchange();
  }

  SolverSolution run() {
    start_ = std::chrono::steady_clock::now();
    choice_.assign(groups_.size(), -1);
    act_.assign(rows_.size(), 0);
    free_val_.assign(free_.size(), 0);
    obj_acc_ = 0;
    if (feasible_at(0)) dfs(0);
    SolverSolution sol;
    sol.nodes = nodes_;
    sol.seconds = elapsed();
    sol.has_solution = have_incumbent_;
    if (have_incumbent_) {
      sol.values = best_values_;
      sol.objective = best_obj_;
    }
    sol.status = timed_out_ ? SolveStatus::kTimeLimit
                            : (have_incumbent_ ? SolveStatus::kOptimal : SolveStatus::kInfeasible);
    return sol;
  }

 private:
  struct Row {
    bool eq = false;
    Wide rhs = 0;
    mpz_class scale;
  };
  struct Entry {
    int row;
    int64_t a;
  };
  struct Segment {
    int group;
    double dw, dc;  // dw > 0, dc < 0
    double eff;
  };

  // --- setup -------------------------------------------------------------

  void prepare_groups() {
    const auto& vars = ip_.variables;
    std::vector<int> owner(vars.size(), -1);
    std::vector<std::vector<int>> groups;
    for (size_t r = 0; r < ip_.constraints.size(); ++r) {
      const auto& c = ip_.constraints[r];
      if (c.rel != Relation::kEq || c.rhs != 1 || c.terms.empty()) continue;
      bool ok = true;
      for (const auto& t : c.terms) {
        if (t.coef != 1 || vars[t.var].ub != 1 || owner[t.var] >= 0) ok = false;
      }
      if (!ok) continue;
      std::vector<int> g;
      for (const auto& t : c.terms) {
        owner[t.var] = static_cast<int>(groups.size());
        g.push_back(t.var);
      }
      std::sort(g.begin(), g.end());
      groups.push_back(std::move(g));
      group_row_.push_back(static_cast<int>(r));
    }
    // Heavier groups first; groups with equal weight keep their order.
    std::vector<double> weight(groups.size(), 0);
    for (size_t g = 0; g < groups.size(); ++g) {
      for (int v : groups[g]) weight[g] += std::fabs(to_double(vars[v].objective));
    }
    std::vector<size_t> order(groups.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return weight[a] > weight[b]; });
    for (size_t i : order) groups_.push_back(groups[i]);
    for (size_t v = 0; v < vars.size(); ++v) {
      if (owner[v] < 0) free_.push_back(static_cast<int>(v));
    }
    obj_d_.resize(vars.size());
    for (size_t v = 0; v < vars.size(); ++v) obj_d_[v] = to_double(vars[v].objective);
  }

  void prepare_rows() {
    const auto& cons = ip_.constraints;
    std::vector<char> is_group_row(cons.size(), 0);
    for (int r : group_row_) is_group_row[r] = 1;
    entries_.assign(ip_.variables.size(), {});
    for (size_t r = 0; r < cons.size(); ++r) {
      if (is_group_row[r]) continue;
      const auto& c = cons[r];
      mpz_class l = c.rhs.get_den();
      for (const auto& t : c.terms) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
      auto to_int = [&](const Rational& q) -> int64_t {
        mpz_class v = q.get_num() * (l / q.get_den());
        if (!v.fits_slong_p()) fail(ErrorCode::kCapExceeded, "row " + c.name + " does not scale to 64-bit integers");
        return v.get_si();
      };
      Row row;
      row.eq = c.rel == Relation::kEq;
      row.rhs = to_int(c.rhs);
      row.scale = l;
      int rid = static_cast<int>(rows_.size());
      rows_.push_back(row);
      row_source_.push_back(static_cast<int>(r));
      for (const auto& t : c.terms) entries_[t.var].push_back({rid, to_int(t.coef)});
    }
    const size_t R = rows_.size(), G = groups_.size();
    suf_min_.assign(G + 1, std::vector<Wide>(R, 0));
    suf_max_.assign(G + 1, std::vector<Wide>(R, 0));
    for (size_t g = G; g-- > 0;) {
      std::vector<Wide> lo(R, 0), hi(R, 0), col(R, 0);
      for (size_t i = 0; i < groups_[g].size(); ++i) {
        std::fill(col.begin(), col.end(), 0);
        for (const auto& e : entries_[groups_[g][i]]) col[e.row] = e.a;
        for (size_t r = 0; r < R; ++r) {
          lo[r] = i == 0 ? col[r] : std::min(lo[r], col[r]);
          hi[r] = i == 0 ? col[r] : std::max(hi[r], col[r]);
        }
      }
      for (size_t r = 0; r < R; ++r) {
        suf_min_[g][r] = suf_min_[g + 1][r] + lo[r];
        suf_max_[g][r] = suf_max_[g + 1][r] + hi[r];
      }
    }
    const size_t F = free_.size();
    free_min_.assign(F + 1, std::vector<Wide>(R, 0));
    free_max_.assign(F + 1, std::vector<Wide>(R, 0));
    free_zero_obj_ = true;
    for (size_t f = F; f-- > 0;) {
      int v = free_[f];
      free_min_[f] = free_min_[f + 1];
      free_max_[f] = free_max_[f + 1];
      const Wide ub = ip_.variables[v].ub;
      for (const auto& e : entries_[v]) {
        Wide x = ub * e.a;
        if (x < 0) free_min_[f][e.row] += x;
        else free_max_[f][e.row] += x;
      }
      if (ip_.variables[v].objective != 0) free_zero_obj_ = false;
    }
  }

  void prepare_bound() {
    budget_row_ = -1;
    for (size_t r = 0; r < rows_.size() && budget_row_ < 0; ++r) {
      if (!rows_[r].eq) continue;
      bool nonneg = rows_[r].rhs >= 0;
      for (const auto& g : groups_) {
        for (int v : g) {
          for (const auto& e : entries_[v]) {
            if (e.row == static_cast<int>(r) && e.a < 0) nonneg = false;
          }
        }
      }
      if (nonneg) budget_row_ = static_cast<int>(r);
    }
    const size_t G = groups_.size();
    start_cost_.assign(G + 1, 0);
    start_weight_.assign(G + 1, 0);
    segments_.clear();
    std::vector<double> min_cost(G, 0);
    for (size_t g = 0; g < G; ++g) {
      min_cost[g] = std::numeric_limits<double>::infinity();
      for (int v : groups_[g]) min_cost[g] = std::min(min_cost[g], obj_d_[v]);
    }
    if (budget_row_ < 0) {
      for (size_t g = G; g-- > 0;) start_cost_[g] = start_cost_[g + 1] + min_cost[g];
      return;
    }
    const double scale = mpz_class(rows_[budget_row_].scale).get_d();
    std::vector<double> sc(G), sw(G);
    for (size_t g = 0; g < G; ++g) {
      struct Pt {
        double w, c;
      };
      std::vector<Pt> pts;
      for (int v : groups_[g]) {
        double w = 0;
        for (const auto& e : entries_[v]) {
          if (e.row == budget_row_) w = static_cast<double>(e.a) / scale;
        }
        pts.push_back({w, obj_d_[v]});
      }
      std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.w < b.w || (a.w == b.w && a.c < b.c); });
      // Lower convex hull, left to right.
      std::vector<Pt> hull;
      for (const auto& p : pts) {
        if (!hull.empty() && hull.back().w == p.w) continue;
        while (hull.size() >= 2) {
          const Pt& a = hull[hull.size() - 2];
          const Pt& b = hull.back();
          double cross = (b.w - a.w) * (p.c - a.c) - (b.c - a.c) * (p.w - a.w);
          if (cross <= 0) hull.pop_back();
          else break;
        }
        hull.push_back(p);
      }
      sc[g] = hull.front().c;
      sw[g] = hull.front().w;
      for (size_t i = 1; i < hull.size(); ++i) {
        double dw = hull[i].w - hull[i - 1].w, dc = hull[i].c - hull[i - 1].c;
        if (dc >= 0) break;
        segments_.push_back({static_cast<int>(g), dw, dc, -dc / dw});
      }
    }
    std::stable_sort(segments_.begin(), segments_.end(), [](const Segment& a, const Segment& b) { return a.eff > b.eff; });
    for (size_t g = G; g-- > 0;) {
      start_cost_[g] = start_cost_[g + 1] + sc[g];
      start_weight_[g] = start_weight_[g + 1] + sw[g];
    }
    budget_scale_ = scale;
  }

  void prepare_exchange() {
    const size_t G = groups_.size();
    klass_.assign(G, -1);
    std::vector<std::vector<std::vector<Entry>>> sig(G);
    for (size_t g = 0; g < G; ++g) {
      for (int v : groups_[g]) sig[g].push_back(entries_[v]);
    }
    auto same = [&](size_t a, size_t b) {
      if (sig[a].size() != sig[b].size()) return false;
      for (size_t i = 0; i < sig[a].size(); ++i) {
        const auto &x = sig[a][i], &y = sig[b][i];
        if (x.size() != y.size()) return false;
        for (size_t k = 0; k < x.size(); ++k) {
          if (x[k].row != y[k].row || x[k].a != y[k].a) return false;
        }
      }
      return true;
    };
    int next = 0;
    for (size_t g = 0; g < G; ++g) {
      if (klass_[g] >= 0) continue;
      klass_[g] = next;
      for (size_t h = g + 1; h < G; ++h) {
        if (klass_[h] < 0 && same(g, h)) klass_[h] = next;
      }
      ++next;
    }
  }

  // --- search ------------------------------------------------------------

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  bool feasible_at(size_t k) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      Wide lo = act_[r] + suf_min_[k][r] + free_min_[0][r];
      if (lo > rows_[r].rhs) return false;
      if (rows_[r].eq) {
        Wide hi = act_[r] + suf_max_[k][r] + free_max_[0][r];
        if (hi < rows_[r].rhs) return false;
      }
    }
    return true;
  }

  double lower_bound(size_t k) const {
    double lb = obj_acc_ + start_cost_[k];
    if (budget_row_ < 0) return lb;
    double remaining = static_cast<double>(rows_[budget_row_].rhs - act_[budget_row_]) / budget_scale_ - start_weight_[k];
    if (remaining < -1e-12) return std::numeric_limits<double>::infinity();
    for (const auto& s : segments_) {
      if (remaining <= 0) break;
      if (s.group < static_cast<int>(k)) continue;
      double f = std::min(1.0, remaining / s.dw);
      lb += f * s.dc;
      remaining -= f * s.dw;
    }
    return lb;
  }

  bool prune_by_bound(double lb) const {
    if (!have_incumbent_) return false;
    return lb > best_obj_d_ + 1e-9 * std::max(1.0, std::fabs(best_obj_d_));
  }

  // Would swapping the options of an earlier interchangeable group and group
  // k give a cheaper point, or an equally cheap one earlier in branching order?
  bool dominated(size_t k, int ok) const {
    const auto& gk = groups_[k];
    for (size_t g = 0; g < k; ++g) {
      if (klass_[g] != klass_[k]) continue;
      int og = choice_[g];
      if (og == ok) continue;
      const auto& gg = groups_[g];
      double delta = obj_d_[gg[ok]] + obj_d_[gk[og]] - obj_d_[gg[og]] - obj_d_[gk[ok]];
      double mag = std::fabs(obj_d_[gg[ok]]) + std::fabs(obj_d_[gk[og]]) + std::fabs(obj_d_[gg[og]]) +
                   std::fabs(obj_d_[gk[ok]]);
      if (delta < -1e-12 * std::max(1.0, mag)) return true;
      if (delta > 1e-12 * std::max(1.0, mag)) continue;
      const auto& V = ip_.variables;
      Rational exact = V[gg[ok]].objective + V[gk[og]].objective - V[gg[og]].objective - V[gk[ok]].objective;
      if (exact < 0) return true;
      if (exact == 0 && og > ok) return true;
    }
    return false;
  }

  void apply(int var, int sign) {
    for (const auto& e : entries_[var]) act_[e.row] += sign * static_cast<Wide>(e.a);
  }

  void dfs(size_t k) {
    if (timed_out_) return;
    if ((++nodes_ & 1023) == 0 && elapsed() > opts_.time_limit_s) {
      timed_out_ = true;
      return;
    }
    if (k == groups_.size()) {
      leaf();
      return;
    }
    const auto& g = groups_[k];
    for (int o = 0; o < static_cast<int>(g.size()); ++o) {
      int v = g[o];
      if (dominated(k, o)) continue;
      choice_[k] = o;
      apply(v, +1);
      obj_acc_ += obj_d_[v];
      if (feasible_at(k + 1) && !prune_by_bound(lower_bound(k + 1))) dfs(k + 1);
      obj_acc_ -= obj_d_[v];
      apply(v, -1);
      choice_[k] = -1;
      if (timed_out_) return;
    }
  }

  bool free_feasible(size_t f) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      if (act_[r] + free_min_[f][r] > rows_[r].rhs) return false;
      if (rows_[r].eq && act_[r] + free_max_[f][r] < rows_[r].rhs) return false;
    }
    return true;
  }

  // Fills the free variables; returns true to stop (first feasible point is
  // enough when they carry no cost).
  bool fill_free(size_t f) {
    if (!free_feasible(f)) return false;
    if (f == free_.size()) {
      record();
      return free_zero_obj_;
    }
    int v = free_[f];
    for (int64_t x = 0; x <= ip_.variables[v].ub; ++x) {
      free_val_[f] = x;
      for (const auto& e : entries_[v]) act_[e.row] += static_cast<Wide>(x) * e.a;
      bool stop = fill_free(f + 1);
      for (const auto& e : entries_[v]) act_[e.row] -= static_cast<Wide>(x) * e.a;
      free_val_[f] = 0;
      if (stop) return true;
    }
    return false;
  }

  void leaf() { fill_free(0); }

  void record() {
    Rational obj = 0;
    std::vector<int64_t> values(ip_.variables.size(), 0);
    for (size_t g = 0; g < groups_.size(); ++g) {
      int v = groups_[g][choice_[g]];
      values[v] = 1;
      obj += ip_.variables[v].objective;
    }
    for (size_t f = 0; f < free_.size(); ++f) {
      values[free_[f]] = free_val_[f];
      if (free_val_[f]) obj += ip_.variables[free_[f]].objective * Rational(static_cast<long>(free_val_[f]));
    }
    if (have_incumbent_ && !(obj < best_obj_)) return;
    have_incumbent_ = true;
    best_obj_ = obj;
    best_obj_d_ = to_double(obj);
    best_values_ = std::move(values);
  }

  const IpInstance& ip_;
  SolverOptions opts_;
  std::vector<std::vector<int>> groups_;
  std::vector<int> group_row_;
  std::vector<int> free_;
  std::vector<double> obj_d_;
  std::vector<Row> rows_;
  std::vector<int> row_source_;
  std::vector<std::vector<Entry>> entries_;
  std::vector<std::vector<Wide>> suf_min_, suf_max_, free_min_, free_max_;
  bool free_zero_obj_ = true;
  int budget_row_ = -1;
  double budget_scale_ = 1;
  std::vector<double> start_cost_, start_weight_;
  std::vector<Segment> segments_;
  std::vector<int> klass_;

  std::chrono::steady_clock::time_point start_;
  std::vector<int> choice_;
  std::vector<Wide> act_;
  std::vector<int64_t> free_val_;
  double obj_acc_ = 0;
  uint64_t nodes_ = 0;
  bool timed_out_ = false;
  bool have_incumbent_ = false;
  Rational best_obj_;
  double best_obj_d_ = 0;
  std::vector<int64_t> best_values_;
};

}  // namespace detail

inline SolverSolution solve_exact(const IpInstance& ip, const SolverOptions& opts = {}) {
  return detail::BranchAndBound(ip, opts).run();
}

// Checks a point against every constraint exactly.
inline bool satisfies(const IpInstance& ip, const std::vector<int64_t>& values) {
  if (values.size() != ip.variables.size()) return false;
  for (size_t v = 0; v < values.size(); ++v) {
    if (values[v] < 0 || values[v] > ip.variables[v].ub) return false;
  }
  for (const auto& c : ip.constraints) {
    Rational lhs = 0;
    for (const auto& t : c.terms) {
      if (values[t.var]) lhs += t.coef * Rational(static_cast<long>(values[t.var]));
    }
    if (c.rel == Relation::kEq ? lhs != c.rhs : lhs > c.rhs) return false;
  }
  return true;
}

inline Rational objective_of(const IpInstance& ip, const std::vector<int64_t>& values) {
  Rational obj = 0;
  for (size_t v = 0; v < values.size(); ++v) {
    if (values[v]) obj += ip.variables[v].objective * Rational(static_cast<long>(values[v]));
  }
  return obj;
}

// Tree for a feasible point: u -> leaf, v -> master / incomplete node, z ->
// pruned positions, laid out by the level sweep.
inline CodeTree solution_to_tree(const std::vector<int64_t>& values, const IpInstance& ip) {
  if (!satisfies(ip, values)) fail(ErrorCode::kUnconstructible, "point violates the instance");
  LevelPlan plan;
  plan.family = ip.meta.kind == IpKind::kHuffman ? Family::binary() : ip.meta.family;
  plan.tree_index = ip.meta.tree_index();
  plan.alphabet_size = static_cast<int>(ip.meta.labels.size());
  plan.resize(ip.meta.depth);
  for (size_t v = 0; v < values.size(); ++v) {
    if (!values[v]) continue;
    const auto& key = ip.variables[v].key;
    switch (key.kind) {
      case VarKind::kU: plan.leaves[key.d].push_back(key.t); break;
      case VarKind::kV: plan.branching[key.d].push_back(key.t); break;
      case VarKind::kZ: plan.pruned[key.d] += static_cast<int>(values[v]); break;
    }
  }
  return build_from_levels(plan);
}

inline CodeTree solution_to_tree(const SolverSolution& sol, const IpInstance& ip) {
  if (!sol.has_solution) fail(ErrorCode::kInfeasible, "no solution to build a tree from");
  return solution_to_tree(sol.values, ip);
}

// Deepest depth any symbol node of the point uses.
inline int deepest_depth(const std::vector<int64_t>& values, const IpInstance& ip) {
  int d = 0;
  for (size_t v = 0; v < values.size(); ++v) {
    if (values[v] && ip.variables[v].key.kind != VarKind::kZ) d = std::max(d, ip.variables[v].key.d);
  }
  return d;
}

}  // namespace aifv
