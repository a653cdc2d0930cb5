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

#include <string>
#include <string_view>
#include <vector>

#include "aifv/code_tree.hpp"
#include "aifv/rational.hpp"

namespace aifv {

enum class Violation {
  kMissingSymbol,
  kDuplicateSymbol,
  kForeignSymbol,
  kLeafWithoutSymbol,
  kLeafHasChildren,
  kCompleteHasSymbol,
  kCompleteMissingChildren,
  kCompleteNoChildren,
  kIncompleteWithoutSymbol,
  kIncompleteBadChildren,
  kIncompleteInBinary,
  kIncompleteRootNotAllowed,
  kTransitionTargetMissing,
  kMasterInKary,
  kMasterWithoutSymbol,
  kMasterBadChildren,
  kMasterChildNotSlave,
  kSlaveOutsideChain,
  kSlaveHasSymbol,
  kSlaveBadChildren,
  kSlaveChildIsSlave,
  kRootChildOutOfRange,
  kRootNotSlaveAt0,
  kRootGrandchild00,
  kArityMismatch,
  kTreeIndexOutOfRange,
};

inline std::string_view violation_name(Violation v) {
  switch (v) {
    case Violation::kMissingSymbol: return "MissingSymbol";
    case Violation::kDuplicateSymbol: return "DuplicateSymbol";
    case Violation::kForeignSymbol: return "ForeignSymbol";
    case Violation::kLeafWithoutSymbol: return "LeafWithoutSymbol";
    case Violation::kLeafHasChildren: return "LeafHasChildren";
    case Violation::kCompleteHasSymbol: return "CompleteHasSymbol";
    case Violation::kCompleteMissingChildren: return "CompleteMissingChildren";
    case Violation::kCompleteNoChildren: return "CompleteNoChildren";
    case Violation::kIncompleteWithoutSymbol: return "IncompleteWithoutSymbol";
    case Violation::kIncompleteBadChildren: return "IncompleteBadChildren";
    case Violation::kIncompleteInBinary: return "IncompleteInBinary";
    case Violation::kIncompleteRootNotAllowed: return "IncompleteRootNotAllowed";
    case Violation::kTransitionTargetMissing: return "TransitionTargetMissing";
    case Violation::kMasterInKary: return "MasterInKary";
    case Violation::kMasterWithoutSymbol: return "MasterWithoutSymbol";
    case Violation::kMasterBadChildren: return "MasterBadChildren";
    case Violation::kMasterChildNotSlave: return "MasterChildNotSlave";
    case Violation::kSlaveOutsideChain: return "SlaveOutsideChain";
    case Violation::kSlaveHasSymbol: return "SlaveHasSymbol";
    case Violation::kSlaveBadChildren: return "SlaveBadChildren";
    case Violation::kSlaveChildIsSlave: return "SlaveChildIsSlave";
    case Violation::kRootChildOutOfRange: return "RootChildOutOfRange";
    case Violation::kRootNotSlaveAt0: return "RootNotSlaveAt0";
    case Violation::kRootGrandchild00: return "RootGrandchild00";
    case Violation::kArityMismatch: return "ArityMismatch";
    case Violation::kTreeIndexOutOfRange: return "TreeIndexOutOfRange";
  }
  return "?";
}

struct ValidationIssue {
  Violation kind;
  int node;  // -1 for tree-level issues
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool has(Violation v) const {
    for (const auto& i : issues) {
      if (i.kind == v) return true;
    }
    return false;
  }
  std::string summary() const {
    std::string out;
    for (const auto& i : issues) {
      if (!out.empty()) out += "; ";
      out += std::string(violation_name(i.kind));
      if (i.node >= 0) out += " @" + std::to_string(i.node);
      if (!i.detail.empty()) out += " (" + i.detail + ")";
    }
    return out;
  }
};

namespace detail {

// Present children are exactly {lo, ..., hi-1}.
inline bool children_exactly(const Node& n, int lo, int hi) {
  for (int s = 0; s < static_cast<int>(n.children.size()); ++s) {
    bool want = s >= lo && s < hi;
    if ((n.children[s] >= 0) != want) return false;
  }
  return true;
}

inline void validate_binary(const CodeTree& tree, ValidationReport& rep) {
  auto add = [&](Violation v, int id, std::string d = {}) { rep.issues.push_back({v, id, std::move(d)}); };
  const bool t1 = tree.tree_index() == 1;
  for (int id = 0; id < static_cast<int>(tree.size()); ++id) {
    const Node& n = tree.node(id);
    const bool is_root = id == tree.root();
    const Node* parent = n.parent >= 0 ? &tree.node(n.parent) : nullptr;
    switch (n.kind) {
      case NodeKind::kLeaf:
        if (!n.symbol) add(Violation::kLeafWithoutSymbol, id);
        if (n.has_children()) add(Violation::kLeafHasChildren, id);
        break;
      case NodeKind::kComplete:
        if (n.symbol) add(Violation::kCompleteHasSymbol, id);
        if (n.child_count() != 2) add(Violation::kCompleteMissingChildren, id);
        break;
      case NodeKind::kIncomplete:
        add(Violation::kIncompleteInBinary, id);
        break;
      case NodeKind::kMaster: {
        if (!n.symbol) add(Violation::kMasterWithoutSymbol, id);
        if (!children_exactly(n, 0, 1)) {
          add(Violation::kMasterBadChildren, id);
        }
        int c = n.child(0);
        if (c >= 0 && tree.node(c).kind != NodeKind::kSlave) add(Violation::kMasterChildNotSlave, id);
        if (is_root && t1) add(Violation::kRootNotSlaveAt0, id, "T1 root cannot carry a symbol");
        break;
      }
      case NodeKind::kSlave: {
        if (n.symbol) add(Violation::kSlaveHasSymbol, id);
        const bool under_master = parent && parent->kind == NodeKind::kMaster;
        const bool under_t1_root = parent && t1 && n.parent == tree.root() && parent->child(0) == id;
        if (!under_master && !under_t1_root) {
          add(Violation::kSlaveOutsideChain, id);
          break;
        }
        // A master's slave continues via '0'; the T1 root's slave via '1'
        // (the root may not have a grandchild at "00").
        if (under_master) {
          if (!children_exactly(n, 0, 1)) add(Violation::kSlaveBadChildren, id);
        } else if (n.child(0) >= 0) {
          add(Violation::kRootGrandchild00, id);
        } else if (n.child(1) < 0) {
          add(Violation::kSlaveBadChildren, id);
        }
        for (int c : n.children) {
          if (c >= 0 && tree.node(c).kind == NodeKind::kSlave) add(Violation::kSlaveChildIsSlave, id);
        }
        break;
      }
    }
  }
  if (t1) {
    const Node& root = tree.node(tree.root());
    if (root.kind != NodeKind::kMaster) {
      int c0 = root.child(0);
      if (root.kind != NodeKind::kComplete || c0 < 0 || tree.node(c0).kind != NodeKind::kSlave) {
        add(Violation::kRootNotSlaveAt0, tree.root());
      }
    }
  }
}

inline void validate_kary(const CodeTree& tree, const Family& family, ValidationReport& rep) {
  auto add = [&](Violation v, int id, std::string d = {}) { rep.issues.push_back({v, id, std::move(d)}); };
  const int K = tree.arity();
  const int k = tree.tree_index();
  auto indices = family.tree_indices();
  auto target_exists = [&](int j) { return std::find(indices.begin(), indices.end(), j) != indices.end(); };
  for (int id = 0; id < static_cast<int>(tree.size()); ++id) {
    const Node& n = tree.node(id);
    const bool is_root = id == tree.root();
    switch (n.kind) {
      case NodeKind::kLeaf:
        if (!n.symbol) add(Violation::kLeafWithoutSymbol, id);
        if (n.has_children()) add(Violation::kLeafHasChildren, id);
        break;
      case NodeKind::kComplete:
        // Missing children are pruned positions; at least one must remain.
        if (n.symbol) add(Violation::kCompleteHasSymbol, id);
        if (!n.has_children()) add(Violation::kCompleteNoChildren, id);
        if (is_root && k > 0) {
          for (int s = 0; s < k; ++s) {
            if (n.child(s) >= 0) add(Violation::kRootChildOutOfRange, id, "child " + std::to_string(s));
          }
        }
        break;
      case NodeKind::kIncomplete: {
        if (!n.symbol) add(Violation::kIncompleteWithoutSymbol, id);
        const int lo = is_root ? k : 0;
        const int span = n.child_span();
        if (is_root && k > K - 3) add(Violation::kIncompleteRootNotAllowed, id);
        // Children exactly lo..span-1; the node has span-lo of them, 1..K-2.
        if (span - lo < 1 || span - lo > K - 2 || !children_exactly(n, lo, span)) {
          add(Violation::kIncompleteBadChildren, id);
        } else if (!target_exists(span)) {
          add(Violation::kTransitionTargetMissing, id, "T" + std::to_string(span));
        }
        break;
      }
      case NodeKind::kMaster:
        add(Violation::kMasterInKary, id);
        break;
      case NodeKind::kSlave:
        add(Violation::kSlaveOutsideChain, id);
        break;
    }
  }
}

}  // namespace detail

inline ValidationReport validate_tree(const CodeTree& tree, const Family& family) {
  ValidationReport rep;
  if (tree.arity() != family.arity) {
    rep.issues.push_back({Violation::kArityMismatch, -1, {}});
    return rep;
  }
  auto indices = family.tree_indices();
  if (std::find(indices.begin(), indices.end(), tree.tree_index()) == indices.end()) {
    rep.issues.push_back({Violation::kTreeIndexOutOfRange, -1, "T" + std::to_string(tree.tree_index())});
    return rep;
  }
  for (int t = 0; t < tree.alphabet_size(); ++t) {
    int m = tree.symbol_multiplicity(t);
    if (m == 0) rep.issues.push_back({Violation::kMissingSymbol, -1, "symbol #" + std::to_string(t)});
    if (m > 1) rep.issues.push_back({Violation::kDuplicateSymbol, tree.symbol_node(t), {}});
  }
  for (int id : tree.foreign_symbols()) rep.issues.push_back({Violation::kForeignSymbol, id, {}});
  if (family.is_binary()) {
    detail::validate_binary(tree, rep);
  } else {
    detail::validate_kary(tree, family, rep);
  }
  return rep;
}

inline ValidationReport validate_code(const AifvCode& code) {
  ValidationReport rep;
  for (size_t i = 0; i < code.trees().size(); ++i) {
    auto r = validate_tree(code.tree_at(i), code.family());
    for (auto& issue : r.issues) {
      issue.detail = "T" + std::to_string(code.tree_at(i).tree_index()) + (issue.detail.empty() ? "" : ": ") +
                     issue.detail;
      rep.issues.push_back(std::move(issue));
    }
  }
  return rep;
}

inline void require_valid(const CodeTree& tree, const Family& family) {
  auto rep = validate_tree(tree, family);
  if (!rep.ok()) fail(ErrorCode::kInvalidTree, rep.summary());
}

inline void require_valid(const AifvCode& code) {
  auto rep = validate_code(code);
  if (!rep.ok()) fail(ErrorCode::kInvalidTree, rep.summary());
}

// Right-hand side of the family's Kraft-like equality for this tree:
// 1 for T0, 3/4 for the binary T1, (K-k)/K for a K-ary T_k.
inline Rational kraft_target(const CodeTree& tree) {
  if (tree.tree_index() == 0) return 1;
  if (tree.arity() == 2) return make_rational(3, 4);
  return make_rational(tree.arity() - tree.tree_index(), tree.arity());
}

// Left-hand side of the Kraft-like equality. Leaves weigh K^-d, incomplete
// nodes with j children (K-j)/K * K^-d, binary masters 3/4 * 2^-d, and each
// pruned position below a complete node counts as a leaf.
inline Rational kraft_weight(const CodeTree& tree, const Family& family) {
  require_valid(tree, family);
  const int K = tree.arity();
  Rational sum = 0;
  for (int id = 0; id < static_cast<int>(tree.size()); ++id) {
    const Node& n = tree.node(id);
    switch (n.kind) {
      case NodeKind::kLeaf: sum += inv_pow(K, n.depth); break;
      case NodeKind::kMaster: sum += make_rational(3, 4) * inv_pow(K, n.depth); break;
      case NodeKind::kIncomplete: {
        // An incomplete root of T_k spans k..j-1 and weighs like j children.
        int j = n.child_span();
        sum += make_rational(K - j, K) * inv_pow(K, n.depth);
        break;
      }
      case NodeKind::kComplete: {
        if (K == 2) break;
        int lo = id == tree.root() ? tree.tree_index() : 0;
        int missing = 0;
        for (int s = lo; s < K; ++s) missing += n.child(s) < 0;
        sum += Rational(missing) * inv_pow(K, n.depth + 1);
        break;
      }
      case NodeKind::kSlave: break;
    }
  }
  return sum;
}

// Number of pruned positions of a valid K-ary tree, by depth.
inline std::vector<int> pruned_positions_by_depth(const CodeTree& tree) {
  std::vector<int> out(static_cast<size_t>(tree.max_depth() + 2), 0);
  if (tree.arity() == 2) return out;
  for (int id = 0; id < static_cast<int>(tree.size()); ++id) {
    const Node& n = tree.node(id);
    if (n.kind != NodeKind::kComplete) continue;
    int lo = id == tree.root() ? tree.tree_index() : 0;
    for (int s = lo; s < tree.arity(); ++s) out[n.depth + 1] += n.child(s) < 0;
  }
  return out;
}

}  // namespace aifv
