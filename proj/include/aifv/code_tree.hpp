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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aifv/error.hpp"

namespace aifv {

using CodeSymbol = uint8_t;
using Codeword = std::vector<CodeSymbol>;

// "1100" -> {1,1,0,0}. Dots are ignored so "11.01" reads like the usual
// human-readable codeword separators.
inline Codeword parse_codeword(std::string_view text) {
  Codeword out;
  for (char c : text) {
    if (c == '.') continue;
    if (c >= '0' && c <= '9') {
      out.push_back(static_cast<CodeSymbol>(c - '0'));
    } else if (c >= 'a' && c <= 'z') {
      out.push_back(static_cast<CodeSymbol>(10 + c - 'a'));
    } else {
      fail(ErrorCode::kParse, "bad code symbol '" + std::string(1, c) + "'");
    }
  }
  return out;
}

inline char code_symbol_char(CodeSymbol s) {
  return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + (s - 10));
}

inline std::string to_string(const Codeword& w) {
  std::string out;
  out.reserve(w.size());
  for (auto s : w) out.push_back(code_symbol_char(s));
  return out;
}

enum class NodeKind { kLeaf, kComplete, kIncomplete, kMaster, kSlave };

inline std::string_view node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kLeaf: return "leaf";
    case NodeKind::kComplete: return "complete";
    case NodeKind::kIncomplete: return "incomplete";
    case NodeKind::kMaster: return "master";
    case NodeKind::kSlave: return "slave";
  }
  return "?";
}

inline NodeKind parse_node_kind(std::string_view name) {
  if (name == "leaf") return NodeKind::kLeaf;
  if (name == "complete") return NodeKind::kComplete;
  if (name == "incomplete") return NodeKind::kIncomplete;
  if (name == "master") return NodeKind::kMaster;
  if (name == "slave") return NodeKind::kSlave;
  fail(ErrorCode::kParse, "unknown node kind '" + std::string(name) + "'");
}

// Which tree family a code belongs to. KaryTwoTree(K, j) keeps only T0 and
// the tree entered after an incomplete node with j children (T_j); Kary(K)
// is the unrestricted K-1 tree code, supported for hand-built codes only.
struct Family {
  enum class Kind { kBinary, kTernary, kKaryTwoTree, kKary };

  Kind kind = Kind::kBinary;
  int arity = 2;
  int incomplete_children = 1;  // j; meaningful for the two-tree families

  static Family binary() { return {Kind::kBinary, 2, 1}; }
  static Family ternary() { return {Kind::kTernary, 3, 1}; }
  static Family kary_two_tree(int arity, int j) {
    if (arity < 3) fail(ErrorCode::kBadArity, "two-tree K-ary codes need K >= 3");
    if (j < 1 || j > arity - 2) {
      fail(ErrorCode::kBadArity, "incomplete child count j=" + std::to_string(j) +
                                     " outside 1..K-2 for K=" + std::to_string(arity));
    }
    return {Kind::kKaryTwoTree, arity, j};
  }
  static Family kary(int arity) {
    if (arity < 3) fail(ErrorCode::kBadArity, "K-ary codes need K >= 3");
    return {Kind::kKary, arity, 1};
  }

  bool is_binary() const { return kind == Kind::kBinary; }
  bool is_two_tree() const { return kind != Kind::kKary; }

  // Tree indices in tuple order.
  std::vector<int> tree_indices() const {
    switch (kind) {
      case Kind::kBinary:
      case Kind::kTernary: return {0, 1};
      case Kind::kKaryTwoTree: return {0, incomplete_children};
      case Kind::kKary: {
        std::vector<int> out;
        for (int k = 0; k <= arity - 2; ++k) out.push_back(k);
        return out;
      }
    }
    return {};
  }

  // Maximum number of code symbols read past a codeword before it is emitted.
  int delay_bound() const { return is_binary() ? 2 : 1; }

  std::string name() const {
    switch (kind) {
      case Kind::kBinary: return "binary";
      case Kind::kTernary: return "ternary";
      case Kind::kKaryTwoTree:
        return "kary-two-tree(" + std::to_string(arity) + "," + std::to_string(incomplete_children) + ")";
      case Kind::kKary: return "kary(" + std::to_string(arity) + ")";
    }
    return "?";
  }

  friend bool operator==(const Family&, const Family&) = default;
};

struct Node {
  NodeKind kind = NodeKind::kLeaf;
  std::optional<int> symbol;  // index into the code's alphabet
  std::vector<int> children;  // one slot per code symbol, -1 when absent
  int parent = -1;
  int depth = 0;

  int child(int code_symbol) const {
    return code_symbol < static_cast<int>(children.size()) ? children[code_symbol] : -1;
  }
  int child_count() const {
    return static_cast<int>(std::count_if(children.begin(), children.end(), [](int c) { return c >= 0; }));
  }
  // Highest present code symbol + 1; for an incomplete node (root or not)
  // this is the child count the transition rule uses.
  int child_span() const {
    for (int s = static_cast<int>(children.size()) - 1; s >= 0; --s) {
      if (children[s] >= 0) return s + 1;
    }
    return 0;
  }
  bool has_children() const { return child_count() > 0; }
};

// One code tree. Immutable once built; node 0 is the root. Node ids are
// assigned in preorder with children visited in ascending code symbol order,
// which makes equal trees compare equal member-wise.
class CodeTree {
 public:
  struct NodeSpec {
    NodeKind kind;
    std::optional<int> symbol;
    std::map<int, int> children;  // code symbol -> spec index
  };

  CodeTree() = default;

  // Builds a tree from an explicit node list (spec index `root` is the root).
  static CodeTree from_nodes(int arity, int tree_index, int alphabet_size,
                             const std::vector<NodeSpec>& specs, int root = 0) {
    if (arity < 2) fail(ErrorCode::kBadArity, "arity must be >= 2");
    if (specs.empty()) fail(ErrorCode::kInvalidTree, "tree has no nodes");
    CodeTree tree;
    tree.arity_ = arity;
    tree.tree_index_ = tree_index;
    tree.alphabet_size_ = alphabet_size;
    std::vector<int> visited(specs.size(), 0);
    tree.append_preorder(specs, root, -1, 0, visited);
    tree.index_symbols();
    return tree;
  }

  // Builds a tree from (symbol, codeword) pairs, inferring node kinds:
  // symbol-bearing nodes with children are masters (binary) or incomplete
  // nodes (K-ary); symbol-less nodes below a master, or the '0' child of a
  // binary T1 root, are slaves; everything else symbol-less is complete.
  // Missing children of complete nodes are pruned positions.
  static CodeTree from_codewords(int arity, int tree_index, int alphabet_size,
                                 const std::vector<std::pair<int, Codeword>>& codewords) {
    std::vector<NodeSpec> specs(1, NodeSpec{NodeKind::kComplete, std::nullopt, {}});
    for (const auto& [symbol, word] : codewords) {
      int at = 0;
      for (CodeSymbol s : word) {
        if (s >= arity) fail(ErrorCode::kInvalidTree, "code symbol out of range in codeword");
        auto it = specs[at].children.find(s);
        if (it == specs[at].children.end()) {
          specs.push_back(NodeSpec{NodeKind::kComplete, std::nullopt, {}});
          int id = static_cast<int>(specs.size()) - 1;
          specs[at].children.emplace(s, id);
          at = id;
        } else {
          at = it->second;
        }
      }
      if (specs[at].symbol) fail(ErrorCode::kInvalidTree, "two symbols share codeword " + to_string(word));
      specs[at].symbol = symbol;
    }
    // Kind inference, parents before children (specs are created in that order).
    std::vector<int> parent(specs.size(), -1);
    std::vector<int> via(specs.size(), -1);
    for (size_t i = 0; i < specs.size(); ++i) {
      for (auto [s, c] : specs[i].children) {
        parent[c] = static_cast<int>(i);
        via[c] = s;
      }
    }
    for (size_t i = 0; i < specs.size(); ++i) {
      auto& spec = specs[i];
      if (spec.symbol) {
        spec.kind = spec.children.empty() ? NodeKind::kLeaf
                                          : (arity == 2 ? NodeKind::kMaster : NodeKind::kIncomplete);
      } else if (arity == 2 && parent[i] >= 0 &&
                 ((specs[parent[i]].symbol && !specs[parent[i]].children.empty()) ||
                  (parent[i] == 0 && tree_index == 1 && via[i] == 0))) {
        spec.kind = NodeKind::kSlave;
      } else {
        spec.kind = NodeKind::kComplete;
      }
    }
    return from_nodes(arity, tree_index, alphabet_size, specs, 0);
  }

  int arity() const { return arity_; }
  int tree_index() const { return tree_index_; }
  int alphabet_size() const { return alphabet_size_; }
  int root() const { return 0; }
  size_t size() const { return nodes_.size(); }
  const Node& node(int id) const { return nodes_.at(static_cast<size_t>(id)); }
  const std::vector<Node>& nodes() const { return nodes_; }

  // Node carrying symbol t, or -1.
  int symbol_node(int t) const {
    return t >= 0 && t < static_cast<int>(symbol_nodes_.size()) ? symbol_nodes_[t] : -1;
  }
  // Number of nodes carrying symbol t (validation reports anything but 1).
  int symbol_multiplicity(int t) const {
    return t >= 0 && t < static_cast<int>(symbol_counts_.size()) ? symbol_counts_[t] : 0;
  }
  const std::vector<int>& foreign_symbols() const { return foreign_symbols_; }

  Codeword path(int id) const {
    Codeword out;
    for (int at = id; nodes_[at].parent >= 0; at = nodes_[at].parent) {
      int p = nodes_[at].parent;
      const auto& kids = nodes_[p].children;
      int s = static_cast<int>(std::find(kids.begin(), kids.end(), at) - kids.begin());
      out.push_back(static_cast<CodeSymbol>(s));
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  int max_depth() const {
    int d = 0;
    for (const auto& n : nodes_) d = std::max(d, n.depth);
    return d;
  }

  // Index of the tree that encodes the next source symbol after symbol node
  // `id`: 0 after a leaf, 1 after a binary master, j after an incomplete node
  // with j children (an incomplete root of T_k spanning k..Kc-1 counts as Kc).
  int next_tree(int id) const {
    const Node& n = node(id);
    switch (n.kind) {
      case NodeKind::kLeaf: return 0;
      case NodeKind::kMaster: return 1;
      case NodeKind::kIncomplete: return n.child_span();
      default: fail(ErrorCode::kInvalidTree, "node carries no symbol");
    }
  }

  friend bool operator==(const CodeTree& a, const CodeTree& b) {
    if (a.arity_ != b.arity_ || a.tree_index_ != b.tree_index_ || a.nodes_.size() != b.nodes_.size()) {
      return false;
    }
    for (size_t i = 0; i < a.nodes_.size(); ++i) {
      const auto &x = a.nodes_[i], &y = b.nodes_[i];
      if (x.kind != y.kind || x.symbol != y.symbol || x.children != y.children) return false;
    }
    return true;
  }

 private:
  int append_preorder(const std::vector<NodeSpec>& specs, int spec_id, int parent, int depth,
                      std::vector<int>& visited) {
    if (spec_id < 0 || spec_id >= static_cast<int>(specs.size())) {
      fail(ErrorCode::kInvalidTree, "child reference out of range");
    }
    if (visited[spec_id]++) fail(ErrorCode::kInvalidTree, "node reachable twice (not a tree)");
    const NodeSpec& spec = specs[spec_id];
    int id = static_cast<int>(nodes_.size());
    Node n;
    n.kind = spec.kind;
    n.symbol = spec.symbol;
    n.children.assign(static_cast<size_t>(arity_), -1);
    n.parent = parent;
    n.depth = depth;
    nodes_.push_back(n);
    for (auto [s, child] : spec.children) {
      if (s < 0 || s >= arity_) fail(ErrorCode::kInvalidTree, "code symbol out of range");
      int cid = append_preorder(specs, child, id, depth + 1, visited);
      nodes_[id].children[s] = cid;
    }
    return id;
  }

  void index_symbols() {
    symbol_nodes_.assign(static_cast<size_t>(std::max(alphabet_size_, 0)), -1);
    symbol_counts_.assign(symbol_nodes_.size(), 0);
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (!nodes_[i].symbol) continue;
      int t = *nodes_[i].symbol;
      if (t < 0 || t >= alphabet_size_) {
        foreign_symbols_.push_back(static_cast<int>(i));
        continue;
      }
      if (symbol_counts_[t]++ == 0) symbol_nodes_[t] = static_cast<int>(i);
    }
  }

  int arity_ = 2;
  int tree_index_ = 0;
  int alphabet_size_ = 0;
  std::vector<Node> nodes_;
  std::vector<int> symbol_nodes_;
  std::vector<int> symbol_counts_;
  std::vector<int> foreign_symbols_;
};

// An AIFV code: family, alphabet and the tuple of trees in family order
// (T0, T1) / (T0, T_j) / (T0, ..., T_{K-2}).
class AifvCode {
 public:
  AifvCode() = default;
  AifvCode(Family family, std::vector<std::string> alphabet, std::vector<CodeTree> trees)
      : family_(family), alphabet_(std::move(alphabet)), trees_(std::move(trees)) {
    auto expected = family_.tree_indices();
    if (trees_.size() != expected.size()) {
      fail(ErrorCode::kInvalidTree, family_.name() + " code needs " + std::to_string(expected.size()) +
                                        " trees, got " + std::to_string(trees_.size()));
    }
    for (size_t i = 0; i < trees_.size(); ++i) {
      if (trees_[i].arity() != family_.arity) fail(ErrorCode::kInvalidTree, "tree arity differs from family");
      if (trees_[i].tree_index() != expected[i]) {
        fail(ErrorCode::kInvalidTree, "tree #" + std::to_string(i) + " has index " +
                                          std::to_string(trees_[i].tree_index()) + ", expected " +
                                          std::to_string(expected[i]));
      }
      if (trees_[i].alphabet_size() != static_cast<int>(alphabet_.size())) {
        fail(ErrorCode::kAlphabetMismatch, "trees do not share the code alphabet");
      }
    }
  }

  const Family& family() const { return family_; }
  int arity() const { return family_.arity; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<CodeTree>& trees() const { return trees_; }
  const CodeTree& tree_at(size_t position) const { return trees_.at(position); }

  // Tuple position of tree T_k, or -1 when the code has no such tree.
  int position_of(int tree_index) const {
    for (size_t i = 0; i < trees_.size(); ++i) {
      if (trees_[i].tree_index() == tree_index) return static_cast<int>(i);
    }
    return -1;
  }

  std::optional<int> symbol_index(const std::string& label) const {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), label);
    if (it == alphabet_.end()) return std::nullopt;
    return static_cast<int>(it - alphabet_.begin());
  }

  friend bool operator==(const AifvCode& a, const AifvCode& b) {
    return a.family_ == b.family_ && a.alphabet_ == b.alphabet_ && a.trees_ == b.trees_;
  }

 private:
  Family family_;
  std::vector<std::string> alphabet_;
  std::vector<CodeTree> trees_;
};

// Convenience for fixtures: {label, codeword-string} pairs per tree.
inline AifvCode code_from_codeword_lists(
    Family family, const std::vector<std::string>& alphabet,
    const std::vector<std::vector<std::pair<std::string, std::string>>>& per_tree) {
  auto indices = family.tree_indices();
  if (per_tree.size() != indices.size()) fail(ErrorCode::kInvalidTree, "wrong number of codeword lists");
  std::vector<CodeTree> trees;
  for (size_t i = 0; i < per_tree.size(); ++i) {
    std::vector<std::pair<int, Codeword>> words;
    for (const auto& [label, text] : per_tree[i]) {
      auto it = std::find(alphabet.begin(), alphabet.end(), label);
      if (it == alphabet.end()) fail(ErrorCode::kUnknownSymbol, "label '" + label + "' not in alphabet");
      words.emplace_back(static_cast<int>(it - alphabet.begin()), parse_codeword(text));
    }
    trees.push_back(CodeTree::from_codewords(family.arity, indices[i], static_cast<int>(alphabet.size()), words));
  }
  return AifvCode(family, alphabet, std::move(trees));
}

}  // namespace aifv
