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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aifv/code_tree.hpp"
#include "aifv/error.hpp"
#include "aifv/validate.hpp"

namespace aifv {

// Which symbols sit at which depth, as leaves or as branching symbol nodes
// (masters in binary trees, incomplete nodes with `incomplete_children`
// children otherwise), plus pruned positions per depth.
struct LevelPlan {
  Family family = Family::binary();
  int tree_index = 0;
  int alphabet_size = 0;
  std::vector<std::vector<int>> leaves;     // [depth] -> symbols
  std::vector<std::vector<int>> branching;  // [depth] -> symbols
  std::vector<int> pruned;                  // [depth] -> count

  void resize(int max_depth) {
    size_t n = static_cast<size_t>(max_depth + 1);
    if (leaves.size() < n) leaves.resize(n);
    if (branching.size() < n) branching.resize(n);
    if (pruned.size() < n) pruned.resize(n, 0);
  }
};

// Level sweep. At each depth the open positions are, left to right: the
// positions a branching node above forces (a master's grandchild, the
// children of an incomplete node), then the children of complete nodes.
// Pruned positions are taken from the last complete parents, highest code
// symbol first, never removing a parent's first child. Remaining positions
// receive leaves, then branching nodes, then become complete nodes.
inline CodeTree build_from_levels(const LevelPlan& plan_in) {
  LevelPlan plan = plan_in;
  const int K = plan.family.arity;
  const int j = plan.family.incomplete_children;
  const bool binary = K == 2;
  const int k = plan.tree_index;
  int max_depth = static_cast<int>(std::max({plan.leaves.size(), plan.branching.size(), plan.pruned.size()})) - 1;
  plan.resize(std::max(max_depth, 0) + 3);

  struct Pos {
    int parent;
    int symbol;
  };
  std::vector<CodeTree::NodeSpec> specs;
  std::map<int, std::vector<Pos>> forced, open;
  auto unconstructible = [](const std::string& why) { fail(ErrorCode::kUnconstructible, why); };

  specs.push_back({NodeKind::kComplete, std::nullopt, {}});
  if (!plan.leaves[0].empty() || !plan.branching[0].empty()) {
    if (plan.leaves[0].size() + plan.branching[0].size() != 1 || k != 0) unconstructible("bad root assignment");
    if (!plan.leaves[0].empty()) {
      specs[0] = {NodeKind::kLeaf, plan.leaves[0][0], {}};
    } else if (binary) {
      specs[0] = {NodeKind::kMaster, plan.branching[0][0], {}};
      specs.push_back({NodeKind::kSlave, std::nullopt, {}});
      specs[0].children[0] = 1;
      forced[2].push_back({1, 0});
    } else {
      specs[0] = {NodeKind::kIncomplete, plan.branching[0][0], {}};
      for (int s = 0; s < j; ++s) forced[1].push_back({0, s});
    }
  } else if (binary && k == 1) {
    specs.push_back({NodeKind::kSlave, std::nullopt, {}});
    specs[0].children[0] = 1;
    forced[2].push_back({1, 1});
    open[1].push_back({0, 1});
  } else {
    for (int s = k; s < K; ++s) open[1].push_back({0, s});
  }

  const int last = static_cast<int>(plan.leaves.size()) - 1;
  for (int d = 1; d <= last; ++d) {
    std::vector<Pos> free = open[d];
    int z = plan.pruned[d];
    if (z > 0) {
      if (binary) unconstructible("binary trees have no pruned positions");
      // Drop from the back, keeping each parent's first position.
      std::vector<int> keep(free.size(), 1);
      for (int i = static_cast<int>(free.size()) - 1; i >= 0 && z > 0; --i) {
        bool first_of_parent = i == 0 || free[i - 1].parent != free[i].parent;
        if (!first_of_parent) {
          keep[i] = 0;
          --z;
        }
      }
      if (z > 0) unconstructible("too many pruned positions at depth " + std::to_string(d));
      std::vector<Pos> kept;
      for (size_t i = 0; i < free.size(); ++i) {
        if (keep[i]) kept.push_back(free[i]);
      }
      free.swap(kept);
    }
    std::vector<Pos> all = forced[d];
    all.insert(all.end(), free.begin(), free.end());
    const auto& L = plan.leaves[d];
    const auto& B = plan.branching[d];
    if (L.size() + B.size() > all.size()) {
      unconstructible("depth " + std::to_string(d) + " has " + std::to_string(all.size()) + " positions for " +
                      std::to_string(L.size() + B.size()) + " symbols");
    }
    size_t next = 0;
    auto attach = [&](const Pos& p, CodeTree::NodeSpec spec) {
      specs.push_back(std::move(spec));
      int id = static_cast<int>(specs.size()) - 1;
      specs[p.parent].children[p.symbol] = id;
      return id;
    };
    for (int t : L) attach(all[next++], {NodeKind::kLeaf, t, {}});
    for (int t : B) {
      if (binary) {
        int m = attach(all[next++], {NodeKind::kMaster, t, {}});
        int s = attach({m, 0}, {NodeKind::kSlave, std::nullopt, {}});
        forced[d + 2].push_back({s, 0});
      } else {
        int m = attach(all[next++], {NodeKind::kIncomplete, t, {}});
        for (int s = 0; s < j; ++s) forced[d + 1].push_back({m, s});
      }
    }
    for (; next < all.size(); ++next) {
      int c = attach(all[next], {NodeKind::kComplete, std::nullopt, {}});
      for (int s = 0; s < K; ++s) open[d + 1].push_back({c, s});
    }
  }
  for (const auto* m : {&forced, &open}) {
    for (const auto& [d, v] : *m) {
      if (d > last && !v.empty()) unconstructible("positions left open below depth " + std::to_string(last));
    }
  }
  CodeTree tree = CodeTree::from_nodes(K, k, plan.alphabet_size, specs, 0);
  auto rep = validate_tree(tree, plan.family);
  if (!rep.ok()) unconstructible("reconstructed tree is invalid: " + rep.summary());
  return tree;
}

}  // namespace aifv
