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

// Canonical JSON for trees and codes. Node ids follow the tree's preorder
// numbering, so serializing equal trees yields byte-identical documents.

#include <string>
#include <vector>

#include "json.hpp"

#include "aifv/code_tree.hpp"
#include "aifv/error.hpp"

namespace aifv {

using Json = nlohmann::ordered_json;

inline Json tree_to_json(const CodeTree& tree, const std::vector<std::string>& labels) {
  Json nodes = Json::array();
  for (int id = 0; id < static_cast<int>(tree.size()); ++id) {
    const Node& n = tree.node(id);
    Json jn;
    jn["id"] = id;
    jn["kind"] = std::string(node_kind_name(n.kind));
    if (n.symbol) jn["symbol"] = labels.at(static_cast<size_t>(*n.symbol));
    Json kids = Json::object();
    for (int s = 0; s < tree.arity(); ++s) {
      if (n.children[s] >= 0) kids[std::to_string(s)] = n.children[s];
    }
    jn["children"] = kids;
    nodes.push_back(jn);
  }
  Json out;
  out["arity"] = tree.arity();
  out["tree_index"] = tree.tree_index();
  out["root"] = tree.root();
  out["nodes"] = nodes;
  return out;
}

inline CodeTree tree_from_json(const Json& j, const std::vector<std::string>& labels) {
  try {
    int arity = j.at("arity").get<int>();
    int tree_index = j.at("tree_index").get<int>();
    int root = j.value("root", 0);
    const Json& nodes = j.at("nodes");
    std::vector<CodeTree::NodeSpec> specs(nodes.size());
    std::vector<int> seen(nodes.size(), 0);
    for (size_t i = 0; i < nodes.size(); ++i) {
      const Json& jn = nodes[i];
      int id = jn.value("id", static_cast<int>(i));
      if (id < 0 || id >= static_cast<int>(nodes.size()) || seen[id]++) {
        fail(ErrorCode::kParse, "node ids must be dense and unique");
      }
      auto& spec = specs[id];
      spec.kind = parse_node_kind(jn.at("kind").get<std::string>());
      if (jn.contains("symbol")) {
        auto label = jn.at("symbol").get<std::string>();
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) fail(ErrorCode::kAlphabetMismatch, "tree uses unknown label '" + label + "'");
        spec.symbol = static_cast<int>(it - labels.begin());
      }
      if (jn.contains("children")) {
        for (auto it = jn.at("children").begin(); it != jn.at("children").end(); ++it) {
          spec.children[std::stoi(it.key())] = it.value().get<int>();
        }
      }
    }
    return CodeTree::from_nodes(arity, tree_index, static_cast<int>(labels.size()), specs, root);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("tree JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::kParse, "tree JSON: non-numeric child key");
  }
}

inline std::string family_tag_name(const Family& f) {
  switch (f.kind) {
    case Family::Kind::kBinary: return "binary";
    case Family::Kind::kTernary: return "ternary";
    case Family::Kind::kKaryTwoTree: return "kary-two-tree";
    case Family::Kind::kKary: return "kary";
  }
  return "?";
}

inline Family family_from_tag(const std::string& tag, int arity, int j) {
  if (tag == "binary") return Family::binary();
  if (tag == "ternary") return Family::ternary();
  if (tag == "kary-two-tree") return Family::kary_two_tree(arity, j);
  if (tag == "kary") return Family::kary(arity);
  fail(ErrorCode::kParse, "unknown family '" + tag + "'");
}

inline Json code_to_json(const AifvCode& code) {
  Json out;
  out["family"] = family_tag_name(code.family());
  out["arity"] = code.arity();
  out["j"] = code.family().incomplete_children;
  out["alphabet"] = code.alphabet();
  Json trees = Json::array();
  for (const auto& t : code.trees()) trees.push_back(tree_to_json(t, code.alphabet()));
  out["trees"] = trees;
  return out;
}

inline AifvCode code_from_json(const Json& j) {
  try {
    auto family = family_from_tag(j.at("family").get<std::string>(), j.at("arity").get<int>(), j.value("j", 1));
    auto alphabet = j.at("alphabet").get<std::vector<std::string>>();
    std::vector<CodeTree> trees;
    for (const auto& jt : j.at("trees")) trees.push_back(tree_from_json(jt, alphabet));
    return AifvCode(family, std::move(alphabet), std::move(trees));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("code JSON: ") + e.what());
  }
}

inline std::string serialize_code(const AifvCode& code, int indent = -1) { return code_to_json(code).dump(indent); }

inline AifvCode parse_code(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("code JSON: ") + e.what());
  }
  return code_from_json(j);
}

}  // namespace aifv
