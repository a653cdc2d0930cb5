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

#include <gtest/gtest.h>

#include "aifv/aifv.hpp"
#include "fixtures.hpp"

namespace aifv {
namespace {

using fixtures::q;

TEST(Distribution, AcceptsExactUnitSum) {
  auto d = make_distribution({"a", "b", "c", "d"}, {q(9, 20), q(6, 20), q(4, 20), q(1, 20)});
  EXPECT_EQ(d.size(), 4u);
  EXPECT_EQ(d.prob(0), q(9, 20));
  EXPECT_EQ(*d.index_of("c"), 2u);
}

TEST(Distribution, Rejections) {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParse;
  };
  EXPECT_EQ(code_of([] { make_distribution({"a", "b"}, {q(1, 2), q(1, 3)}); }), ErrorCode::kNonUnitSum);
  EXPECT_EQ(code_of([] { make_distribution({"a", "b"}, {q(3, 2), q(-1, 2)}); }), ErrorCode::kNonPositiveProbability);
  EXPECT_EQ(code_of([] { make_distribution({}, {}); }), ErrorCode::kEmptyAlphabet);
  EXPECT_EQ(code_of([] { make_distribution({"a"}, {q(1, 2), q(1, 2)}); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([] { family_distribution(DistributionFamily::kLinear, 1); }), ErrorCode::kEmptyAlphabet);
}

TEST(Distribution, Families) {
  auto p0 = family_distribution(DistributionFamily::kUniform, 5);
  for (const auto& p : p0.probs()) EXPECT_EQ(p, q(1, 5));
  auto p1 = family_distribution(DistributionFamily::kLinear, 3);
  EXPECT_EQ(p1.probs(), (std::vector<Rational>{q(1, 6), q(2, 6), q(3, 6)}));
  auto p2 = family_distribution(DistributionFamily::kQuadratic, 4);
  EXPECT_EQ(p2.probs(), (std::vector<Rational>{q(1, 30), q(4, 30), q(9, 30), q(16, 30)}));
  for (size_t n = 2; n <= 64; ++n) {
    for (auto f : {DistributionFamily::kUniform, DistributionFamily::kLinear, DistributionFamily::kQuadratic}) {
      Rational s = 0;
      auto d = family_distribution(f, n);
      for (const auto& p : d.probs()) s += p;
      EXPECT_EQ(s, 1);
    }
  }
}

TEST(Distribution, Entropy) {
  EXPECT_NEAR(entropy(fixtures::uniform(5), 3), 1.4649735207179269, 1e-12);
  EXPECT_NEAR(entropy(fixtures::four_ternary_skewed(), 3), 0.6448, 1e-4);
  EXPECT_DOUBLE_EQ(entropy(fixtures::uniform(3), 3), 1.0);
  EXPECT_NEAR(entropy(fixtures::four_skewed(), 2), 1.7200, 1e-4);
}

TEST(Rational, ParsesDecimalsExactly) {
  EXPECT_EQ(parse_rational("0.45"), q(9, 20));
  EXPECT_EQ(parse_rational("3/12"), q(1, 4));
  EXPECT_EQ(parse_rational("1e-2"), q(1, 100));
  EXPECT_EQ(parse_rational("-.5"), q(-1, 2));
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(Rational, DyadicApproximation) {
  auto c = default_cost(Family::binary());
  EXPECT_LT(std::abs(to_double(c) - (2 - std::log2(3.0))), 1e-12);
  mpz_class den = c.get_den();
  EXPECT_LE(mpz_sizeinbase(den.get_mpz_t(), 2), static_cast<size_t>(kCostBits + 1));
}

TEST(CodeTree, FromCodewordsInfersKinds) {
  auto code = fixtures::ternary_five();
  const auto& t0 = code.trees()[0];
  EXPECT_EQ(t0.node(t0.symbol_node(1)).kind, NodeKind::kIncomplete);
  EXPECT_EQ(t0.node(t0.symbol_node(0)).kind, NodeKind::kLeaf);
  EXPECT_EQ(t0.next_tree(t0.symbol_node(1)), 1);
  auto bin = fixtures::binary_four();
  const auto& b1 = bin.trees()[1];
  EXPECT_EQ(b1.node(b1.node(0).child(0)).kind, NodeKind::kSlave);
  EXPECT_EQ(b1.node(b1.symbol_node(2)).kind, NodeKind::kMaster);
}

TEST(Validate, ReferenceCodesAreValid) {
  for (const auto& code : {fixtures::ternary_five(), fixtures::binary_four(), fixtures::binary_master_root(),
                           fixtures::ternary_incomplete_root(), fixtures::quaternary_ten(),
                           fixtures::quaternary_eight()}) {
    auto rep = validate_code(code);
    EXPECT_TRUE(rep.ok()) << rep.summary();
  }
}

TEST(Validate, MasterChildMustBeSlave) {
  // Master at "1" whose only child is a leaf.
  std::vector<CodeTree::NodeSpec> specs{{NodeKind::kComplete, std::nullopt, {{0, 1}, {1, 2}}},
                                        {NodeKind::kLeaf, 0, {}},
                                        {NodeKind::kMaster, 1, {{0, 3}}},
                                        {NodeKind::kLeaf, 2, {}}};
  auto t = CodeTree::from_nodes(2, 0, 3, specs);
  EXPECT_TRUE(validate_tree(t, Family::binary()).has(Violation::kMasterChildNotSlave));
}

TEST(Validate, T1RootGrandchild00) {
  std::vector<CodeTree::NodeSpec> specs{{NodeKind::kComplete, std::nullopt, {{0, 1}, {1, 2}}},
                                        {NodeKind::kSlave, std::nullopt, {{0, 3}, {1, 4}}},
                                        {NodeKind::kLeaf, 0, {}},
                                        {NodeKind::kLeaf, 1, {}},
                                        {NodeKind::kLeaf, 2, {}}};
  auto t = CodeTree::from_nodes(2, 1, 3, specs);
  EXPECT_TRUE(validate_tree(t, Family::binary()).has(Violation::kRootGrandchild00));
}

TEST(Validate, StructuralViolations) {
  // Duplicate and missing symbols.
  std::vector<CodeTree::NodeSpec> dup{{NodeKind::kComplete, std::nullopt, {{0, 1}, {1, 2}}},
                                      {NodeKind::kLeaf, 0, {}},
                                      {NodeKind::kLeaf, 0, {}}};
  auto rep = validate_tree(CodeTree::from_nodes(2, 0, 2, dup), Family::binary());
  EXPECT_TRUE(rep.has(Violation::kDuplicateSymbol));
  EXPECT_TRUE(rep.has(Violation::kMissingSymbol));
  // Incomplete node in a binary tree.
  std::vector<CodeTree::NodeSpec> inc{{NodeKind::kComplete, std::nullopt, {{0, 1}, {1, 2}}},
                                      {NodeKind::kIncomplete, 0, {{0, 3}}},
                                      {NodeKind::kLeaf, 1, {}},
                                      {NodeKind::kLeaf, 2, {}}};
  EXPECT_TRUE(validate_tree(CodeTree::from_nodes(2, 0, 3, inc), Family::binary()).has(Violation::kIncompleteInBinary));
  // Ternary incomplete node with two children points at a tree that does not exist.
  std::vector<CodeTree::NodeSpec> far{{NodeKind::kComplete, std::nullopt, {{0, 1}, {1, 2}, {2, 3}}},
                                      {NodeKind::kIncomplete, 0, {{0, 4}, {1, 5}}},
                                      {NodeKind::kLeaf, 1, {}},
                                      {NodeKind::kLeaf, 2, {}},
                                      {NodeKind::kLeaf, 3, {}},
                                      {NodeKind::kLeaf, 4, {}}};
  EXPECT_FALSE(validate_tree(CodeTree::from_nodes(3, 0, 5, far), Family::ternary()).ok());
  // T1 of a ternary code may not use child 0 of the root.
  std::vector<CodeTree::NodeSpec> low{{NodeKind::kComplete, std::nullopt, {{0, 1}, {1, 2}, {2, 3}}},
                                      {NodeKind::kLeaf, 0, {}},
                                      {NodeKind::kLeaf, 1, {}},
                                      {NodeKind::kLeaf, 2, {}}};
  EXPECT_TRUE(validate_tree(CodeTree::from_nodes(3, 1, 3, low), Family::ternary()).has(Violation::kRootChildOutOfRange));
}

TEST(Kraft, ReferenceTrees) {
  auto f1 = fixtures::ternary_five();
  EXPECT_EQ(kraft_weight(f1.trees()[0], f1.family()), 1);
  EXPECT_EQ(kraft_weight(f1.trees()[1], f1.family()), q(2, 3));
  auto f6 = fixtures::binary_four();
  EXPECT_EQ(kraft_weight(f6.trees()[0], f6.family()), 1);
  EXPECT_EQ(kraft_weight(f6.trees()[1], f6.family()), q(3, 4));
  auto plain = code_from_codeword_lists(Family::binary(), {"a", "b", "c", "d"},
                                        {{{"a", "00"}, {"b", "01"}, {"c", "10"}, {"d", "11"}},
                                         {{"a", "01"}, {"b", "10"}, {"c", "110"}, {"d", "111"}}});
  EXPECT_EQ(kraft_weight(plain.trees()[0], plain.family()), 1);
  for (const auto& code : {fixtures::binary_master_root(), fixtures::ternary_incomplete_root(),
                           fixtures::quaternary_ten(), fixtures::quaternary_eight()}) {
    for (const auto& t : code.trees()) EXPECT_EQ(kraft_weight(t, code.family()), kraft_target(t));
  }
}

TEST(Serialize, RoundTrip) {
  for (const auto& code : {fixtures::ternary_five(), fixtures::binary_four(), fixtures::binary_master_root(),
                           fixtures::quaternary_ten(), fixtures::quaternary_eight()}) {
    std::string s = serialize_code(code, 2);
    auto back = parse_code(s);
    EXPECT_EQ(back, code);
    EXPECT_EQ(serialize_code(back, 2), s);
  }
}

TEST(Serialize, ChildrenKeysAscending) {
  auto j = code_to_json(fixtures::ternary_five());
  const auto& nodes = j["trees"][0]["nodes"];
  for (const auto& n : nodes) {
    std::string prev;
    for (const auto& [k, v] : n["children"].items()) {
      EXPECT_LT(prev, k);
      prev = k;
    }
  }
}

TEST(Serialize, RejectsGarbage) {
  EXPECT_THROW(parse_code("{not json"), Error);
  EXPECT_THROW(parse_code("{\"family\":\"binary\"}"), Error);
}

TEST(DistFile, ParsesCommentsAndDecimals) {
  auto d = parse_distribution_text("# four symbols\na 0.45\nb 3/10  # inline\n\nc 0.2\nd 1/20\n");
  EXPECT_EQ(d, fixtures::four_skewed());
  EXPECT_THROW(parse_distribution_text("a 1/2 extra\nb 1/2\n"), Error);
  EXPECT_THROW(parse_distribution_text("a 1/2\nb 1/3\n"), Error);
  EXPECT_EQ(parse_distribution_text(format_distribution(d)), d);
}

}  // namespace
}  // namespace aifv
