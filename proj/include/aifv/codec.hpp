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
#include <cstddef>
#include <string>
#include <vector>

#include "aifv/code_tree.hpp"
#include "aifv/error.hpp"
#include "aifv/validate.hpp"

namespace aifv {

struct CodewordEntry {
  Codeword word;
  int children = 0;       // 0 for a leaf, j for an incomplete node, 1 for a master
  int next_tree = 0;      // tree index used for the following symbol
  int next_position = 0;  // same, as a position in the code's tree tuple
};

class CodewordTable {
 public:
  CodewordTable() = default;
  explicit CodewordTable(const AifvCode& code) : arity_(code.arity()) {
    require_valid(code);
    for (const auto& tree : code.trees()) {
      std::vector<CodewordEntry> entries;
      for (int t = 0; t < static_cast<int>(code.alphabet().size()); ++t) {
        int id = tree.symbol_node(t);
        const Node& n = tree.node(id);
        CodewordEntry e;
        e.word = tree.path(id);
        e.next_tree = tree.next_tree(id);
        e.children = n.kind == NodeKind::kLeaf ? 0 : (n.kind == NodeKind::kMaster ? 1 : n.child_span());
        e.next_position = code.position_of(e.next_tree);
        if (e.next_position < 0) fail(ErrorCode::kInvalidTree, "transition to a tree the code does not have");
        if (e.word.empty() && id != tree.root()) fail(ErrorCode::kInvalidTree, "empty codeword off the root");
        entries.push_back(std::move(e));
      }
      tree_indices_.push_back(tree.tree_index());
      entries_.push_back(std::move(entries));
    }
  }

  int arity() const { return arity_; }
  size_t num_trees() const { return entries_.size(); }
  int tree_index(size_t position) const { return tree_indices_.at(position); }
  const CodewordEntry& entry(size_t position, int symbol) const {
    return entries_.at(position).at(static_cast<size_t>(symbol));
  }
  size_t alphabet_size() const { return entries_.empty() ? 0 : entries_[0].size(); }

 private:
  int arity_ = 2;
  std::vector<int> tree_indices_;
  std::vector<std::vector<CodewordEntry>> entries_;
};

inline CodewordTable codeword_table(const AifvCode& code) { return CodewordTable(code); }

inline std::vector<int> symbols_from_labels(const AifvCode& code, const std::vector<std::string>& labels) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& l : labels) {
    auto t = code.symbol_index(l);
    if (!t) fail(ErrorCode::kUnknownSymbol, "'" + l + "' is not in the code alphabet");
    out.push_back(*t);
  }
  return out;
}

// Single characters of `text` as labels.
inline std::vector<std::string> char_labels(const std::string& text) {
  std::vector<std::string> out;
  out.reserve(text.size());
  for (char c : text) out.emplace_back(1, c);
  return out;
}

struct EncodeResult {
  Codeword stream;
  std::vector<int> trace;  // tree index used for each source symbol
};

inline EncodeResult encode(const CodewordTable& table, const std::vector<int>& message) {
  EncodeResult out;
  out.trace.reserve(message.size());
  size_t pos = 0;
  for (int t : message) {
    if (t < 0 || t >= static_cast<int>(table.alphabet_size())) {
      fail(ErrorCode::kUnknownSymbol, "symbol index " + std::to_string(t) + " out of range");
    }
    const auto& e = table.entry(pos, t);
    out.trace.push_back(table.tree_index(pos));
    out.stream.insert(out.stream.end(), e.word.begin(), e.word.end());
    pos = static_cast<size_t>(e.next_position);
  }
  return out;
}

inline EncodeResult encode(const AifvCode& code, const std::vector<int>& message) {
  return encode(CodewordTable(code), message);
}

inline EncodeResult encode(const AifvCode& code, const std::vector<std::string>& message) {
  return encode(CodewordTable(code), symbols_from_labels(code, message));
}

struct TraceStep {
  int tree = 0;      // tree index encoding this symbol
  int children = 0;  // child count of the symbol's node in that tree
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

inline std::vector<TraceStep> transition_trace(const AifvCode& code, const std::vector<int>& message) {
  CodewordTable table(code);
  std::vector<TraceStep> out;
  size_t pos = 0;
  for (int t : message) {
    if (t < 0 || t >= static_cast<int>(table.alphabet_size())) {
      fail(ErrorCode::kUnknownSymbol, "symbol index " + std::to_string(t) + " out of range");
    }
    const auto& e = table.entry(pos, t);
    out.push_back({table.tree_index(pos), e.children});
    pos = static_cast<size_t>(e.next_position);
  }
  return out;
}

inline std::vector<TraceStep> transition_trace(const AifvCode& code, const std::vector<std::string>& message) {
  return transition_trace(code, symbols_from_labels(code, message));
}

struct DecodeStats {
  int max_rewind = 0;         // code symbols read past an emitted codeword, worst case
  std::vector<int> rewinds;   // per emitted symbol
  std::vector<int> trace;     // tree index used for each decoded symbol
};

// Walks the current tree as far as the stream allows, remembers the deepest
// symbol-bearing node on the way, emits it and backs the cursor up to just
// past that node. The number of symbols read beyond the emitted codeword
// (walked-back edges plus the one failed lookup) is checked against the
// family's delay bound.
class Decoder {
 public:
  explicit Decoder(const AifvCode& code) : code_(code), table_(code), bound_(code.family().delay_bound()) {}

  std::vector<int> decode(const Codeword& stream, size_t n_symbols, DecodeStats* stats = nullptr) const {
    std::vector<int> out;
    out.reserve(n_symbols);
    size_t cursor = 0, pos = 0;
    while (out.size() < n_symbols) {
      out.push_back(step(stream, cursor, pos, stats));
    }
    if (cursor != stream.size()) {
      fail(ErrorCode::kCorruptStream, std::to_string(stream.size() - cursor) + " code symbols left after decoding");
    }
    return out;
  }

  // Decodes until `terminator` is produced; the terminator is not returned.
  std::vector<int> decode_until(const Codeword& stream, int terminator, DecodeStats* stats = nullptr) const {
    std::vector<int> out;
    size_t cursor = 0, pos = 0;
    for (;;) {
      if (cursor >= stream.size()) fail(ErrorCode::kTruncatedStream, "stream ended before the end marker");
      int t = step(stream, cursor, pos, stats);
      if (t == terminator) break;
      out.push_back(t);
    }
    if (cursor != stream.size()) {
      fail(ErrorCode::kCorruptStream, std::to_string(stream.size() - cursor) + " code symbols after the end marker");
    }
    return out;
  }

 private:
  int step(const Codeword& stream, size_t& cursor, size_t& position, DecodeStats* stats) const {
    const CodeTree& tree = code_.tree_at(position);
    int node = tree.root();
    int best = tree.node(node).symbol ? node : -1;
    size_t best_len = 0, at = cursor;
    bool missed = false;
    for (;;) {
      const Node& n = tree.node(node);
      if (!n.has_children()) break;
      if (at >= stream.size()) break;
      CodeSymbol s = stream[at];
      int c = s < tree.arity() ? n.child(s) : -1;
      if (c < 0) {
        missed = true;
        break;
      }
      node = c;
      ++at;
      if (tree.node(node).symbol) {
        best = node;
        best_len = at - cursor;
      }
    }
    if (best < 0) {
      if (at >= stream.size()) fail(ErrorCode::kTruncatedStream, "stream ends inside a codeword");
      fail(ErrorCode::kCorruptStream, "no codeword matches at offset " + std::to_string(cursor));
    }
    int read_past = static_cast<int>(at - cursor - best_len) + (missed ? 1 : 0);
    if (read_past > bound_) {
      fail(ErrorCode::kCorruptStream, "decoding delay " + std::to_string(read_past) + " exceeds bound " +
                                          std::to_string(bound_));
    }
    int t = *tree.node(best).symbol;
    if (stats) {
      stats->max_rewind = std::max(stats->max_rewind, read_past);
      stats->rewinds.push_back(read_past);
      stats->trace.push_back(tree.tree_index());
    }
    cursor += best_len;
    position = static_cast<size_t>(table_.entry(position, t).next_position);
    return t;
  }

  AifvCode code_;
  CodewordTable table_;
  int bound_;
};

inline std::vector<int> decode(const AifvCode& code, const Codeword& stream, size_t n_symbols,
                               DecodeStats* stats = nullptr) {
  return Decoder(code).decode(stream, n_symbols, stats);
}

inline std::vector<std::string> labels_of(const AifvCode& code, const std::vector<int>& symbols) {
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (int t : symbols) out.push_back(code.alphabet().at(static_cast<size_t>(t)));
  return out;
}

}  // namespace aifv
