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

#include <sstream>
#include <string>
#include <vector>

#include "aifv/distribution.hpp"
#include "aifv/error.hpp"
#include "aifv/rational.hpp"

namespace aifv {

// One "label value" pair per line; value is a fraction or a decimal, read
// exactly. '#' starts a comment.
inline SourceDistribution parse_distribution_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> labels;
  std::vector<Rational> probs;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string label, value, extra;
    if (!(ls >> label)) continue;
    if (!(ls >> value) || (ls >> extra)) {
      fail(ErrorCode::kParse, "line " + std::to_string(lineno) + ": expected \"label value\"");
    }
    try {
      probs.push_back(parse_rational(value));
    } catch (const Error& e) {
      fail(ErrorCode::kParse, "line " + std::to_string(lineno) + ": " + e.what());
    }
    labels.push_back(label);
  }
  return make_distribution(std::move(labels), std::move(probs));
}

inline std::string format_distribution(const SourceDistribution& dist) {
  std::string out;
  for (size_t t = 0; t < dist.size(); ++t) out += dist.label(t) + " " + to_string(dist.prob(t)) + "\n";
  return out;
}

}  // namespace aifv
