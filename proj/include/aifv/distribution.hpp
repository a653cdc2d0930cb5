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

#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aifv/error.hpp"
#include "aifv/rational.hpp"

namespace aifv {

// A memoryless source: ordered labels with exact, strictly positive
// probabilities summing to one.
class SourceDistribution {
 public:
  SourceDistribution() = default;

  size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Rational>& probs() const { return probs_; }
  const std::string& label(size_t t) const { return labels_.at(t); }
  const Rational& prob(size_t t) const { return probs_.at(t); }

  std::optional<size_t> index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<double> probs_as_double() const {
    std::vector<double> out;
    out.reserve(probs_.size());
    for (const auto& p : probs_) out.push_back(to_double(p));
    return out;
  }

  friend bool operator==(const SourceDistribution& a, const SourceDistribution& b) {
    return a.labels_ == b.labels_ && a.probs_ == b.probs_;
  }

 private:
  friend SourceDistribution make_distribution(std::vector<std::string>, std::vector<Rational>);

  std::vector<std::string> labels_;
  std::vector<Rational> probs_;
  std::unordered_map<std::string, size_t> index_;
};

inline SourceDistribution make_distribution(std::vector<std::string> labels,
                                            std::vector<Rational> probs) {
  if (labels.empty()) fail(ErrorCode::kEmptyAlphabet, "distribution has no symbols");
  if (labels.size() != probs.size()) {
    fail(ErrorCode::kLengthMismatch, "got " + std::to_string(labels.size()) + " labels and " +
                                         std::to_string(probs.size()) + " probabilities");
  }
  Rational total = 0;
  std::set<std::string> seen;
  for (size_t t = 0; t < labels.size(); ++t) {
    if (probs[t] <= 0) {
      fail(ErrorCode::kNonPositiveProbability,
           "p(" + labels[t] + ") = " + to_string(probs[t]) + " is not positive");
    }
    if (!seen.insert(labels[t]).second) fail(ErrorCode::kParse, "duplicate label '" + labels[t] + "'");
    total += probs[t];
  }
  if (total != 1) fail(ErrorCode::kNonUnitSum, "probabilities sum to " + to_string(total));

  SourceDistribution d;
  d.labels_ = std::move(labels);
  d.probs_ = std::move(probs);
  for (size_t t = 0; t < d.labels_.size(); ++t) d.index_.emplace(d.labels_[t], t);
  return d;
}

// Labels a, b, ..., z, then a26, a27, ... for larger alphabets.
inline std::string default_label(size_t t) {
  if (t < 26) return std::string(1, static_cast<char>('a' + t));
  return "a" + std::to_string(t);
}

enum class DistributionFamily { kUniform, kLinear, kQuadratic };  // P0, P1, P2

// P0: 1/n.  P1: t / A1.  P2: t^2 / A2, with A1, A2 the normalizing sums.
inline SourceDistribution family_distribution(DistributionFamily family, size_t n) {
  if (n < 2) fail(ErrorCode::kEmptyAlphabet, "family distributions need n >= 2");
  std::vector<std::string> labels;
  std::vector<Rational> weights;
  Rational total = 0;
  for (size_t t = 1; t <= n; ++t) {
    Rational w;
    switch (family) {
      case DistributionFamily::kUniform: w = 1; break;
      case DistributionFamily::kLinear: w = static_cast<long>(t); break;
      case DistributionFamily::kQuadratic: w = static_cast<long>(t * t); break;
    }
    labels.push_back(default_label(t - 1));
    weights.push_back(w);
    total += w;
  }
  for (auto& w : weights) w /= total;
  return make_distribution(std::move(labels), std::move(weights));
}

inline std::optional<DistributionFamily> parse_family_tag(const std::string& tag) {
  if (tag == "P0" || tag == "p0" || tag == "uniform") return DistributionFamily::kUniform;
  if (tag == "P1" || tag == "p1" || tag == "linear") return DistributionFamily::kLinear;
  if (tag == "P2" || tag == "p2" || tag == "quadratic") return DistributionFamily::kQuadratic;
  return std::nullopt;
}

inline std::string family_tag(DistributionFamily family) {
  switch (family) {
    case DistributionFamily::kUniform: return "P0";
    case DistributionFamily::kLinear: return "P1";
    case DistributionFamily::kQuadratic: return "P2";
  }
  return "?";
}

// H_K(X) = -sum p log_K p.
inline double entropy(const SourceDistribution& dist, int arity) {
  if (arity < 2) fail(ErrorCode::kBadArity, "entropy needs K >= 2");
  long double h = 0;
  for (const auto& p : dist.probs()) {
    long double x = to_double(p);
    h -= x * std::log(x);
  }
  return static_cast<double>(h / std::log(static_cast<long double>(arity)));
}

// Scales every probability by (1 - p_extra) and appends `label` with p_extra.
inline SourceDistribution extend_distribution(const SourceDistribution& dist,
                                              const std::string& label,
                                              const Rational& p_extra) {
  if (p_extra <= 0 || p_extra >= 1) {
    fail(ErrorCode::kNonPositiveProbability, "extra symbol probability must lie in (0,1)");
  }
  std::vector<std::string> labels = dist.labels();
  std::vector<Rational> probs;
  for (const auto& p : dist.probs()) probs.push_back(p * (1 - p_extra));
  labels.push_back(label);
  probs.push_back(p_extra);
  return make_distribution(std::move(labels), std::move(probs));
}

}  // namespace aifv
