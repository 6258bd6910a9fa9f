// Copyright 2026 The assignlab Authors
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

#ifndef ASSIGNLAB_CASE_MATRIX_HPP
#define ASSIGNLAB_CASE_MATRIX_HPP

#include <map>
#include <string>
#include <vector>

#include "assignlab/pattern.hpp"
#include "assignlab/ratfunc.hpp"

namespace assignlab {

// A non-default entry: an independent sum of exponential stages, stage i
// having rate rates[i] (mean 1/rates[i]). Stage order is immaterial for the
// entry's distribution, so rates are kept sorted by printed form.
struct EntryStages {
  std::vector<RatFunc> rates;

  void sort_canonical();
  std::string signature() const;
  friend bool operator==(const EntryStages& a, const EntryStages& b) {
    return a.rates == b.rates;
  }
};

// Recursion state: a window of an m x n matrix with zeros, special entries,
// and generic exp(1) cells everywhere else.
struct CaseMatrix {
  int k = 0;
  ZeroPattern pattern;
  std::map<Pos, EntryStages> specials;

  bool is_special(int r, int c) const {
    return specials.count(Pos{r, c}) > 0;
  }
  // Canonical memo key (window shape + annotated pattern + k).
  std::string key() const;

  // JSON object {"k":..,"rows":..,"cols":..,"zeros":[[r,c],..],
  // "specials":[{"cell":[r,c],"stages":["expr",..]},..]} with 1-based cells.
  static CaseMatrix from_json(const std::string& text);
  std::string to_json() const;

  // Build from the pattern text format plus per-label stage expressions.
  static CaseMatrix from_pattern_text(
      int k, const std::string& text,
      const std::map<char, std::vector<std::string>>& stages = {});
};

}  // namespace assignlab

#endif  // ASSIGNLAB_CASE_MATRIX_HPP
