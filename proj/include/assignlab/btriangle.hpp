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

#ifndef ASSIGNLAB_BTRIANGLE_HPP
#define ASSIGNLAB_BTRIANGLE_HPP

#include <string>
#include <vector>

#include "assignlab/ratfunc.hpp"

namespace assignlab {

// Coefficients of an expected-cost value in the basis 1/((m-i)(n-j)),
// i+j < k, plus whatever cannot be written in that basis (residual terms).
// The reconstruction identity
//     sum coeffs[i][j]/((m-i)(n-j)) + sum residual == source
// holds exactly for every instance produced by to_btriangle.
struct BTriangle {
  int k = 0;
  // (k x k), entry [i][j] used only when i+j < k; others stay zero.
  std::vector<std::vector<Rat>> coeffs;
  std::vector<RatFunc> residual;

  RatFunc reconstruct() const;
  bool all_integer() const;
  // True when coeffs[i][j] == 1 for all i >= rows or j >= cols (within i+j<k).
  bool border_ones(int rows, int cols) const;
  std::string to_string() const;
};

// Decompose F via iterated partial-fraction coefficients, first in m at
// m = i, then in n at n = j. Higher-order poles contribute only through
// their first-order coefficient; everything else lands in the residual.
BTriangle to_btriangle(const RatFunc& f, int k);

// Coefficient of 1/(m - at) in the expansion of f around m = at, as a
// rational function of n alone (works for poles of any order).
RatFunc residue_m(const RatFunc& f, int at);
// Same in n at n = at for a pure-n rational function.
Rat residue_n(const RatFunc& f, int at);

}  // namespace assignlab

#endif  // ASSIGNLAB_BTRIANGLE_HPP
