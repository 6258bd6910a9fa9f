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

#ifndef ASSIGNLAB_CONJECTURE_HPP
#define ASSIGNLAB_CONJECTURE_HPP

#include <vector>

#include "assignlab/btriangle.hpp"
#include "assignlab/pattern.hpp"
#include "assignlab/ratfunc.hpp"

namespace assignlab {

class Engine;

// sum over i+j<k of 1/((m-i)(n-j)).
RatFunc cs_formula(int k);

// sum over 1<=i<=n0 of 1/i^2.
Rat parisi_value(int n0);

// The conjectured value: sum over i+j<k of p_ij/((m-i)(n-j)) with p_ij the
// probability that a uniform (i rows, j cols) set extends to a cover of the
// zeros by k-1 lines, assembled symbolically from window subset counts.
RatFunc main_conjecture_F(const ZeroPattern& z, int k);

// Same value, restricted to patterns containing a (k-1)-assignment where it
// is proven exact rather than conjectural.
RatFunc main_theorem_F(const ZeroPattern& z, int k);

// The integer triangle computed directly from non-extendable subset counts;
// equals to_btriangle(main_conjecture_F(z,k), k) with empty residual.
BTriangle b_formula(const ZeroPattern& z, int k);

// Concrete-dimension evaluation through the poset of intersections of
// (k-1)-coverings and its Moebius function.
Rat mobius_F(const ZeroPattern& z, int k, int m0, int n0);

// sum over i+j<k of trinomial(k-1;i,j)*(-1)^(k-1-i-j)/((m-i)(n-j)).
RatFunc diagonal_F(int k);

// 1 - C(k,2)/(mn): conjectured probability that a lone zero is used.
RatFunc olin_probability(int k);

enum class Via { kEngine, kConjecture };

// F_{k,Z} - F_{k,Z+cell}; cell is 0-based and may lie outside the window.
RatFunc zero_use_probability(Engine& engine, const ZeroPattern& z,
                             const Pos& cell, int k, Via via);

// b_formula(z,k).coeffs[0][0] == (-1)^|z| * C(k-1, |z|) for acyclic z.
bool b00_acyclic_check(const ZeroPattern& z, int k);

// Nonzero per-row zero counts, sorted descending.
std::vector<int> lambda_row(const ZeroPattern& z);
std::vector<int> lambda_col(const ZeroPattern& z);

// Patterns with equal row partitions must agree on the first b column.
bool lambda_invariance_check(const ZeroPattern& z1, const ZeroPattern& z2,
                             int k);

// Grow the window if needed and add one zero (0-based cell).
ZeroPattern with_zero(const ZeroPattern& z, const Pos& cell);

}  // namespace assignlab

#endif  // ASSIGNLAB_CONJECTURE_HPP
