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

#include <doctest.h>

#include "assignlab/conjecture.hpp"
#include "testutil.hpp"

using namespace assignlab;
using testutil::Rng;

namespace {

ZeroPattern make(int rows, int cols, std::initializer_list<Pos> zs) {
  ZeroPattern z(rows, cols);
  for (const Pos& p : zs) z.add(p.r, p.c);
  return z;
}

ZeroPattern diag(int d) {
  ZeroPattern z(d, d);
  for (int i = 0; i < d; ++i) z.add(i, i);
  return z;
}

}  // namespace

TEST_CASE("cs_formula") {
  CHECK(cs_formula(1) == RatFunc::parse("1/(m*n)"));
  CHECK(cs_formula(2) == RatFunc::parse("1/(m*n)+1/((m-1)*n)+1/(m*(n-1))"));
  CHECK(cs_formula(5).eval_at(Rat(5), Rat(5)) == parisi_value(5));
}

TEST_CASE("parisi_value") {
  CHECK(parisi_value(1) == Rat(1));
  CHECK(parisi_value(2) == Rat(5, 4));
  CHECK(parisi_value(7) == Rat(266681, 176400));
}

TEST_CASE("parisi specialization of the square formula") {
  for (int n0 = 1; n0 <= 8; ++n0)
    CHECK(cs_formula(n0).eval_at(Rat(n0), Rat(n0)) == parisi_value(n0));
}

TEST_CASE("main_conjecture_F on one zero, k=2") {
  const RatFunc f = main_conjecture_F(make(1, 1, {{0, 0}}), 2);
  CHECK(f == RatFunc::parse("-1/(m*n)+1/((m-1)*n)+1/(m*(n-1))"));
}

TEST_CASE("main_conjecture_F specializes to the no-zero formula") {
  for (int k = 1; k <= 6; ++k)
    CHECK(main_conjecture_F(ZeroPattern(0, 0), k) == cs_formula(k));
}

TEST_CASE("main_conjecture_F on one zero, k=3") {
  const RatFunc f = main_conjecture_F(make(1, 1, {{0, 0}}), 3);
  CHECK(f == RatFunc::parse("1/((m-2)*n)+1/(m*(n-2))+1/((m-1)*(n-1))"
                            "+1/(m*(n-1))+1/((m-1)*n)-2/(m*n)"));
}

TEST_CASE("b_formula triangles") {
  const BTriangle t = b_formula(make(1, 1, {{0, 0}}), 3);
  CHECK(t.coeffs[0][0] == Rat(-2));
  CHECK(t.coeffs[0][1] == Rat(1));
  CHECK(t.coeffs[0][2] == Rat(1));
  CHECK(t.coeffs[1][0] == Rat(1));
  CHECK(t.coeffs[1][1] == Rat(1));
  CHECK(t.coeffs[2][0] == Rat(1));

  const BTriangle ones = b_formula(ZeroPattern(0, 0), 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; i + j < 4; ++j) CHECK(ones.coeffs[i][j] == Rat(1));

  CHECK(b_formula(make(1, 1, {{0, 0}}), 5).coeffs[0][0] == Rat(-4));
}

TEST_CASE("b_formula equals the residue decomposition of the formula") {
  Rng g(555);
  int done = 0;
  for (int iter = 0; iter < 60 && done < 25; ++iter) {
    const ZeroPattern z = testutil::random_pattern(g, 3, 3, 4);
    const int k = static_cast<int>(g.pick(1, 4));
    const RatFunc f = main_conjecture_F(z, k);
    const BTriangle via_residues = to_btriangle(f, k);
    const BTriangle via_counts = b_formula(z, k);
    CHECK(via_residues.residual.empty());
    for (int i = 0; i < k; ++i)
      for (int j = 0; i + j < k; ++j)
        CHECK(via_residues.coeffs[i][j] == via_counts.coeffs[i][j]);
    CHECK(via_counts.border_ones(z.rows(), z.cols()));
    ++done;
  }
  CHECK(done == 25);
}

TEST_CASE("mobius_F concrete checks") {
  CHECK(mobius_F(make(1, 1, {{0, 0}}), 3, 4, 4) == Rat(29, 72));
  CHECK(mobius_F(ZeroPattern(0, 0), 2, 3, 3) == Rat(4, 9));
  CHECK(mobius_F(diag(2), 2, 4, 5) == Rat(0));
}

TEST_CASE("mobius form equals the probability form at concrete dims") {
  Rng g(808);
  int done = 0;
  for (int iter = 0; iter < 80 && done < 20; ++iter) {
    const ZeroPattern z = testutil::random_pattern(g, 3, 3, 4);
    const int k = static_cast<int>(g.pick(1, 4));
    const RatFunc f = main_conjecture_F(z, k);
    for (int m0 = std::max(k, z.rows()); m0 <= 6; ++m0)
      for (int n0 = std::max(k, z.cols()); n0 + m0 <= 12; ++n0)
        CHECK(mobius_F(z, k, m0, n0) == f.eval_at(Rat(m0), Rat(n0)));
    ++done;
  }
  CHECK(done == 20);
}

TEST_CASE("main_theorem_F requires a (k-1)-assignment") {
  CHECK_THROWS_AS(main_theorem_F(ZeroPattern(0, 0), 2), Error);
  CHECK(main_theorem_F(diag(1), 2) ==
        RatFunc::parse("-1/(m*n)+1/((m-1)*n)+1/(m*(n-1))"));
}

TEST_CASE("diagonal_F") {
  CHECK(diagonal_F(2) == RatFunc::parse("-1/(m*n)+1/((m-1)*n)+1/(m*(n-1))"));
  CHECK(diagonal_F(3).eval_at(Rat(3), Rat(3)) == Rat(11, 18));
  // at m = k the value collapses to (1/k) * sum_j 1/(n-j)
  for (int k = 2; k <= 6; ++k) {
    const RatFunc f = diagonal_F(k);
    const RatFunc at_k(f.num().eval_m(Rat(k)), f.den().eval_m(Rat(k)));
    RatFunc expect;
    for (int j = 0; j < k; ++j)
      expect += RatFunc(Poly2(Rat(1)), Poly2::sym_n() - Poly2(Rat(j)));
    expect = expect / RatFunc(k);
    CHECK(at_k == expect);
  }
  // H_k / k on the diagonal
  for (int k = 1; k <= 6; ++k) {
    Rat h(0);
    for (int i = 1; i <= k; ++i) h += Rat(1, i);
    CHECK(diagonal_F(k).eval_at(Rat(k), Rat(k)) == h / Rat(k));
  }
}

TEST_CASE("diagonal_F equals the proven formula on the staircase") {
  for (int k = 2; k <= 6; ++k)
    CHECK(diagonal_F(k) == main_theorem_F(diag(k - 1), k));
}

TEST_CASE("olin_probability") {
  CHECK(olin_probability(1) == RatFunc(1));
  CHECK(olin_probability(3).eval_at(Rat(3), Rat(3)) == Rat(2, 3));
  CHECK(olin_probability(2).eval_at(Rat(2), Rat(2)) == Rat(3, 4));
}

TEST_CASE("b00 acyclic checks") {
  CHECK(b00_acyclic_check(make(1, 1, {{0, 0}}), 3));
  CHECK(b00_acyclic_check(diag(2), 5));
  CHECK(b00_acyclic_check(make(1, 1, {{0, 0}}), 5));
  CHECK(b_formula(diag(2), 5).coeffs[0][0] == Rat(6));
}

TEST_CASE("lambda invariance") {
  CHECK(lambda_invariance_check(make(1, 2, {{0, 0}, {0, 1}}),
                                make(1, 3, {{0, 0}, {0, 2}}), 3));
  CHECK(lambda_invariance_check(make(1, 2, {{0, 0}, {0, 1}}),
                                make(2, 3, {{1, 1}, {1, 2}}), 4));
  CHECK(lambda_invariance_check(make(2, 2, {{0, 0}, {1, 1}}),
                                make(2, 1, {{0, 0}, {1, 0}}), 4));
  CHECK_THROWS_AS(lambda_invariance_check(make(1, 2, {{0, 0}, {0, 1}}),
                                          make(2, 2, {{0, 0}, {1, 1}}), 3),
                  Error);
}
