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

#include "assignlab/btriangle.hpp"
#include "assignlab/ratfunc.hpp"
#include "testutil.hpp"

using namespace assignlab;
using testutil::Rng;
using testutil::random_ratfunc;

TEST_CASE("Rat basics") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(2, -4).to_string() == "-1/2");
  CHECK((Rat(1, 6) + Rat(1, 3)) == Rat(1, 2));
  CHECK_THROWS_AS(Rat(1, 2) / Rat(0), PoleError);
}

TEST_CASE("ratfunc arithmetic on like terms") {
  const RatFunc a = RatFunc::parse("1/(m*n)");
  CHECK(a + a == RatFunc::parse("2/(m*n)"));
  CHECK(RatFunc::parse("(m-1)/(m-1)") == RatFunc(1));
}

TEST_CASE("one-zero two-assignment value from three basis terms") {
  const RatFunc v = RatFunc::parse("1/((m-1)*n)") + RatFunc::parse("1/(m*(n-1))") -
                    RatFunc::parse("1/(m*n)");
  CHECK(v == RatFunc::parse("-1/(m*n)+1/((m-1)*n)+1/(m*(n-1))"));
  CHECK(v == RatFunc::parse("(m*n-1)/(m*(m-1)*n*(n-1))"));
  CHECK(v.equals_cross(RatFunc::parse("(m*n-1)/(m*(m-1)*n*(n-1))")));
  CHECK(v.eval_at(Rat(2), Rat(2)) == Rat(3, 4));
}

TEST_CASE("binom_poly") {
  CHECK(binom_poly('m', 0) == RatFunc(1));
  CHECK(binom_poly('m', 2) == RatFunc::parse("(m^2-m)/2"));
  CHECK(binom_poly('n', 3) == RatFunc::parse("(n^3-3*n^2+2*n)/6"));
  // evaluated at integer tops it equals the integer binomial
  for (int i = 0; i <= 4; ++i)
    for (int top = i; top <= 9; ++top)
      CHECK(binom_poly('m', i).eval_at(Rat(top), Rat(1)) == Rat(binom_int(top, i)));
}

TEST_CASE("lemma_sum_check examples and exhaustive range") {
  CHECK(lemma_sum_check(3, 1));
  CHECK(lemma_sum_check(2, 1));
  CHECK(lemma_sum_check(10, 4));
  for (int m0 = 2; m0 <= 25; ++m0)
    for (int r = 1; r < m0; ++r) CHECK(lemma_sum_check(m0, r));
}

TEST_CASE("eval_at") {
  CHECK(RatFunc::parse("1/(m*n)").eval_at(Rat(3), Rat(4)) == Rat(1, 12));
  CHECK(RatFunc::parse("1/((m-2)*(2*m*n-5*n-1))").eval_at(Rat(4), Rat(5)) ==
        Rat(1, 28));
  CHECK_THROWS_AS(RatFunc::parse("1/(m-3)").eval_at(Rat(3), Rat(0)), PoleError);
}

TEST_CASE("exact round-trips and canonical normalization") {
  Rng g(20260808);
  int checked = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const RatFunc a = random_ratfunc(g);
    const RatFunc b = random_ratfunc(g);
    CHECK((a + b) - b == a);
    if (!b.is_zero()) {
      CHECK((a * b) / b == a);
      ++checked;
    }
    // two arithmetic routes to one value give one structure
    const RatFunc left = (a + b) * (a - b);
    const RatFunc right = a * a - b * b;
    CHECK(left == right);
    CHECK(left.equals_cross(right));
  }
  CHECK(checked > 200);
}

TEST_CASE("printing round-trips through the expression grammar") {
  Rng g(424242);
  for (int iter = 0; iter < 200; ++iter) {
    const RatFunc a = random_ratfunc(g);
    CHECK(RatFunc::parse(a.to_string()) == a);
  }
  CHECK(RatFunc::parse("m^2*n/2-1/3").to_string() == "m^2*n/2-1/3");
}

TEST_CASE("shift substitutions") {
  const RatFunc f = RatFunc::parse("1/((m-1)*(n-2))");
  CHECK(f.shift_m(1) == RatFunc::parse("1/(m*(n-2))"));
  CHECK(f.shift_m(1).shift_m(-1) == f);
  CHECK(f.shift_n(2) == RatFunc::parse("1/((m-1)*n)"));
}

TEST_CASE("to_btriangle on the one-zero k=2 value") {
  const RatFunc f = RatFunc::parse("-1/(m*n)+1/((m-1)*n)+1/(m*(n-1))");
  const BTriangle t = to_btriangle(f, 2);
  CHECK(t.coeffs[0][0] == Rat(-1));
  CHECK(t.coeffs[0][1] == Rat(1));
  CHECK(t.coeffs[1][0] == Rat(1));
  CHECK(t.residual.empty());
  CHECK(t.reconstruct() == f);
  CHECK(t.all_integer());
}

TEST_CASE("to_btriangle of zero") {
  const BTriangle t = to_btriangle(RatFunc(0), 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; i + j < 3; ++j) CHECK(t.coeffs[i][j] == Rat(0));
  CHECK(t.residual.empty());
}

TEST_CASE("to_btriangle keeps the extra term aside") {
  // triangle [[0,0,-1,1],[0,-1,1,0],[0,1,0,0],[0,0,0,0]] plus an extra term
  RatFunc f = RatFunc::parse("1/((m-2)*(2*m*n-5*n-1))");
  f += RatFunc::parse("-1/(m*(n-2))+1/(m*(n-3))");
  f += RatFunc::parse("-1/((m-1)*(n-1))+1/((m-1)*(n-2))");
  f += RatFunc::parse("1/((m-2)*(n-1))");
  const BTriangle t = to_btriangle(f, 4);
  CHECK(t.coeffs[0][2] == Rat(-1));
  CHECK(t.coeffs[0][3] == Rat(1));
  CHECK(t.coeffs[1][1] == Rat(-1));
  CHECK(t.coeffs[1][2] == Rat(1));
  CHECK(t.coeffs[2][1] == Rat(1));
  CHECK(t.coeffs[0][0] == Rat(0));
  REQUIRE(t.residual.size() == 1);
  CHECK(t.residual[0] == RatFunc::parse("1/((m-2)*(2*m*n-5*n-1))"));
  CHECK(t.reconstruct() == f);
}

TEST_CASE("higher-order poles contribute only through their simple part") {
  // 1/((m-1)^2 n) has no 1/(m-1) component at all
  const BTriangle t = to_btriangle(RatFunc::parse("1/((m-1)^2*n)"), 2);
  CHECK(t.coeffs[0][0] == Rat(0));
  CHECK(t.coeffs[1][0] == Rat(0));
  REQUIRE(t.residual.size() == 1);
  CHECK(t.residual[0] == RatFunc::parse("1/((m-1)^2*n)"));
  // m/((m-2)^2 n) = 1/(m-2)^2/n + 2... its simple part at m=2 is 1/n
  const BTriangle s = to_btriangle(RatFunc::parse("m/((m-2)^2*n)"), 3);
  CHECK(s.coeffs[2][0] == Rat(1));
  CHECK(s.reconstruct() == RatFunc::parse("m/((m-2)^2*n)"));
}

TEST_CASE("division by the zero function is an error") {
  CHECK_THROWS_AS(RatFunc(1) / RatFunc(0), PoleError);
}

TEST_CASE("polynomial gcd removes exactly the shared factor") {
  Rng g(606060);
  for (int iter = 0; iter < 120; ++iter) {
    // integer-coefficient polynomials with a planted common factor
    auto intpoly = [&](bool nonzero) {
      Poly2 p;
      const int terms = static_cast<int>(g.pick(nonzero ? 1 : 0, 3));
      for (int t = 0; t < terms; ++t)
        p.add_term({static_cast<int>(g.pick(0, 2)), static_cast<int>(g.pick(0, 2))},
                   Rat(g.pick(-4, 4)));
      if (nonzero && p.is_zero()) p.add_term({0, 0}, Rat(1));
      return p;
    };
    const Poly2 shared = intpoly(true);
    const Poly2 a = intpoly(false) * shared;
    const Poly2 b = intpoly(true) * shared;
    const Poly2 gcd = poly_gcd(a, b);
    if (a.is_zero()) continue;
    // the gcd divides both and contains the planted factor
    CHECK_NOTHROW(poly_divexact(a, gcd));
    CHECK_NOTHROW(poly_divexact(b, gcd));
    CHECK_NOTHROW(poly_divexact(gcd, shared));
  }
}
