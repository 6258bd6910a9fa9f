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

#include "assignlab/btriangle.hpp"

#include <sstream>

namespace assignlab {

namespace {

RatFunc basis_term(int i, int j) {
  const Poly2 mm = Poly2::sym_m() - Poly2(Rat(i));
  const Poly2 nn = Poly2::sym_n() - Poly2(Rat(j));
  return RatFunc(Poly2(Rat(1)), mm * nn);
}

}  // namespace

RatFunc BTriangle::reconstruct() const {
  RatFunc f;
  for (int i = 0; i < k; ++i)
    for (int j = 0; i + j < k; ++j)
      if (!coeffs[i][j].is_zero())
        f += RatFunc(coeffs[i][j]) * basis_term(i, j);
  for (const RatFunc& r : residual) f += r;
  return f;
}

bool BTriangle::all_integer() const {
  for (int i = 0; i < k; ++i)
    for (int j = 0; i + j < k; ++j)
      if (!coeffs[i][j].is_integer()) return false;
  return true;
}

bool BTriangle::border_ones(int rows, int cols) const {
  for (int i = 0; i < k; ++i)
    for (int j = 0; i + j < k; ++j)
      if (i >= rows || j >= cols)
        if (!(coeffs[i][j] == Rat(1))) return false;
  return true;
}

std::string BTriangle::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < k; ++i) {
    os << "[";
    for (int j = 0; j < k; ++j) {
      if (j) os << " ";
      os << (i + j < k ? coeffs[i][j].to_string() : "0");
    }
    os << "]\n";
  }
  for (const RatFunc& r : residual) os << "+ " << r.to_string_factored() << "\n";
  return os.str();
}

namespace {

Poly2 derivative_m(const Poly2& p) {
  Poly2 d;
  for (const auto& [e, c] : p.terms())
    if (e.dm > 0) d.add_term({e.dm - 1, e.dn}, c * Rat(e.dm));
  return d;
}

Poly2 derivative_n(const Poly2& p) {
  Poly2 d;
  for (const auto& [e, c] : p.terms())
    if (e.dn > 0) d.add_term({e.dm, e.dn - 1}, c * Rat(e.dn));
  return d;
}

}  // namespace

// Coefficient of 1/(m - at) in the expansion around m = at (the value the
// partial-fraction display assigns to that factor); defined for poles of any
// order via (1/(e-1)!) d^{e-1}/dm^{e-1} [(m-at)^e f] at m = at.
RatFunc residue_m(const RatFunc& f, int at) {
  const Poly2 lin = Poly2::sym_m() - Poly2(Rat(at));
  int e = 0;
  Poly2 rest = f.den();
  while (rest.eval_m(Rat(at)).is_zero()) {
    rest = poly_divexact(rest, lin);
    ++e;
  }
  if (e == 0) return RatFunc();
  Poly2 gnum = f.num(), gden = rest;
  for (int l = 1; l < e; ++l) {
    // quotient rule; the denominator stays a power of `rest`
    Poly2 nnum = derivative_m(gnum) * gden - gnum * derivative_m(gden);
    gden = gden * gden;
    gnum = std::move(nnum);
  }
  const Poly2 top = gnum.eval_m(Rat(at));
  const Poly2 bot = gden.eval_m(Rat(at));
  return RatFunc(top, bot) / RatFunc(Rat(factorial_int(e - 1)));
}

Rat residue_n(const RatFunc& f, int at) {
  if (f.den().degree_m() != 0 || f.num().degree_m() != 0)
    throw Error("residue_n: expected a function of n only");
  const Poly2 lin = Poly2::sym_n() - Poly2(Rat(at));
  int e = 0;
  Poly2 rest = f.den();
  while (rest.eval_n(Rat(at)).is_zero()) {
    rest = poly_divexact(rest, lin);
    ++e;
  }
  if (e == 0) return Rat(0);
  Poly2 gnum = f.num(), gden = rest;
  for (int l = 1; l < e; ++l) {
    Poly2 nnum = derivative_n(gnum) * gden - gnum * derivative_n(gden);
    gden = gden * gden;
    gnum = std::move(nnum);
  }
  return gnum.eval_n(Rat(at)).constant_value() /
         gden.eval_n(Rat(at)).constant_value() / Rat(factorial_int(e - 1));
}

BTriangle to_btriangle(const RatFunc& f, int k) {
  if (k < 1) throw Error("to_btriangle: k must be positive");
  BTriangle t;
  t.k = k;
  t.coeffs.assign(k, std::vector<Rat>(k, Rat(0)));
  for (int i = 0; i < k; ++i) {
    const RatFunc ri = residue_m(f, i);
    if (ri.is_zero()) continue;
    for (int j = 0; i + j < k; ++j) t.coeffs[i][j] = residue_n(ri, j);
  }
  RatFunc rest = f;
  for (int i = 0; i < k; ++i)
    for (int j = 0; i + j < k; ++j)
      if (!t.coeffs[i][j].is_zero())
        rest -= RatFunc(t.coeffs[i][j]) * basis_term(i, j);
  if (!rest.is_zero()) t.residual.push_back(rest);
  if (!(t.reconstruct() == f))
    throw Error("to_btriangle: reconstruction failed");  // unreachable
  return t;
}

}  // namespace assignlab
