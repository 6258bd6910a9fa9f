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
//
// gcd over Z[m,n] via a primitive polynomial-remainder sequence in m with
// coefficients in Z[n]. Degrees in this project stay small, so the simple
// dense PRS is adequate; no modular or subresultant machinery.

#include <algorithm>
#include <vector>

#include "assignlab/poly2.hpp"

namespace assignlab {
namespace {

// Dense univariate polynomial in n over Z; index = degree.
using ZP = std::vector<Int>;
// Dense in m with ZP coefficients.
using MZP = std::vector<ZP>;

void zp_trim(ZP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

bool zp_is_zero(const ZP& a) { return a.empty(); }

ZP zp_mul(const ZP& a, const ZP& b) {
  if (a.empty() || b.empty()) return {};
  ZP r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  zp_trim(r);
  return r;
}

ZP zp_sub(ZP a, const ZP& b) {
  if (a.size() < b.size()) a.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  zp_trim(a);
  return a;
}

Int zp_content(const ZP& a) {
  Int g(0);
  for (const Int& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;  // nonnegative by mpz_gcd
}

ZP zp_div_int(ZP a, const Int& d) {
  for (Int& c : a) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    if (r != 0) throw Error("zp_div_int: not exact");
    c = q;
  }
  return a;
}

// Exact division a / b in Z[n]; quotient coefficients may require rational
// steps only when division is not exact, which is an error here.
ZP zp_divexact(ZP a, const ZP& b) {
  if (zp_is_zero(b)) throw Error("zp_divexact: division by zero");
  if (zp_is_zero(a)) return {};
  if (a.size() < b.size()) throw Error("zp_divexact: not divisible");
  ZP q(a.size() - b.size() + 1, Int(0));
  const Int& lb = b.back();
  for (int i = static_cast<int>(a.size()) - 1;
       i >= static_cast<int>(b.size()) - 1; --i) {
    if (a[i] == 0) continue;
    Int c, r;
    mpz_fdiv_qr(c.get_mpz_t(), r.get_mpz_t(), a[i].get_mpz_t(), lb.get_mpz_t());
    if (r != 0) throw Error("zp_divexact: not divisible");
    const int shift = i - static_cast<int>(b.size()) + 1;
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  zp_trim(a);
  if (!zp_is_zero(a)) throw Error("zp_divexact: nonzero remainder");
  return q;
}

// Primitive-PRS gcd in Z[n]; result has positive leading coefficient.
ZP zp_gcd(ZP a, ZP b) {
  zp_trim(a);
  zp_trim(b);
  if (zp_is_zero(a)) std::swap(a, b);
  if (zp_is_zero(b)) {
    if (!a.empty() && a.back() < 0)
      for (Int& c : a) c = -c;
    return a;
  }
  const Int cont = [&] {
    Int ca = zp_content(a), cb = zp_content(b), g;
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    return g;
  }();
  a = zp_div_int(a, zp_content(a));
  b = zp_div_int(b, zp_content(b));
  if (a.size() < b.size()) std::swap(a, b);
  while (!zp_is_zero(b)) {
    // pseudo-remainder of a by b
    ZP r = a;
    const Int& lb = b.back();
    while (!zp_is_zero(r) && r.size() >= b.size()) {
      const Int lr = r.back();
      const int shift = static_cast<int>(r.size() - b.size());
      for (Int& c : r) c *= lb;
      for (size_t j = 0; j < b.size(); ++j) r[shift + j] -= lr * b[j];
      zp_trim(r);
    }
    if (!zp_is_zero(r)) r = zp_div_int(r, zp_content(r));
    a = b;
    b = r;
  }
  if (a.size() == 1) a[0] = 1;  // coprime primitive parts
  if (a.back() < 0)
    for (Int& c : a) c = -c;
  for (Int& c : a) c *= cont;
  return a;
}

int mzp_deg(const MZP& a) { return static_cast<int>(a.size()) - 1; }

void mzp_trim(MZP& a) {
  while (!a.empty() && zp_is_zero(a.back())) a.pop_back();
}

bool mzp_is_zero(const MZP& a) { return a.empty(); }

ZP mzp_content(const MZP& a) {
  ZP g;
  for (const ZP& c : a) g = zp_gcd(g, c);
  return g;
}

MZP mzp_div_zp(MZP a, const ZP& d) {
  for (ZP& c : a)
    if (!zp_is_zero(c)) c = zp_divexact(c, d);
  return a;
}

// Primitive pseudo-remainder step: returns prem(a, b) in m.
MZP mzp_prem(MZP a, const MZP& b) {
  const ZP& lb = b.back();
  while (!mzp_is_zero(a) && a.size() >= b.size()) {
    const ZP la = a.back();
    const size_t shift = a.size() - b.size();
    for (ZP& c : a) c = zp_mul(c, lb);
    for (size_t j = 0; j < b.size(); ++j)
      a[shift + j] = zp_sub(a[shift + j], zp_mul(la, b[j]));
    mzp_trim(a);
  }
  return a;
}

MZP to_mzp(const Poly2& p) {
  MZP r(p.degree_m() + 1);
  for (const auto& [e, c] : p.terms()) {
    if (!c.is_integer()) throw Error("poly_gcd: non-integer coefficient");
    ZP& row = r[e.dm];
    if (static_cast<int>(row.size()) <= e.dn) row.resize(e.dn + 1, Int(0));
    row[e.dn] = c.num();
  }
  for (ZP& row : r) zp_trim(row);
  mzp_trim(r);
  return r;
}

Poly2 from_mzp(const MZP& a) {
  Poly2 p;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != 0) p.add_term({static_cast<int>(i), static_cast<int>(j)},
                                   Rat(a[i][j]));
  return p;
}

}  // namespace

Poly2 poly_gcd(const Poly2& a, const Poly2& b) {
  if (a.is_zero() && b.is_zero()) return Poly2();
  MZP A = to_mzp(a), B = to_mzp(b);
  if (mzp_is_zero(A)) std::swap(A, B);
  if (mzp_is_zero(B)) {
    ZP cont = mzp_content(A);
    MZP pp = mzp_div_zp(A, cont);
    Poly2 g = from_mzp(pp);
    // normalize sign so the glex-leading coefficient is positive
    Poly2 full = g * from_mzp(MZP{cont});
    if (full.leading_coeff().sign() < 0) full = -full;
    return full;
  }
  ZP gcont = zp_gcd(mzp_content(A), mzp_content(B));
  A = mzp_div_zp(A, mzp_content(A));
  B = mzp_div_zp(B, mzp_content(B));
  if (A.size() < B.size()) std::swap(A, B);
  while (!mzp_is_zero(B)) {
    MZP R = mzp_prem(A, B);
    if (!mzp_is_zero(R)) R = mzp_div_zp(R, mzp_content(R));
    A = B;
    B = R;
  }
  Poly2 g;
  if (mzp_deg(A) == 0) {
    g = from_mzp(MZP{gcont});  // primitive parts coprime in m
  } else {
    g = from_mzp(A) * from_mzp(MZP{gcont});
  }
  if (g.leading_coeff().sign() < 0) g = -g;
  return g;
}

namespace {

// Coefficients of p as a polynomial in m; each entry is a pure-n Poly2.
std::vector<Poly2> m_coeffs(const Poly2& p) {
  std::vector<Poly2> r(p.degree_m() + 1);
  for (const auto& [e, c] : p.terms()) r[e.dm].add_term({0, e.dn}, c);
  return r;
}

int top_nonzero(const std::vector<Poly2>& v) {
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
    if (!v[i].is_zero()) return i;
  return -1;
}

// Exact division of pure-n polynomials over Q.
Poly2 uni_divexact_n(Poly2 num, const Poly2& den) {
  if (den.is_zero()) throw Error("poly_divexact: zero coefficient divisor");
  const int dden = den.degree_n();
  const Rat lead = den.terms().rbegin()->second;
  Poly2 q;
  while (!num.is_zero()) {
    const int dnum = num.degree_n();
    if (dnum < dden) throw Error("poly_divexact: not divisible (n)");
    const auto it = num.terms().find(Exp2{0, dnum});
    if (it == num.terms().end()) throw Error("poly_divexact: internal");
    const Rat c = it->second / lead;
    Poly2 mono = Poly2::monomial(0, dnum - dden, c);
    q += mono;
    num -= mono * den;
  }
  return q;
}

}  // namespace

Poly2 poly_divexact(const Poly2& a, const Poly2& b) {
  if (b.is_zero()) throw Error("poly_divexact: division by zero");
  if (a.is_zero()) return Poly2();
  if (b.is_constant()) return a.scaled(Rat(1) / b.constant_value());
  if (b.degree_m() == 0) {
    // n-only divisor: divide each m-coefficient.
    std::vector<Poly2> am = m_coeffs(a);
    Poly2 q;
    for (size_t i = 0; i < am.size(); ++i) {
      if (am[i].is_zero()) continue;
      Poly2 qc = uni_divexact_n(am[i], b);
      for (const auto& [e, c] : qc.terms())
        q.add_term({static_cast<int>(i), e.dn}, c);
    }
    return q;
  }

  // Long division in m; each coefficient division must be exact.
  std::vector<Poly2> work = m_coeffs(a);
  const std::vector<Poly2> bm = m_coeffs(b);
  const int db = static_cast<int>(bm.size()) - 1;
  const int da = static_cast<int>(work.size()) - 1;
  if (da < db) throw Error("poly_divexact: not divisible (m degree)");
  std::vector<Poly2> qm(da - db + 1);
  int cur = top_nonzero(work);
  while (cur >= 0) {
    if (cur < db) throw Error("poly_divexact: nonzero remainder");
    Poly2 qc = uni_divexact_n(work[cur], bm[db]);
    qm[cur - db] = qc;
    for (int t = 0; t <= db; ++t) work[cur - db + t] -= qc * bm[t];
    cur = top_nonzero(work);
  }
  Poly2 q;
  for (size_t i = 0; i < qm.size(); ++i)
    for (const auto& [e, c] : qm[i].terms())
      q.add_term({static_cast<int>(i), e.dn}, c);
  return q;
}

}  // namespace assignlab
