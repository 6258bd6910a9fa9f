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

#include "assignlab/conjecture.hpp"

#include <algorithm>
#include <bit>

#include "assignlab/engine.hpp"

namespace assignlab {

namespace {

RatFunc basis_term(int i, int j) {
  const Poly2 mm = Poly2::sym_m() - Poly2(Rat(i));
  const Poly2 nn = Poly2::sym_n() - Poly2(Rat(j));
  return RatFunc(Poly2(Rat(1)), mm * nn);
}

}  // namespace

RatFunc cs_formula(int k) {
  if (k < 1) throw Error("cs_formula: k must be >= 1");
  RatFunc f;
  for (int i = 0; i < k; ++i)
    for (int j = 0; i + j < k; ++j) f += basis_term(i, j);
  return f;
}

Rat parisi_value(int n0) {
  if (n0 < 1) throw Error("parisi_value: n must be >= 1");
  Rat s(0);
  for (int i = 1; i <= n0; ++i) {
    const Int sq = Int(i) * Int(i);
    s += Rat(Int(1), sq);
  }
  return s;
}

RatFunc main_conjecture_F(const ZeroPattern& z, int k) {
  if (k > 8) throw BoundError("main_conjecture_F: k exceeds 8");
  const CoverCounts cc = partial_cover_counts(z, k);
  const int wr = z.rows(), wc = z.cols();
  const RatFunc m = RatFunc::sym_m(), n = RatFunc::sym_n();
  RatFunc f;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; i + j < k; ++j) {
      const int r = k - 1 - i - j;
      RatFunc numer;
      for (int s = 0; s <= std::min(i, wr); ++s) {
        for (int t = 0; t <= std::min(j, wc); ++t) {
          const long g = cc.get(s, t, r);
          if (g == 0) continue;
          numer += RatFunc(g) * falling_binom(m - RatFunc(wr), i - s) *
                   falling_binom(n - RatFunc(wc), j - t);
        }
      }
      if (numer.is_zero()) continue;
      const RatFunc p_ij =
          numer / (falling_binom(m, i) * falling_binom(n, j));
      f += p_ij * basis_term(i, j);
    }
  }
  return f;
}

RatFunc main_theorem_F(const ZeroPattern& z, int k) {
  if (!contains_assignment(z, k - 1))
    throw Error("main_theorem_F: zeros contain no (k-1)-assignment");
  return main_conjecture_F(z, k);
}

BTriangle b_formula(const ZeroPattern& z, int k) {
  if (k > 8) throw BoundError("b_formula: k exceeds 8");
  const CoverCounts cc = partial_cover_counts(z, k);
  const int wr = z.rows(), wc = z.cols();
  auto d = [&](int s, int t, int r) -> Int {
    return binom_int(wr, s) * binom_int(wc, t) - Int(cc.get(s, t, r));
  };
  BTriangle tri;
  tri.k = k;
  tri.coeffs.assign(k, std::vector<Rat>(k, Rat(0)));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; i + j < k; ++j) {
      Int sum(0);
      for (int r = i + j; r <= k - 1; ++r) {
        for (int s = 0; s <= wr - k + r; ++s) {
          for (int t = 0; t <= wc - k + r; ++t) {
            const Int dst = d(s, t, k - 1 - r);
            if (dst == 0) continue;
            Int inner(0);
            for (int x = std::max(i, s); x <= r - std::max(j, t); ++x) {
              inner += binom_int(x, i) * binom_int(r - x, j) *
                       binom_int(wr - i + x - s - 1, wr - i - 1) *
                       binom_int(wc - j + (r - x) - t - 1, wc - j - 1);
            }
            if ((s + t) % 2 == 0)
              sum += dst * inner;
            else
              sum -= dst * inner;
          }
        }
      }
      Int b = Int(1);
      if ((i + j) % 2 == 0)
        b -= sum;
      else
        b += sum;
      tri.coeffs[i][j] = Rat(b);
    }
  }
  return tri;
}

Rat mobius_F(const ZeroPattern& z, int k, int m0, int n0) {
  if (k > m0 || k > n0) throw Error("mobius_F: requires k <= m0, n0");
  if (m0 + n0 > 14) throw BoundError("mobius_F: m0 + n0 exceeds 14");
  if (z.rows() > m0 || z.cols() > n0)
    throw Error("mobius_F: window exceeds concrete dimensions");
  const int lines = m0 + n0;  // bits 0..m0-1 rows, m0..lines-1 cols
  const auto zs = z.zeros();

  auto covers_z = [&](uint32_t set) {
    for (const Pos& p : zs) {
      const bool c = ((set >> p.r) & 1u) || ((set >> (m0 + p.c)) & 1u);
      if (!c) return false;
    }
    return true;
  };

  // All (k-1)-coverings at the concrete dimensions.
  std::vector<uint32_t> coverings;
  const int target = k - 1;
  std::vector<int> comb(target, 0);
  if (target == 0) {
    if (covers_z(0)) coverings.push_back(0);
  } else {
    for (int i = 0; i < target; ++i) comb[i] = i;
    while (true) {
      uint32_t s = 0;
      for (int i : comb) s |= uint32_t(1) << i;
      if (covers_z(s)) coverings.push_back(s);
      int i = target - 1;
      while (i >= 0 && comb[i] == lines - target + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < target; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  if (coverings.empty()) return Rat(0);  // no covering: contains k-assignment

  // Closure under pairwise intersection.
  std::vector<uint32_t> poset = coverings;
  std::sort(poset.begin(), poset.end());
  poset.erase(std::unique(poset.begin(), poset.end()), poset.end());
  bool grew = true;
  while (grew) {
    grew = false;
    const size_t sz = poset.size();
    for (size_t a = 0; a < sz; ++a)
      for (size_t b = a + 1; b < sz; ++b) {
        const uint32_t x = poset[a] & poset[b];
        if (!std::binary_search(poset.begin(), poset.end(), x)) {
          poset.insert(std::lower_bound(poset.begin(), poset.end(), x), x);
          grew = true;
        }
      }
  }

  // Moebius values from the artificial bottom, processed supersets-first
  // (reverse inclusion: alpha <= beta iff alpha contains beta).
  std::vector<size_t> order(poset.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const int pa = std::popcount(poset[a]), pb = std::popcount(poset[b]);
    if (pa != pb) return pa > pb;
    return poset[a] < poset[b];
  });
  std::vector<Rat> mu(poset.size(), Rat(0));
  for (size_t oi = 0; oi < order.size(); ++oi) {
    const size_t i = order[oi];
    Rat acc(1);  // mu(bottom) = 1
    for (size_t oj = 0; oj < oi; ++oj) {
      const size_t j = order[oj];
      // strictly below i: j is a proper superset of i
      if (poset[j] != poset[i] && (poset[j] & poset[i]) == poset[i])
        acc += mu[j];
    }
    mu[i] = -acc;
  }

  Rat f(0);
  for (size_t i = 0; i < poset.size(); ++i) {
    const int ia = std::popcount(poset[i] & ((uint32_t(1) << m0) - 1));
    const int ja = std::popcount(poset[i] >> m0);
    const Int denom = Int(m0 - ia) * Int(n0 - ja);
    f += -mu[i] / Rat(denom);
  }
  return f;
}

RatFunc diagonal_F(int k) {
  if (k < 1) throw Error("diagonal_F: k must be >= 1");
  RatFunc f;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; i + j < k; ++j) {
      const int rest = k - 1 - i - j;
      Int tri = factorial_int(k - 1) /
                (factorial_int(i) * factorial_int(j) * factorial_int(rest));
      Rat coef = Rat(tri);
      if (rest % 2 != 0) coef = -coef;
      f += RatFunc(coef) * basis_term(i, j);
    }
  }
  return f;
}

RatFunc olin_probability(int k) {
  if (k < 1) throw Error("olin_probability: k must be >= 1");
  const RatFunc mn = RatFunc::sym_m() * RatFunc::sym_n();
  return RatFunc(1) - RatFunc(Rat(binom_int(k, 2))) / mn;
}

ZeroPattern with_zero(const ZeroPattern& z, const Pos& cell) {
  const int nr = std::max(z.rows(), cell.r + 1);
  const int nc = std::max(z.cols(), cell.c + 1);
  ZeroPattern out(nr, nc);
  for (const Pos& p : z.zeros()) out.add(p.r, p.c);
  out.add(cell.r, cell.c);
  return out;
}

RatFunc zero_use_probability(Engine& engine, const ZeroPattern& z,
                             const Pos& cell, int k, Via via) {
  if (z.has(cell.r, cell.c)) throw Error("zero_use_probability: cell is a zero");
  const ZeroPattern z2 = with_zero(z, cell);
  if (via == Via::kConjecture)
    return main_conjecture_F(z, k) - main_conjecture_F(z2, k);
  CaseMatrix a, b;
  a.k = k;
  a.pattern = z;
  b.k = k;
  b.pattern = z2;
  return engine.recurse(a) - engine.recurse(b);
}

bool b00_acyclic_check(const ZeroPattern& z, int k) {
  if (!is_acyclic(z)) throw Error("b00_acyclic_check: pattern is not acyclic");
  const int nz = z.count();
  Rat expect(binom_int(k - 1, nz));
  if (nz % 2 != 0) expect = -expect;
  return b_formula(z, k).coeffs[0][0] == expect;
}

std::vector<int> lambda_row(const ZeroPattern& z) {
  std::vector<int> counts;
  for (int r = 0; r < z.rows(); ++r) {
    const int c = std::popcount(z.row_bits(r));
    if (c > 0) counts.push_back(c);
  }
  std::sort(counts.rbegin(), counts.rend());
  return counts;
}

std::vector<int> lambda_col(const ZeroPattern& z) {
  return lambda_row(z.transposed());
}

bool lambda_invariance_check(const ZeroPattern& z1, const ZeroPattern& z2,
                             int k) {
  if (lambda_row(z1) != lambda_row(z2))
    throw Error("lambda_invariance_check: row partitions differ");
  const BTriangle a = b_formula(z1, k), b = b_formula(z2, k);
  for (int i = 0; i < k; ++i)
    if (!(a.coeffs[i][0] == b.coeffs[i][0])) return false;
  return true;
}

}  // namespace assignlab
