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

#ifndef ASSIGNLAB_POLY2_HPP
#define ASSIGNLAB_POLY2_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "assignlab/rat.hpp"

namespace assignlab {

// Exponent pair of a monomial m^dm * n^dn.
struct Exp2 {
  int dm = 0;
  int dn = 0;
  int total() const { return dm + dn; }
  friend bool operator==(const Exp2& a, const Exp2& b) {
    return a.dm == b.dm && a.dn == b.dn;
  }
};

// Graded-lexicographic order, m before n. The map is ascending, so the
// glex-leading term of a polynomial is its last entry.
struct GLexLess {
  bool operator()(const Exp2& a, const Exp2& b) const {
    if (a.total() != b.total()) return a.total() < b.total();
    return a.dm < b.dm;
  }
};

// Sparse polynomial in the symbols m and n over Rat. Stored coefficients are
// never zero; the zero polynomial is the empty map.
class Poly2 {
 public:
  using TermMap = std::map<Exp2, Rat, GLexLess>;

  Poly2() = default;
  explicit Poly2(const Rat& c) { add_term({0, 0}, c); }
  Poly2(long v) : Poly2(Rat(v)) {}  // NOLINT

  static Poly2 sym_m() { Poly2 p; p.add_term({1, 0}, 1); return p; }
  static Poly2 sym_n() { Poly2 p; p.add_term({0, 1}, 1); return p; }
  static Poly2 monomial(int dm, int dn, const Rat& c) {
    Poly2 p;
    p.add_term({dm, dn}, c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first == Exp2{0, 0});
  }
  Rat constant_value() const;

  int degree_m() const;
  int degree_n() const;
  int total_degree() const;

  const TermMap& terms() const { return terms_; }
  // glex-leading coefficient; zero polynomial yields 0.
  Rat leading_coeff() const;

  void add_term(const Exp2& e, const Rat& c);

  Poly2 operator-() const;
  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { a += b; return a; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { a -= b; return a; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2& a, const Poly2& b) {
    return a.terms_ == b.terms_;
  }

  Poly2 scaled(const Rat& c) const;

  Rat eval(const Rat& m0, const Rat& n0) const;
  // Substitute m = m0, leaving a polynomial in n (dm of all terms becomes 0).
  Poly2 eval_m(const Rat& m0) const;
  Poly2 eval_n(const Rat& n0) const;

  // Substitute m -> m + delta (and symmetrically for n).
  Poly2 shift_m(int delta) const;
  Poly2 shift_n(int delta) const;

  // All coefficient denominators are 1.
  bool has_integer_coeffs() const;
  // lcm of coefficient denominators (1 for the zero polynomial).
  Int coeff_den_lcm() const;
  // gcd of coefficient numerators for an integer-coefficient polynomial;
  // result is positive (0 for the zero polynomial).
  Int integer_content() const;

  // Deterministic expression string (glex-descending term order).
  std::string to_string() const;

 private:
  TermMap terms_;
};

// gcd over Z[m,n] of two integer-coefficient polynomials, computed with a
// primitive polynomial-remainder sequence in m over Z[n]. The result is
// primitive up to its integer-content factor and has positive glex-leading
// coefficient; gcd(0, b) = |b| normalized.
Poly2 poly_gcd(const Poly2& a, const Poly2& b);

// Exact division (throws Error if not exact). Inputs need not be integer.
Poly2 poly_divexact(const Poly2& a, const Poly2& b);

}  // namespace assignlab

#endif  // ASSIGNLAB_POLY2_HPP
