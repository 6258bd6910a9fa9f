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

#ifndef ASSIGNLAB_RATFUNC_HPP
#define ASSIGNLAB_RATFUNC_HPP

#include <string>
#include <string_view>

#include "assignlab/poly2.hpp"

namespace assignlab {

// Normalized ratio of bivariate polynomials in m and n.
//
// Invariants after construction:
//   * den is nonzero;
//   * num and den share no polynomial factor;
//   * den has integer coefficients, content 1, and positive glex-leading
//     coefficient (m before n).
// Two RatFuncs are equal iff they are structurally identical.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Rat(1)) {}
  RatFunc(long v) : num_(Rat(v)), den_(Rat(1)) {}  // NOLINT
  explicit RatFunc(const Rat& v) : num_(v), den_(Rat(1)) {}
  explicit RatFunc(const Poly2& p) : num_(p), den_(Rat(1)) {}
  RatFunc(const Poly2& num, const Poly2& den);

  static RatFunc sym_m() { return RatFunc(Poly2::sym_m()); }
  static RatFunc sym_n() { return RatFunc(Poly2::sym_n()); }

  const Poly2& num() const { return num_; }
  const Poly2& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rat constant_value() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { a += b; return a; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { a -= b; return a; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { a *= b; return a; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { a /= b; return a; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) {
    return !(a == b);
  }
  // a/b = c/d iff a*d - c*b = 0; agrees with operator== on normalized values.
  bool equals_cross(const RatFunc& o) const {
    return (num_ * o.den_ - o.num_ * den_).is_zero();
  }

  Rat eval_at(const Rat& m0, const Rat& n0) const;

  RatFunc shift_m(int delta) const;
  RatFunc shift_n(int delta) const;

  RatFunc pow(int e) const;

  std::string to_string() const;
  // Same value with integer-root linear factors of the denominator pulled
  // out for readability, e.g. (m-2)*(2*m*n-5*n-1). Still parses.
  std::string to_string_factored() const;
  static RatFunc parse(std::string_view text);

 private:
  void normalize();
  Poly2 num_, den_;
};

// sym * (sym - 1) * ... * (sym - i + 1) / i!  with a symbolic top argument.
RatFunc binom_poly(char sym, int i);
// Same falling-factorial binomial over an arbitrary base expression.
RatFunc falling_binom(const RatFunc& base, int i);

// Exhaustive check of the alternating-sum identity
//   sum_{i=0..r} (-1)^i C(r,i)/(m0-i) = (-1)^r / (m0 * C(m0-1, r))
// in exact arithmetic.
bool lemma_sum_check(int m0, int r);

}  // namespace assignlab

#endif  // ASSIGNLAB_RATFUNC_HPP
