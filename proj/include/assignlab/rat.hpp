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

#ifndef ASSIGNLAB_RAT_HPP
#define ASSIGNLAB_RAT_HPP

#include <gmpxx.h>

#include <string>

#include "assignlab/errors.hpp"

namespace assignlab {

using Int = mpz_class;

// Exact rational number. Always stored canonically: gcd(|num|, den) = 1
// and den > 0 (maintained by mpq).
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(long v) : q_(v) {}  // NOLINT: implicit by design, mirrors integer literals
  explicit Rat(const Int& v) : q_(v) {}
  Rat(const Int& num, const Int& den) : q_(num, den) {
    if (den == 0) throw PoleError("Rat: zero denominator");
    q_.canonicalize();
  }
  Rat(long num, long den) : Rat(Int(num), Int(den)) {}
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  Int num() const { return q_.get_num(); }
  Int den() const { return q_.get_den(); }

  bool is_zero() const { return q_ == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw PoleError("Rat: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

  Rat abs() const { return Rat(mpq_class(::abs(q_))); }

  double to_double() const { return q_.get_d(); }

  // "p" when integral, otherwise "p/q".
  std::string to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

 private:
  mpq_class q_;
};

// C(top, k) for integer top (top may be negative: generalized binomial is not
// needed here; callers pass combinatorial arguments, so C(a, b) = 0 when
// a < b or b < 0).
inline Int binom_int(long top, long k) {
  if (k < 0 || top < 0 || top < k) return Int(0);
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top),
               static_cast<unsigned long>(k));
  return r;
}

inline Int factorial_int(long k) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

}  // namespace assignlab

#endif  // ASSIGNLAB_RAT_HPP
