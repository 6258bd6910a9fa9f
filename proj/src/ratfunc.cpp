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

#include "assignlab/ratfunc.hpp"

#include <cctype>
#include <vector>

namespace assignlab {

RatFunc::RatFunc(const Poly2& num, const Poly2& den) : num_(num), den_(den) {
  normalize();
}

void RatFunc::normalize() {
  if (den_.is_zero()) throw PoleError("RatFunc: zero denominator");
  if (num_.is_zero()) {
    den_ = Poly2(Rat(1));
    return;
  }
  // Clear coefficient denominators; track the induced scalar on the value.
  const Int ln = num_.coeff_den_lcm();
  const Int ld = den_.coeff_den_lcm();
  Poly2 ni = num_.scaled(Rat(ln));
  Poly2 di = den_.scaled(Rat(ld));
  Rat scalar(ld, ln);  // value = scalar * ni / di

  Poly2 g = poly_gcd(ni, di);
  if (!(g.is_constant() && g.constant_value().is_one())) {
    ni = poly_divexact(ni, g);
    di = poly_divexact(di, g);
  }
  // Make the denominator primitive with positive glex-leading coefficient:
  // value = scalar * ni / (c * di_primitive), so num = (scalar / c) * ni.
  Int c = di.integer_content();
  if (di.leading_coeff().sign() < 0) c = -c;
  di = di.scaled(Rat(Int(1), c));
  num_ = ni.scaled(scalar / Rat(c));
  den_ = di;
}

bool RatFunc::is_one() const {
  return den_.is_constant() && !den_.is_zero() && num_ == den_;
}

Rat RatFunc::constant_value() const {
  if (!is_constant()) throw Error("RatFunc: not constant");
  return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
  RatFunc r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  Poly2 n = num_ * o.den_ + o.num_ * den_;
  Poly2 d = den_ * o.den_;
  num_ = std::move(n);
  den_ = std::move(d);
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
  Poly2 n = num_ * o.den_ - o.num_ * den_;
  Poly2 d = den_ * o.den_;
  num_ = std::move(n);
  den_ = std::move(d);
  normalize();
  return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw PoleError("RatFunc: division by zero");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  normalize();
  return *this;
}

Rat RatFunc::eval_at(const Rat& m0, const Rat& n0) const {
  const Rat d = den_.eval(m0, n0);
  if (d.is_zero())
    throw PoleError("RatFunc: evaluation at a pole (m=" + m0.to_string() +
                    ", n=" + n0.to_string() + ")");
  return num_.eval(m0, n0) / d;
}

RatFunc RatFunc::shift_m(int delta) const {
  RatFunc r;
  r.num_ = num_.shift_m(delta);
  r.den_ = den_.shift_m(delta);
  // Shifting is an automorphism: coprimality and den normalization survive.
  return r;
}

RatFunc RatFunc::shift_n(int delta) const {
  RatFunc r;
  r.num_ = num_.shift_n(delta);
  r.den_ = den_.shift_n(delta);
  return r;
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) throw Error("RatFunc::pow: negative exponent");
  RatFunc r(1);
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

std::string RatFunc::to_string() const {
  if (den_.is_constant() && den_.constant_value().is_one())
    return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::string RatFunc::to_string_factored() const {
  if (den_.is_constant() && den_.constant_value().is_one())
    return num_.to_string();
  Poly2 rest = den_;
  std::vector<std::string> factors;
  for (char sym : {'m', 'n'}) {
    for (int a = -16; a <= 16; ++a) {
      const Poly2 lin = (sym == 'm' ? Poly2::sym_m() : Poly2::sym_n()) -
                        Poly2(Rat(a));
      int e = 0;
      while (!rest.is_constant() &&
             (sym == 'm' ? rest.eval_m(Rat(a)) : rest.eval_n(Rat(a)))
                 .is_zero()) {
        rest = poly_divexact(rest, lin);
        ++e;
      }
      if (e == 0) continue;
      std::string base = std::string("(") + sym;
      if (a < 0) base += "+" + std::to_string(-a);
      if (a > 0) base += "-" + std::to_string(a);
      base += ")";
      factors.push_back(e == 1 ? base : base + "^" + std::to_string(e));
    }
  }
  if (!(rest.is_constant() && rest.constant_value().is_one()))
    factors.push_back("(" + rest.to_string() + ")");
  std::string out = "(" + num_.to_string() + ")/(";
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) out += "*";
    out += factors[i];
  }
  out += ")";
  return out;
}

namespace {

// Recursive-descent parser for
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := INT | 'm' | 'n' | '(' expr ')' | factor '^' INT
class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  RatFunc run() {
    RatFunc v = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw ParseError("trailing characters in expression: '" +
                       std::string(s_.substr(pos_)) + "'");
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  char get() {
    char c = peek();
    ++pos_;
    return c;
  }

  RatFunc expr() {
    bool neg = false;
    if (peek() == '-') {
      get();
      neg = true;
    }
    RatFunc v = term();
    if (neg) v = -v;
    for (;;) {
      char c = peek();
      if (c == '+') {
        get();
        v += term();
      } else if (c == '-') {
        get();
        v -= term();
      } else {
        return v;
      }
    }
  }

  RatFunc term() {
    RatFunc v = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        get();
        v *= factor();
      } else if (c == '/') {
        get();
        v /= factor();
      } else {
        return v;
      }
    }
  }

  RatFunc factor() {
    RatFunc v;
    char c = peek();
    if (c == '(') {
      get();
      v = expr();
      if (peek() != ')') throw ParseError("expected ')'");
      get();
    } else if (c == 'm') {
      get();
      v = RatFunc::sym_m();
    } else if (c == 'n') {
      get();
      v = RatFunc::sym_n();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      v = RatFunc(Rat(integer()));
    } else {
      throw ParseError(std::string("unexpected character '") + c +
                       "' in expression");
    }
    while (peek() == '^') {
      get();
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("expected integer exponent after '^'");
      Int e = integer();
      if (e > 64) throw ParseError("exponent too large");
      v = v.pow(static_cast<int>(e.get_si()));
    }
    return v;
  }

  Int integer() {
    skip_ws();
    std::string digits;
    while (pos_ < s_.size() &&
           std::isdigit(static_cast<unsigned char>(s_[pos_])))
      digits += s_[pos_++];
    if (digits.empty()) throw ParseError("expected integer");
    return Int(digits);
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

RatFunc RatFunc::parse(std::string_view text) { return ExprParser(text).run(); }

RatFunc binom_poly(char sym, int i) {
  if (i < 0) throw Error("binom_poly: negative argument");
  RatFunc base = (sym == 'm') ? RatFunc::sym_m() : RatFunc::sym_n();
  if (sym != 'm' && sym != 'n') throw Error("binom_poly: symbol must be m or n");
  return falling_binom(base, i);
}

RatFunc falling_binom(const RatFunc& base, int i) {
  if (i < 0) throw Error("falling_binom: negative argument");
  RatFunc r(1);
  for (int l = 0; l < i; ++l) r *= base - RatFunc(l);
  return r / RatFunc(Rat(factorial_int(i)));
}

bool lemma_sum_check(int m0, int r) {
  if (!(1 <= r && r < m0)) throw Error("lemma_sum_check: requires 1 <= r < m0");
  Rat lhs(0);
  for (int i = 0; i <= r; ++i) {
    Rat t(binom_int(r, i), Int(m0 - i));
    lhs += (i % 2 == 0) ? t : -t;
  }
  const Int rden = Int(m0) * binom_int(m0 - 1, r);
  Rat rhs(Int((r % 2 == 0) ? 1 : -1), rden);
  return lhs == rhs;
}

}  // namespace assignlab
