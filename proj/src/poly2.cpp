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

#include "assignlab/poly2.hpp"

#include <algorithm>
#include <sstream>

namespace assignlab {

Rat Poly2::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) throw Error("Poly2: not a constant");
  return terms_.begin()->second;
}

int Poly2::degree_m() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.dm);
  return d;
}

int Poly2::degree_n() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.dn);
  return d;
}

int Poly2::total_degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.total();
}

Rat Poly2::leading_coeff() const {
  return terms_.empty() ? Rat(0) : terms_.rbegin()->second;
}

void Poly2::add_term(const Exp2& e, const Rat& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly2 Poly2::operator-() const {
  Poly2 r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      r.add_term({ea.dm + eb.dm, ea.dn + eb.dn}, ca * cb);
  return r;
}

Poly2 Poly2::scaled(const Rat& c) const {
  Poly2 r;
  if (c.is_zero()) return r;
  for (const auto& [e, co] : terms_) r.terms_.emplace(e, co * c);
  return r;
}

Rat Poly2::eval(const Rat& m0, const Rat& n0) const {
  // Degrees are tiny; cache powers directly.
  std::vector<Rat> pm(degree_m() + 1, Rat(1)), pn(degree_n() + 1, Rat(1));
  for (size_t i = 1; i < pm.size(); ++i) pm[i] = pm[i - 1] * m0;
  for (size_t i = 1; i < pn.size(); ++i) pn[i] = pn[i - 1] * n0;
  Rat r(0);
  for (const auto& [e, c] : terms_) r += c * pm[e.dm] * pn[e.dn];
  return r;
}

Poly2 Poly2::eval_m(const Rat& m0) const {
  std::vector<Rat> pm(degree_m() + 1, Rat(1));
  for (size_t i = 1; i < pm.size(); ++i) pm[i] = pm[i - 1] * m0;
  Poly2 r;
  for (const auto& [e, c] : terms_) r.add_term({0, e.dn}, c * pm[e.dm]);
  return r;
}

Poly2 Poly2::eval_n(const Rat& n0) const {
  std::vector<Rat> pn(degree_n() + 1, Rat(1));
  for (size_t i = 1; i < pn.size(); ++i) pn[i] = pn[i - 1] * n0;
  Poly2 r;
  for (const auto& [e, c] : terms_) r.add_term({e.dm, 0}, c * pn[e.dn]);
  return r;
}

Poly2 Poly2::shift_m(int delta) const {
  if (delta == 0) return *this;
  Poly2 r;
  const Rat d(delta);
  for (const auto& [e, c] : terms_) {
    // (m + delta)^dm expanded by the binomial theorem.
    Rat dpow(1);
    for (int i = e.dm; i >= 0; --i) {
      r.add_term({i, e.dn}, c * Rat(binom_int(e.dm, i)) * dpow);
      dpow *= d;
    }
  }
  return r;
}

Poly2 Poly2::shift_n(int delta) const {
  if (delta == 0) return *this;
  Poly2 r;
  const Rat d(delta);
  for (const auto& [e, c] : terms_) {
    Rat dpow(1);
    for (int j = e.dn; j >= 0; --j) {
      r.add_term({e.dm, j}, c * Rat(binom_int(e.dn, j)) * dpow);
      dpow *= d;
    }
  }
  return r;
}

bool Poly2::has_integer_coeffs() const {
  for (const auto& [e, c] : terms_)
    if (!c.is_integer()) return false;
  return true;
}

Int Poly2::coeff_den_lcm() const {
  Int l(1);
  for (const auto& [e, c] : terms_) {
    Int d = c.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

Int Poly2::integer_content() const {
  Int g(0);
  for (const auto& [e, c] : terms_) {
    if (!c.is_integer()) throw Error("integer_content: non-integer coefficient");
    Int num = c.num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  return g;
}

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // glex descending
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Exp2& e = it->first;
    const Rat& c = it->second;
    const bool neg = c.sign() < 0;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? "-" : "+");
    }
    const Rat a = c.abs();
    std::vector<std::string> factors;
    const bool has_mono = e.dm > 0 || e.dn > 0;
    if (!(a.num() == 1 && has_mono)) factors.push_back(a.num().get_str());
    if (e.dm == 1) factors.push_back("m");
    if (e.dm > 1) factors.push_back("m^" + std::to_string(e.dm));
    if (e.dn == 1) factors.push_back("n");
    if (e.dn > 1) factors.push_back("n^" + std::to_string(e.dn));
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i) os << "*";
      os << factors[i];
    }
    if (!a.is_integer()) os << "/" << a.den().get_str();
  }
  return os.str();
}

}  // namespace assignlab
