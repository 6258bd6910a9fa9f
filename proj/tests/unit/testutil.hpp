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

#ifndef ASSIGNLAB_TESTS_TESTUTIL_HPP
#define ASSIGNLAB_TESTS_TESTUTIL_HPP

#include <cstdint>

#include "assignlab/pattern.hpp"
#include "assignlab/ratfunc.hpp"

namespace assignlab::testutil {

// Deterministic generator for property checks (mixed output bits; plain
// LCG low bits are periodic and skew small moduli).
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed ^ 0x9e3779b97f4a7c15ull) {}
  uint64_t next() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    uint64_t x = s;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 29;
    return x;
  }
  long pick(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }
};

inline Poly2 random_poly(Rng& g, bool nonzero) {
  Poly2 p;
  const int terms = static_cast<int>(g.pick(nonzero ? 1 : 0, 3));
  for (int t = 0; t < terms; ++t)
    p.add_term({static_cast<int>(g.pick(0, 2)), static_cast<int>(g.pick(0, 2))},
               Rat(g.pick(-4, 4), g.pick(1, 3)));
  if (nonzero && p.is_zero()) p.add_term({0, 0}, Rat(1));
  return p;
}

inline RatFunc random_ratfunc(Rng& g) {
  return RatFunc(random_poly(g, false), random_poly(g, true));
}

inline ZeroPattern random_pattern(Rng& g, int max_rows, int max_cols,
                                  int max_zeros) {
  const int r = static_cast<int>(g.pick(1, max_rows));
  const int c = static_cast<int>(g.pick(1, max_cols));
  ZeroPattern z(r, c);
  const int nz = static_cast<int>(g.pick(0, max_zeros));
  for (int i = 0; i < nz; ++i)
    z.add(static_cast<int>(g.pick(0, r - 1)), static_cast<int>(g.pick(0, c - 1)));
  return z;
}

}  // namespace assignlab::testutil

#endif  // ASSIGNLAB_TESTS_TESTUTIL_HPP
