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

#ifndef ASSIGNLAB_ASYMPTOTICS_HPP
#define ASSIGNLAB_ASYMPTOTICS_HPP

#include <cstdint>
#include <vector>

#include "assignlab/errors.hpp"

namespace assignlab {

// Region K inside the unit square whose complement carries the zeros:
// quarter-circle x^2+y^2 >= 1, or its p-norm generalization x^p+y^p >= 1.
struct RegionSpec {
  enum class Kind { kQuarterCircle, kPnorm } kind = Kind::kQuarterCircle;
  double p = 2.0;  // used by kPnorm; must exceed 1
};

// Minimum weighted strip-covering cost of K: a + b - (a^u + b^u)^(1/u)
// with u = p/(p-1) (u = 2 for the quarter circle).
double m_ab(const RegionSpec& region, double a, double b);

// Membership in the limit region D: M_{1-x,1-y}(K) < 1 - x - y.
bool in_region_D(const RegionSpec& region, double x, double y);

// Integral of 1/((1-x)(1-y)) over D, via the one-dimensional reduction
// -(1/u^2) * int_0^1 log(1-t)/t dt with adaptive Gauss-Kronrod refinement.
double limit_integral(const RegionSpec& region, double tol);

// (1 - 1/p)^2 * pi^2 / 6.
double closed_form_limit(double p);

struct ConvergenceRow {
  int n = 0;
  double f_hat = 0.0;
};

// Discretized zero set: cell (i,j) is a zero iff the corresponding square
// intersects K (closed-form corner test). F_hat is the conjectured value at
// k = m = n with subset probabilities estimated (or enumerated exactly when
// the subset count is small).
std::vector<ConvergenceRow> convergence_table(const RegionSpec& region,
                                              const std::vector<int>& n_list,
                                              long subset_samples,
                                              uint64_t seed);

}  // namespace assignlab

#endif  // ASSIGNLAB_ASYMPTOTICS_HPP
