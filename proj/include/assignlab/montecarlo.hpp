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

#ifndef ASSIGNLAB_MONTECARLO_HPP
#define ASSIGNLAB_MONTECARLO_HPP

#include <cstdint>
#include <set>
#include <vector>

#include "assignlab/pattern.hpp"

namespace assignlab {

struct SampleConfig {
  int m0 = 0;
  int n0 = 0;
  int k = 0;
  ZeroPattern zeros;  // window within m0 x n0
  // entries drawn as independent sums of exponentials with these rates
  std::vector<std::pair<Pos, std::vector<double>>> staged;
  long samples = 0;
  uint64_t seed = 0;
  int workers = 1;
};

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long samples = 0;
};

// Counter-based generator: the value stream depends only on (seed, counter),
// never on the worker count.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t counter);
  uint64_t next_u64();
  double next_unit();  // uniform in (0, 1]
  double next_exp();   // exp(1) via inverse cdf
 private:
  uint64_t state_;
};

// Exact minimum-cost k-assignment by k rounds of shortest augmenting paths
// on the flow network. Returns the optimum and the chosen cells.
struct AssignmentResult {
  double cost = 0.0;
  std::set<Pos> cells;
};
AssignmentResult min_cost_k_assignment(const std::vector<std::vector<double>>& costs,
                                       int k);

Estimate estimate_F(const SampleConfig& cfg);
Estimate estimate_use_probability(const SampleConfig& cfg, const Pos& cell);

struct EbIdentityResult {
  Estimate lhs;  // E(b_I)
  Estimate rhs;  // E(a_I + b_I X) - min a_i
  double z = 0.0;
};
EbIdentityResult check_eb_identity(const std::vector<double>& a,
                                   const std::vector<double>& b, long samples,
                                   uint64_t seed);

}  // namespace assignlab

#endif  // ASSIGNLAB_MONTECARLO_HPP
