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

#ifndef ASSIGNLAB_GOLDEN_HPP
#define ASSIGNLAB_GOLDEN_HPP

#include <string>
#include <vector>

#include "assignlab/engine.hpp"

namespace assignlab {

// One corpus entry: a case plus its expected value in triangle-plus-residual
// display form, with cover/uses provenance notes.
struct GoldenCase {
  int id = 0;
  int k = 0;
  CaseMatrix input;
  bool f_zero = false;  // value is identically zero (empty triangle)
  std::vector<std::vector<Int>> b;
  std::vector<std::string> residual;
  std::vector<std::string> cover;
  std::vector<int> uses;
};

std::vector<GoldenCase> load_corpus(const std::string& path);
std::vector<GoldenCase> parse_corpus(const std::string& json_text);
std::string print_corpus(const std::vector<GoldenCase>& cases);

// Triangle plus residual sum as one exact value.
RatFunc golden_expected_F(const GoldenCase& gc);

struct GoldenOutcome {
  int id = 0;
  bool pass = false;
  std::string message;
};

// Run the engine over the selected ids (all when empty) on a worker pool;
// results come back sorted by id regardless of scheduling.
std::vector<GoldenOutcome> run_corpus(Engine& engine,
                                      const std::vector<GoldenCase>& cases,
                                      const std::vector<int>& ids,
                                      int workers);

}  // namespace assignlab

#endif  // ASSIGNLAB_GOLDEN_HPP
