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

#ifndef ASSIGNLAB_ENGINE_HPP
#define ASSIGNLAB_ENGINE_HPP

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "assignlab/case_matrix.hpp"

namespace assignlab {

// One terminal branch of a race: which entry finished first, with what
// probability, how much excess was accumulated, and the resulting case.
struct BranchOutcome {
  RatFunc probability;
  RatFunc conditional_eps_mean;       // sum of 1/rate over eps_stage_rates
  std::vector<RatFunc> eps_stage_rates;  // total-rate values of visited states
  CaseMatrix child;
};

// Value-preserving simplification result. The original case's value is
// obtained from the reduced case's value by substituting m -> m - dm,
// n -> n - dn.
struct ReducedCase {
  CaseMatrix cm;
  int dm = 0;
  int dn = 0;
};

// Memoized values keyed by canonical case form. Inserts are idempotent;
// re-inserting a key with a different value is a fatal inconsistency.
class MemoTable {
 public:
  std::optional<RatFunc> find(const std::string& key) const;
  void insert(const std::string& key, const RatFunc& value);
  size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, RatFunc> map_;
};

struct EngineOptions {
  int depth_limit = 64;
  // Use the proven closed form as a base case whenever the zeros contain a
  // (k-1)-assignment and there are no special entries. Off by default so the
  // recursion stays an independent check of that formula.
  bool closed_form_base = false;
  // When every minimum cover is hazardous, fall back to the alternative
  // recursion before giving up.
  bool alt_fallback = true;
};

struct EngineStats {
  size_t cases_expanded = 0;
  size_t memo_hits = 0;
  size_t races = 0;
  size_t hazard_skips = 0;
  int max_depth = 0;
};

class Engine {
 public:
  explicit Engine(EngineOptions opts = {}) : opts_(opts) {}

  // F value of a case by the covering recursion (memoized).
  RatFunc recurse(const CaseMatrix& cm) { return recurse_at(cm, 0); }

  // F value by the usage-probability recursion at the top level; children
  // are evaluated by the main recursion. Throws InapplicableError when no
  // minimum cover satisfies its preconditions.
  RatFunc recurse_alt(const CaseMatrix& cm);

  // F_k(m,n) for the empty pattern; k <= 5 unless allow_long.
  RatFunc f_empty(int k, bool allow_long = false);

  // F_{n0}(n0,n0) at concrete dimensions via row-minima subtraction,
  // random zero-column enumeration and the column-minima second stage.
  Rat square_reduce(int n0);

  // Zero when the pattern contains a k-assignment; the proven closed form
  // when requested and applicable; empty otherwise.
  std::optional<RatFunc> base_case(const CaseMatrix& cm) const;

  static ReducedCase reduce(const CaseMatrix& cm);

  // Best cover by (doubly covered specials, doubly covered cells, canonical
  // order); requires base_case to be empty.
  static CoverSet choose_cover(const CaseMatrix& cm);

  // Expand the exponential race for the given cover. Throws HazardError when
  // two or more entries would receive the same accumulated excess.
  static std::vector<BranchOutcome> race(const CaseMatrix& cm,
                                         const CoverSet& cover);

  // JSON audit tree of the recursion below cm: canonical key -> node with
  // cover, branch probabilities, eps means and child keys.
  std::string explain_json(const CaseMatrix& cm);

  MemoTable& memo() { return memo_; }
  const EngineStats& stats() const { return stats_; }
  const EngineOptions& options() const { return opts_; }

 private:
  RatFunc recurse_at(const CaseMatrix& cm, int depth);
  RatFunc core(const CaseMatrix& reduced, int depth);
  RatFunc alt_core(const CaseMatrix& reduced, int depth);

  EngineOptions opts_;
  MemoTable memo_;
  EngineStats stats_;
  std::mutex stats_mu_;
};

}  // namespace assignlab

#endif  // ASSIGNLAB_ENGINE_HPP
