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

#ifndef ASSIGNLAB_PATTERN_HPP
#define ASSIGNLAB_PATTERN_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "assignlab/errors.hpp"

namespace assignlab {

// 0-based matrix position inside a window.
struct Pos {
  int r = 0;
  int c = 0;
  friend bool operator==(const Pos& a, const Pos& b) {
    return a.r == b.r && a.c == b.c;
  }
  friend bool operator<(const Pos& a, const Pos& b) {
    return a.r != b.r ? a.r < b.r : a.c < b.c;
  }
};

// Window of positions marked zero; cells outside the window are generic.
class ZeroPattern {
 public:
  ZeroPattern() = default;
  ZeroPattern(int rows, int cols) : rows_(rows), cols_(cols), bits_(rows, 0) {
    if (rows < 0 || cols < 0 || cols > 64)
      throw BoundError("ZeroPattern: window out of range");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool has(int r, int c) const {
    return r >= 0 && r < rows_ && c >= 0 && c < cols_ &&
           (bits_[r] >> c) & 1u;
  }
  void add(int r, int c) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw BoundError("ZeroPattern::add: position outside window");
    bits_[r] |= uint64_t(1) << c;
  }
  void remove(int r, int c) {
    if (has(r, c)) bits_[r] &= ~(uint64_t(1) << c);
  }
  uint64_t row_bits(int r) const { return bits_[r]; }

  int count() const;
  std::vector<Pos> zeros() const;
  bool empty() const { return count() == 0; }

  ZeroPattern transposed() const;

  friend bool operator==(const ZeroPattern& a, const ZeroPattern& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<uint64_t> bits_;
};

// A set of window rows and columns. Indices are 0-based and kept sorted.
struct CoverSet {
  std::vector<int> rows;
  std::vector<int> cols;
  int size() const { return static_cast<int>(rows.size() + cols.size()); }
  bool has_row(int r) const;
  bool has_col(int c) const;
  friend bool operator==(const CoverSet& a, const CoverSet& b) {
    return a.rows == b.rows && a.cols == b.cols;
  }
};

// Canonical cover order: fewest columns first, then lexicographic row set,
// then lexicographic column set.
bool cover_less(const CoverSet& a, const CoverSet& b);

bool covers(const ZeroPattern& z, const CoverSet& cover);

struct Matching {
  int size = 0;
  std::vector<Pos> cells;
};

// Maximum set of zeros, no two sharing a row or column (augmenting paths).
Matching max_zero_matching(const ZeroPattern& z);
int min_cover_size(const ZeroPattern& z);

// Deterministic minimum cover. On windows up to 8x8 this is the canonical
// minimum of all_min_covers; on larger windows it falls back to the
// alternating-reachability construction (still deterministic).
CoverSet min_cover(const ZeroPattern& z);

// Every minimum-size cover, canonically ordered. Window must be <= 8x8.
std::vector<CoverSet> all_min_covers(const ZeroPattern& z);

bool contains_assignment(const ZeroPattern& z, int k);

// True iff the zeros not covered by sigma admit a cover of size <= budget.
bool is_partial_cover(const ZeroPattern& z, const CoverSet& sigma, int budget);

// g[s][t][r] = number of (s-row, t-col) window subsets sigma such that
// is_partial_cover(z, sigma, r), for 0 <= r <= k-1.
struct CoverCounts {
  int k = 0;
  int rows = 0;
  int cols = 0;
  // indexed [s][t][r]
  std::vector<std::vector<std::vector<long>>> g;
  long get(int s, int t, int r) const { return g[s][t][r]; }
};
CoverCounts partial_cover_counts(const ZeroPattern& z, int k);

// True iff every covering of z by at most k-1 lines covers the cell
// (the cell's row and column may lie outside the window).
bool superfluous(const ZeroPattern& z, int k, const Pos& cell);

// Window lines present in every cover of z with at most k-1 lines.
struct ForcedLines {
  std::set<int> rows;
  std::set<int> cols;
};
ForcedLines forced_lines(const ZeroPattern& z, int k);

// Reachability by the recursive construction: start from the empty set and
// repeatedly add one cell left uncovered by an all-row or all-column optimal
// cover. Decided by exhaustive reverse search; |z| <= 12.
bool is_acyclic(const ZeroPattern& z);

// Opaque key equal for two annotated patterns iff some row permutation x
// column permutation maps one onto the other (zeros to zeros, labels to
// equal labels). Transposing is not a symmetry.
std::string canonical_key(const ZeroPattern& z,
                          const std::vector<std::pair<Pos, std::string>>& extras);

// Pattern text format: first line "R C", then R lines of C characters,
// '0' = zero, '.' = generic, 'A'-'Z' = labeled special entry.
struct PatternText {
  ZeroPattern zeros;
  std::vector<std::pair<char, Pos>> labels;
};
PatternText parse_pattern_text(const std::string& text);
std::string print_pattern_text(const ZeroPattern& z,
                               const std::vector<std::pair<char, Pos>>& labels);

}  // namespace assignlab

#endif  // ASSIGNLAB_PATTERN_HPP
