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

#include "assignlab/pattern.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

namespace assignlab {

int ZeroPattern::count() const {
  int n = 0;
  for (uint64_t b : bits_) n += std::popcount(b);
  return n;
}

std::vector<Pos> ZeroPattern::zeros() const {
  std::vector<Pos> out;
  for (int r = 0; r < rows_; ++r)
    for (uint64_t b = bits_[r]; b; b &= b - 1)
      out.push_back({r, std::countr_zero(b)});
  return out;
}

ZeroPattern ZeroPattern::transposed() const {
  ZeroPattern t(cols_, rows_);
  for (const Pos& p : zeros()) t.add(p.c, p.r);
  return t;
}

bool CoverSet::has_row(int r) const {
  return std::binary_search(rows.begin(), rows.end(), r);
}
bool CoverSet::has_col(int c) const {
  return std::binary_search(cols.begin(), cols.end(), c);
}

bool cover_less(const CoverSet& a, const CoverSet& b) {
  if (a.cols.size() != b.cols.size()) return a.cols.size() < b.cols.size();
  if (a.rows != b.rows) return a.rows < b.rows;
  return a.cols < b.cols;
}

bool covers(const ZeroPattern& z, const CoverSet& cover) {
  uint64_t colmask = 0;
  for (int c : cover.cols) colmask |= uint64_t(1) << c;
  for (int r = 0; r < z.rows(); ++r) {
    if (cover.has_row(r)) continue;
    if (z.row_bits(r) & ~colmask) return false;
  }
  return true;
}

namespace {

// DFS augmenting step for row r over the zero adjacency.
bool try_augment(const ZeroPattern& z, int r, std::vector<int>& match_col,
                 std::vector<bool>& used) {
  for (uint64_t b = z.row_bits(r); b; b &= b - 1) {
    const int c = std::countr_zero(b);
    if (used[c]) continue;
    used[c] = true;
    if (match_col[c] < 0 || try_augment(z, match_col[c], match_col, used)) {
      match_col[c] = r;
      return true;
    }
  }
  return false;
}

std::vector<int> matching_cols(const ZeroPattern& z) {
  std::vector<int> match_col(z.cols(), -1);
  for (int r = 0; r < z.rows(); ++r) {
    std::vector<bool> used(z.cols(), false);
    try_augment(z, r, match_col, used);
  }
  return match_col;
}

}  // namespace

Matching max_zero_matching(const ZeroPattern& z) {
  Matching m;
  std::vector<int> match_col = matching_cols(z);
  for (int c = 0; c < z.cols(); ++c)
    if (match_col[c] >= 0) m.cells.push_back({match_col[c], c});
  std::sort(m.cells.begin(), m.cells.end());
  m.size = static_cast<int>(m.cells.size());
  return m;
}

int min_cover_size(const ZeroPattern& z) { return max_zero_matching(z).size; }

std::vector<CoverSet> all_min_covers(const ZeroPattern& z) {
  if (z.rows() > 8 || z.cols() > 8)
    throw BoundError("all_min_covers: window exceeds 8x8");
  const int target = min_cover_size(z);
  std::vector<CoverSet> out;
  for (uint32_t rm = 0; rm < (1u << z.rows()); ++rm) {
    if (std::popcount(rm) > target) continue;
    for (uint32_t cm = 0; cm < (1u << z.cols()); ++cm) {
      if (std::popcount(rm) + std::popcount(cm) != target) continue;
      CoverSet cs;
      for (int r = 0; r < z.rows(); ++r)
        if ((rm >> r) & 1) cs.rows.push_back(r);
      for (int c = 0; c < z.cols(); ++c)
        if ((cm >> c) & 1) cs.cols.push_back(c);
      if (covers(z, cs)) out.push_back(std::move(cs));
    }
  }
  std::sort(out.begin(), out.end(), cover_less);
  return out;
}

CoverSet min_cover(const ZeroPattern& z) {
  if (z.rows() <= 8 && z.cols() <= 8) {
    auto all = all_min_covers(z);
    return all.empty() ? CoverSet{} : all.front();
  }
  // Koenig construction from alternating reachability.
  std::vector<int> match_col = matching_cols(z);
  std::vector<int> match_row(z.rows(), -1);
  for (int c = 0; c < z.cols(); ++c)
    if (match_col[c] >= 0) match_row[match_col[c]] = c;
  std::vector<bool> vis_row(z.rows(), false), vis_col(z.cols(), false);
  std::vector<int> stack;
  for (int r = 0; r < z.rows(); ++r)
    if (match_row[r] < 0) {
      vis_row[r] = true;
      stack.push_back(r);
    }
  while (!stack.empty()) {
    const int r = stack.back();
    stack.pop_back();
    for (uint64_t b = z.row_bits(r); b; b &= b - 1) {
      const int c = std::countr_zero(b);
      if (c == match_row[r] || vis_col[c]) continue;
      vis_col[c] = true;
      const int r2 = match_col[c];
      if (r2 >= 0 && !vis_row[r2]) {
        vis_row[r2] = true;
        stack.push_back(r2);
      }
    }
  }
  CoverSet cs;
  for (int r = 0; r < z.rows(); ++r)
    if (match_row[r] >= 0 && !vis_row[r]) cs.rows.push_back(r);
  for (int c = 0; c < z.cols(); ++c)
    if (vis_col[c]) cs.cols.push_back(c);
  return cs;
}

bool contains_assignment(const ZeroPattern& z, int k) {
  if (k <= 0) return true;
  return max_zero_matching(z).size >= k;
}

bool is_partial_cover(const ZeroPattern& z, const CoverSet& sigma, int budget) {
  if (budget < 0) return false;
  ZeroPattern rest(z.rows(), z.cols());
  uint64_t colmask = 0;
  for (int c : sigma.cols)
    if (c < z.cols()) colmask |= uint64_t(1) << c;
  for (int r = 0; r < z.rows(); ++r) {
    if (sigma.has_row(r)) continue;
    for (uint64_t b = z.row_bits(r) & ~colmask; b; b &= b - 1)
      rest.add(r, std::countr_zero(b));
  }
  return min_cover_size(rest) <= budget;
}

CoverCounts partial_cover_counts(const ZeroPattern& z, int k) {
  if (z.rows() > 8 || z.cols() > 8)
    throw BoundError("partial_cover_counts: window exceeds 8x8");
  if (k > 8) throw BoundError("partial_cover_counts: k exceeds 8");
  CoverCounts cc;
  cc.k = k;
  cc.rows = z.rows();
  cc.cols = z.cols();
  cc.g.assign(z.rows() + 1,
              std::vector<std::vector<long>>(
                  z.cols() + 1, std::vector<long>(std::max(k, 1), 0)));
  for (uint32_t rm = 0; rm < (1u << z.rows()); ++rm) {
    for (uint32_t cm = 0; cm < (1u << z.cols()); ++cm) {
      // minimum completion cost of this line set
      ZeroPattern rest(z.rows(), z.cols());
      for (int r = 0; r < z.rows(); ++r) {
        if ((rm >> r) & 1) continue;
        for (uint64_t b = z.row_bits(r) & ~uint64_t(cm); b; b &= b - 1)
          rest.add(r, std::countr_zero(b));
      }
      const int need = min_cover_size(rest);
      const int s = std::popcount(rm), t = std::popcount(cm);
      for (int r = need; r <= k - 1; ++r) ++cc.g[s][t][r];
    }
  }
  return cc;
}

bool superfluous(const ZeroPattern& z, int k, const Pos& cell) {
  if (z.has(cell.r, cell.c))
    throw Error("superfluous: cell is a zero");
  // Minimum cover size when the cell's row and column are banned: zeros in
  // the banned row force their columns, zeros in the banned column force
  // their rows, the rest is a free subproblem.
  uint64_t forced_cols = 0;
  std::vector<bool> forced_row(z.rows(), false);
  if (cell.r >= 0 && cell.r < z.rows()) forced_cols = z.row_bits(cell.r);
  int nforced_rows = 0;
  if (cell.c >= 0 && cell.c < z.cols()) {
    for (int r = 0; r < z.rows(); ++r)
      if (z.has(r, cell.c) && r != cell.r) {
        forced_row[r] = true;
        ++nforced_rows;
      }
  }
  ZeroPattern rest(z.rows(), z.cols());
  for (int r = 0; r < z.rows(); ++r) {
    if (r == cell.r || forced_row[r]) continue;
    for (uint64_t b = z.row_bits(r) & ~forced_cols; b; b &= b - 1)
      rest.add(r, std::countr_zero(b));
  }
  const int banned_min =
      std::popcount(forced_cols) + nforced_rows + min_cover_size(rest);
  return banned_min >= k;
}

ForcedLines forced_lines(const ZeroPattern& z, int k) {
  ForcedLines out;
  for (int r = 0; r < z.rows(); ++r) {
    const uint64_t req_cols = z.row_bits(r);
    if (req_cols == 0) continue;
    ZeroPattern rest(z.rows(), z.cols());
    for (int r2 = 0; r2 < z.rows(); ++r2) {
      if (r2 == r) continue;
      for (uint64_t b = z.row_bits(r2) & ~req_cols; b; b &= b - 1)
        rest.add(r2, std::countr_zero(b));
    }
    if (std::popcount(req_cols) + min_cover_size(rest) >= k) out.rows.insert(r);
  }
  for (int c = 0; c < z.cols(); ++c) {
    std::vector<int> req_rows;
    for (int r = 0; r < z.rows(); ++r)
      if (z.has(r, c)) req_rows.push_back(r);
    if (req_rows.empty()) continue;
    ZeroPattern rest(z.rows(), z.cols());
    for (int r = 0; r < z.rows(); ++r) {
      if (std::binary_search(req_rows.begin(), req_rows.end(), r)) continue;
      for (uint64_t b = z.row_bits(r) & ~(uint64_t(1) << c); b; b &= b - 1)
        rest.add(r, std::countr_zero(b));
    }
    if (static_cast<int>(req_rows.size()) + min_cover_size(rest) >= k)
      out.cols.insert(c);
  }
  return out;
}

namespace {

bool acyclic_rec(const std::vector<Pos>& zs, uint32_t mask, int rows, int cols,
                 std::map<uint32_t, bool>& memo) {
  if (mask == 0) return true;
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  bool ok = false;
  for (uint32_t m = mask; m && !ok; m &= m - 1) {
    const int idx = std::countr_zero(m);
    const Pos z = zs[idx];
    const uint32_t rest = mask & ~(uint32_t(1) << idx);
    ZeroPattern zp(rows, cols);
    uint32_t rowset = 0, colset = 0;
    for (uint32_t mm = rest; mm; mm &= mm - 1) {
      const Pos p = zs[std::countr_zero(mm)];
      zp.add(p.r, p.c);
      rowset |= uint32_t(1) << p.r;
      colset |= uint32_t(1) << p.c;
    }
    const int mc = min_cover_size(zp);
    const bool row_cover_ok =
        std::popcount(rowset) == mc && !((rowset >> z.r) & 1);
    const bool col_cover_ok =
        std::popcount(colset) == mc && !((colset >> z.c) & 1);
    if ((row_cover_ok || col_cover_ok) && acyclic_rec(zs, rest, rows, cols, memo))
      ok = true;
  }
  memo[mask] = ok;
  return ok;
}

}  // namespace

bool is_acyclic(const ZeroPattern& z) {
  const auto zs = z.zeros();
  if (zs.size() > 12) throw BoundError("is_acyclic: more than 12 zeros");
  std::map<uint32_t, bool> memo;
  return acyclic_rec(zs, (uint32_t(1) << zs.size()) - 1, z.rows(), z.cols(),
                     memo);
}

namespace {

// Cell labels for canonicalization: 0 generic, 1 zero, 2+i for the i-th
// distinct extra signature (sorted).
struct LabeledWindow {
  int rows = 0, cols = 0;
  std::vector<std::vector<int>> label;
  std::vector<std::string> signatures;  // in label-id order
};

LabeledWindow build_labels(const ZeroPattern& z,
                           const std::vector<std::pair<Pos, std::string>>& extras) {
  LabeledWindow w;
  w.rows = z.rows();
  w.cols = z.cols();
  w.label.assign(w.rows, std::vector<int>(w.cols, 0));
  for (const Pos& p : z.zeros()) w.label[p.r][p.c] = 1;
  std::vector<std::string> sigs;
  for (const auto& [p, s] : extras) sigs.push_back(s);
  std::sort(sigs.begin(), sigs.end());
  sigs.erase(std::unique(sigs.begin(), sigs.end()), sigs.end());
  for (const auto& [p, s] : extras) {
    if (z.has(p.r, p.c)) throw Error("canonical_key: extra on a zero");
    const int id =
        2 + static_cast<int>(std::lower_bound(sigs.begin(), sigs.end(), s) -
                             sigs.begin());
    w.label[p.r][p.c] = id;
  }
  w.signatures = std::move(sigs);
  return w;
}

// Iterated color refinement; returns column color classes in canonical order.
std::vector<std::vector<int>> column_classes(const LabeledWindow& w) {
  std::vector<int> rc(w.rows, 0), cc(w.cols, 0);
  for (int iter = 0; iter < w.rows + w.cols + 2; ++iter) {
    // recolor columns by (old color, sorted multiset of (row color, label))
    std::vector<std::pair<std::vector<int>, int>> csig(w.cols);
    for (int c = 0; c < w.cols; ++c) {
      std::vector<int> sig;
      for (int r = 0; r < w.rows; ++r) {
        sig.push_back(rc[r] * 4096 + w.label[r][c]);
      }
      std::sort(sig.begin(), sig.end());
      sig.push_back(cc[c]);
      csig[c] = {sig, c};
    }
    auto sorted_c = csig;
    std::sort(sorted_c.begin(), sorted_c.end());
    std::vector<int> new_cc(w.cols);
    int color = 0;
    for (size_t i = 0; i < sorted_c.size(); ++i) {
      if (i > 0 && sorted_c[i].first != sorted_c[i - 1].first) ++color;
      new_cc[sorted_c[i].second] = color;
    }
    // recolor rows symmetrically
    std::vector<std::pair<std::vector<int>, int>> rsig(w.rows);
    for (int r = 0; r < w.rows; ++r) {
      std::vector<int> sig;
      for (int c = 0; c < w.cols; ++c) sig.push_back(new_cc[c] * 4096 + w.label[r][c]);
      std::sort(sig.begin(), sig.end());
      sig.push_back(rc[r]);
      rsig[r] = {sig, r};
    }
    auto sorted_r = rsig;
    std::sort(sorted_r.begin(), sorted_r.end());
    std::vector<int> new_rc(w.rows);
    color = 0;
    for (size_t i = 0; i < sorted_r.size(); ++i) {
      if (i > 0 && sorted_r[i].first != sorted_r[i - 1].first) ++color;
      new_rc[sorted_r[i].second] = color;
    }
    if (new_cc == cc && new_rc == rc) break;
    cc = std::move(new_cc);
    rc = std::move(new_rc);
  }
  int ncolors = cc.empty() ? 0 : *std::max_element(cc.begin(), cc.end()) + 1;
  std::vector<std::vector<int>> classes(ncolors);
  for (int c = 0; c < w.cols; ++c) classes[cc[c]].push_back(c);
  return classes;
}

}  // namespace

std::string canonical_key(
    const ZeroPattern& z,
    const std::vector<std::pair<Pos, std::string>>& extras) {
  if (z.rows() > 8 || z.cols() > 8)
    throw BoundError("canonical_key: window exceeds 8x8");
  LabeledWindow w = build_labels(z, extras);

  // Minimal row-major label matrix over column orders respecting the
  // refinement classes (rows are then free: sorting achieves their minimum).
  auto classes = column_classes(w);
  std::vector<int> col_order;
  for (auto& cls : classes) col_order.insert(col_order.end(), cls.begin(), cls.end());

  std::vector<std::vector<int>> best;
  // enumerate products of in-class permutations
  std::vector<std::vector<int>> perms{col_order};
  for (size_t ci = 0, off = 0; ci < classes.size(); off += classes[ci].size(), ++ci) {
    if (classes[ci].size() <= 1) continue;
    std::vector<std::vector<int>> next;
    for (const auto& base : perms) {
      std::vector<int> cls(base.begin() + off, base.begin() + off + classes[ci].size());
      std::sort(cls.begin(), cls.end());
      do {
        auto cand = base;
        std::copy(cls.begin(), cls.end(), cand.begin() + off);
        next.push_back(cand);
      } while (std::next_permutation(cls.begin(), cls.end()));
    }
    perms = std::move(next);
    if (perms.size() > 200000)
      throw BoundError("canonical_key: too many column orders");
  }
  for (const auto& order : perms) {
    std::vector<std::vector<int>> rowsv(w.rows);
    for (int r = 0; r < w.rows; ++r) {
      rowsv[r].reserve(w.cols);
      for (int c : order) rowsv[r].push_back(w.label[r][c]);
    }
    std::sort(rowsv.begin(), rowsv.end());
    if (best.empty() || rowsv < best) best = std::move(rowsv);
  }

  std::ostringstream os;
  os << z.rows() << "x" << z.cols() << ":";
  for (const auto& row : best) {
    for (int v : row) os << v << ",";
    os << ";";
  }
  os << "|";
  for (const auto& s : w.signatures) os << s << "$";
  return os.str();
}

PatternText parse_pattern_text(const std::string& text) {
  std::istringstream is(text);
  int r = 0, c = 0;
  if (!(is >> r >> c)) throw ParseError("pattern: expected 'R C' header");
  if (r < 0 || c < 0 || r > 64 || c > 64)
    throw ParseError("pattern: dimensions out of range");
  PatternText out;
  out.zeros = ZeroPattern(r, c);
  std::string line;
  std::getline(is, line);  // rest of header line
  for (int i = 0; i < r; ++i) {
    if (!std::getline(is, line)) throw ParseError("pattern: missing row");
    if (static_cast<int>(line.size()) < c)
      throw ParseError("pattern: short row '" + line + "'");
    for (int j = 0; j < c; ++j) {
      const char ch = line[j];
      if (ch == '0') {
        out.zeros.add(i, j);
      } else if (ch == '.') {
        // generic
      } else if (ch >= 'A' && ch <= 'Z') {
        out.labels.push_back({ch, Pos{i, j}});
      } else {
        throw ParseError(std::string("pattern: bad cell '") + ch + "'");
      }
    }
  }
  return out;
}

std::string print_pattern_text(
    const ZeroPattern& z, const std::vector<std::pair<char, Pos>>& labels) {
  std::ostringstream os;
  os << z.rows() << " " << z.cols() << "\n";
  for (int r = 0; r < z.rows(); ++r) {
    for (int c = 0; c < z.cols(); ++c) {
      char ch = z.has(r, c) ? '0' : '.';
      for (const auto& [lc, p] : labels)
        if (p.r == r && p.c == c) ch = lc;
      os << ch;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace assignlab
