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

#include "assignlab/engine.hpp"

#include <algorithm>

#include <json.hpp>

#include "assignlab/conjecture.hpp"

namespace assignlab {

std::optional<RatFunc> MemoTable::find(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void MemoTable::insert(const std::string& key, const RatFunc& value) {
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, fresh] = map_.emplace(key, value);
  if (!fresh && !(it->second == value))
    throw Error("MemoTable: conflicting value for key " + key);
}

size_t MemoTable::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

namespace {

// A special whose stage list is exactly [1] is an ordinary exp(1) entry.
void drop_unit_specials(CaseMatrix& cm) {
  for (auto it = cm.specials.begin(); it != cm.specials.end();) {
    if (it->second.rates.size() == 1 && it->second.rates[0].is_one())
      it = cm.specials.erase(it);
    else
      ++it;
  }
}

// Remove window rows/columns holding neither a zero nor a special.
void trim(CaseMatrix& cm) {
  const int r = cm.pattern.rows(), c = cm.pattern.cols();
  std::vector<bool> keep_row(r, false), keep_col(c, false);
  for (const Pos& p : cm.pattern.zeros()) {
    keep_row[p.r] = true;
    keep_col[p.c] = true;
  }
  for (const auto& [p, st] : cm.specials) {
    keep_row[p.r] = true;
    keep_col[p.c] = true;
  }
  std::vector<int> rmap(r, -1), cmap(c, -1);
  int nr = 0, nc = 0;
  for (int i = 0; i < r; ++i)
    if (keep_row[i]) rmap[i] = nr++;
  for (int j = 0; j < c; ++j)
    if (keep_col[j]) cmap[j] = nc++;
  if (nr == r && nc == c) return;
  CaseMatrix out;
  out.k = cm.k;
  out.pattern = ZeroPattern(nr, nc);
  for (const Pos& p : cm.pattern.zeros()) out.pattern.add(rmap[p.r], cmap[p.c]);
  for (const auto& [p, st] : cm.specials)
    out.specials[Pos{rmap[p.r], cmap[p.c]}] = st;
  cm = std::move(out);
}

// Delete one window line whose use is forced in every small-enough cover;
// the remaining problem is one size smaller in k and in the corresponding
// dimension symbol.
CaseMatrix delete_row(const CaseMatrix& cm, int row) {
  CaseMatrix out;
  out.k = cm.k - 1;
  out.pattern = ZeroPattern(cm.pattern.rows() - 1, cm.pattern.cols());
  for (const Pos& p : cm.pattern.zeros())
    if (p.r != row) out.pattern.add(p.r < row ? p.r : p.r - 1, p.c);
  for (const auto& [p, st] : cm.specials) {
    if (p.r == row) continue;
    EntryStages shifted;
    for (const RatFunc& rate : st.rates)
      shifted.rates.push_back(rate.shift_m(+1));
    shifted.sort_canonical();
    out.specials[Pos{p.r < row ? p.r : p.r - 1, p.c}] = std::move(shifted);
  }
  return out;
}

CaseMatrix delete_col(const CaseMatrix& cm, int col) {
  CaseMatrix out;
  out.k = cm.k - 1;
  out.pattern = ZeroPattern(cm.pattern.rows(), cm.pattern.cols() - 1);
  for (const Pos& p : cm.pattern.zeros())
    if (p.c != col) out.pattern.add(p.r, p.c < col ? p.c : p.c - 1);
  for (const auto& [p, st] : cm.specials) {
    if (p.c == col) continue;
    EntryStages shifted;
    for (const RatFunc& rate : st.rates)
      shifted.rates.push_back(rate.shift_n(+1));
    shifted.sort_canonical();
    out.specials[Pos{p.r, p.c < col ? p.c : p.c - 1}] = std::move(shifted);
  }
  return out;
}

int count_dc_specials(const CaseMatrix& cm, const CoverSet& cover) {
  int n = 0;
  for (int r : cover.rows)
    for (int c : cover.cols)
      if (cm.is_special(r, c)) ++n;
  return n;
}

std::vector<CoverSet> ordered_covers(const CaseMatrix& cm) {
  std::vector<CoverSet> covers = all_min_covers(cm.pattern);
  std::stable_sort(covers.begin(), covers.end(),
                   [&cm](const CoverSet& a, const CoverSet& b) {
                     const int sa = count_dc_specials(cm, a);
                     const int sb = count_dc_specials(cm, b);
                     if (sa != sb) return sa < sb;
                     const size_t da = a.rows.size() * a.cols.size();
                     const size_t db = b.rows.size() * b.cols.size();
                     return da < db;
                   });
  return covers;
}

struct Participant {
  enum class Kind { Window, RowExt, ColExt, Bulk };
  Kind kind = Kind::Window;
  Pos pos{};     // window cell
  int line = -1; // source row (RowExt) or column (ColExt)
  std::vector<RatFunc> stages;
  RatFunc weight{1};
};

// Child case when `winner` completed first, after the race consumed
// stage_idx stages of each participant and accumulated the given excess.
CaseMatrix build_child(const CaseMatrix& cm, const CoverSet& cover,
                       const std::vector<Participant>& parts,
                       const std::vector<int>& stage_idx, size_t winner,
                       const std::vector<RatFunc>& eps_rates) {
  const int r = cm.pattern.rows(), c = cm.pattern.cols();
  const Participant& w = parts[winner];
  int nr = r, nc = c;
  Pos new_zero{};
  switch (w.kind) {
    case Participant::Kind::Window:
      new_zero = w.pos;
      break;
    case Participant::Kind::RowExt:
      new_zero = Pos{w.line, c};
      nc = c + 1;
      break;
    case Participant::Kind::ColExt:
      new_zero = Pos{r, w.line};
      nr = r + 1;
      break;
    case Participant::Kind::Bulk:
      new_zero = Pos{r, c};
      nr = r + 1;
      nc = c + 1;
      break;
  }
  CaseMatrix child;
  child.k = cm.k;
  child.pattern = ZeroPattern(nr, nc);
  for (const Pos& p : cm.pattern.zeros()) child.pattern.add(p.r, p.c);
  child.pattern.add(new_zero.r, new_zero.c);
  child.specials = cm.specials;

  // Losers keep their unfinished stages; the current one restarts.
  for (size_t i = 0; i < parts.size(); ++i) {
    const Participant& p = parts[i];
    if (p.kind != Participant::Kind::Window || !cm.is_special(p.pos.r, p.pos.c))
      continue;
    if (i == winner) {
      child.specials.erase(p.pos);
      continue;
    }
    if (stage_idx[i] == 0) continue;
    EntryStages rest;
    rest.rates.assign(p.stages.begin() + stage_idx[i], p.stages.end());
    child.specials[p.pos] = std::move(rest);
  }

  // Every doubly covered entry gains the accumulated excess stages.
  for (int rr : cover.rows) {
    for (int cc : cover.cols) {
      const Pos p{rr, cc};
      if (child.pattern.has(rr, cc)) {
        child.pattern.remove(rr, cc);
        EntryStages st;
        st.rates = eps_rates;
        st.sort_canonical();
        child.specials[p] = std::move(st);
      } else if (auto it = child.specials.find(p); it != child.specials.end()) {
        for (const RatFunc& rate : eps_rates) it->second.rates.push_back(rate);
        it->second.sort_canonical();
      } else {
        EntryStages st;
        st.rates.push_back(RatFunc(1));
        for (const RatFunc& rate : eps_rates) st.rates.push_back(rate);
        st.sort_canonical();
        child.specials[p] = std::move(st);
      }
    }
  }
  return child;
}

void expand_race(const CaseMatrix& cm, const CoverSet& cover,
                 const std::vector<Participant>& parts, std::vector<int>& idx,
                 const RatFunc& prob, std::vector<RatFunc>& eps_rates,
                 std::vector<BranchOutcome>& out) {
  RatFunc total;
  for (size_t i = 0; i < parts.size(); ++i)
    total += parts[i].weight * parts[i].stages[idx[i]];
  if (total.is_zero()) throw Error("race: zero total rate");
  eps_rates.push_back(total);
  for (size_t i = 0; i < parts.size(); ++i) {
    const RatFunc step = parts[i].weight * parts[i].stages[idx[i]] / total;
    if (idx[i] + 1 == static_cast<int>(parts[i].stages.size())) {
      BranchOutcome b;
      b.probability = prob * step;
      b.eps_stage_rates = eps_rates;
      for (const RatFunc& rate : eps_rates)
        b.conditional_eps_mean += RatFunc(1) / rate;
      b.child = build_child(cm, cover, parts, idx, i, eps_rates);
      out.push_back(std::move(b));
    } else {
      ++idx[i];
      expand_race(cm, cover, parts, idx, prob * step, eps_rates, out);
      --idx[i];
    }
  }
  eps_rates.pop_back();
}

}  // namespace

ReducedCase Engine::reduce(const CaseMatrix& input) {
  ReducedCase rc;
  rc.cm = input;
  for (;;) {
    drop_unit_specials(rc.cm);
    trim(rc.cm);
    if (rc.cm.k <= 0) return rc;
    if (contains_assignment(rc.cm.pattern, rc.cm.k)) return rc;

    // Superfluous entries become zeros (the value is unchanged).
    bool changed = false;
    for (int r = 0; r < rc.cm.pattern.rows() && !changed; ++r) {
      for (int c = 0; c < rc.cm.pattern.cols() && !changed; ++c) {
        if (rc.cm.pattern.has(r, c)) continue;
        if (superfluous(rc.cm.pattern, rc.cm.k, Pos{r, c})) {
          rc.cm.specials.erase(Pos{r, c});
          rc.cm.pattern.add(r, c);
          changed = true;
        }
      }
    }
    if (changed) continue;

    const ForcedLines forced = forced_lines(rc.cm.pattern, rc.cm.k);
    if (!forced.rows.empty()) {
      rc.cm = delete_row(rc.cm, *forced.rows.begin());
      ++rc.dm;
      continue;
    }
    if (!forced.cols.empty()) {
      rc.cm = delete_col(rc.cm, *forced.cols.begin());
      ++rc.dn;
      continue;
    }
    return rc;
  }
}

std::optional<RatFunc> Engine::base_case(const CaseMatrix& cm) const {
  if (cm.k <= 0) return RatFunc(0);
  if (contains_assignment(cm.pattern, cm.k)) return RatFunc(0);
  if (cm.k >= 2 && cm.specials.empty() &&
      contains_assignment(cm.pattern, cm.k - 1))
    return main_theorem_F(cm.pattern, cm.k);
  return std::nullopt;
}

CoverSet Engine::choose_cover(const CaseMatrix& cm) {
  auto covers = ordered_covers(cm);
  if (covers.empty()) throw Error("choose_cover: no cover");
  return covers.front();
}

std::vector<BranchOutcome> Engine::race(const CaseMatrix& cm,
                                        const CoverSet& cover) {
  if (!covers(cm.pattern, cover))
    throw Error("race: cover does not cover the zeros");
  if (cover.size() != min_cover_size(cm.pattern))
    throw Error("race: cover is not optimal");
  // Entries that would share the accumulated excess are hazardous unless
  // they are superfluous once the doubly covered zeros are lifted (then the
  // child's reduction zeroes them and their value never matters).
  if (cover.rows.size() * cover.cols.size() >= 2) {
    ZeroPattern base = cm.pattern;
    for (int rr : cover.rows)
      for (int cc : cover.cols) base.remove(rr, cc);
    int receivers = 0;
    for (int rr : cover.rows)
      for (int cc : cover.cols)
        if (!superfluous(base, cm.k, Pos{rr, cc})) ++receivers;
    if (receivers >= 2)
      throw HazardError("race: " + std::to_string(receivers) +
                        " surviving entries would share the accumulated excess");
  }

  const int r = cm.pattern.rows(), c = cm.pattern.cols();
  const RatFunc m = RatFunc::sym_m(), n = RatFunc::sym_n();
  std::vector<Participant> parts;
  for (int rr = 0; rr < r; ++rr) {
    if (cover.has_row(rr)) continue;
    for (int cc = 0; cc < c; ++cc) {
      if (cover.has_col(cc)) continue;
      Participant p;
      p.kind = Participant::Kind::Window;
      p.pos = Pos{rr, cc};
      if (auto it = cm.specials.find(p.pos); it != cm.specials.end())
        p.stages = it->second.rates;
      else
        p.stages = {RatFunc(1)};
      parts.push_back(std::move(p));
    }
  }
  for (int rr = 0; rr < r; ++rr) {
    if (cover.has_row(rr)) continue;
    Participant p;
    p.kind = Participant::Kind::RowExt;
    p.line = rr;
    p.stages = {RatFunc(1)};
    p.weight = n - RatFunc(c);
    parts.push_back(std::move(p));
  }
  for (int cc = 0; cc < c; ++cc) {
    if (cover.has_col(cc)) continue;
    Participant p;
    p.kind = Participant::Kind::ColExt;
    p.line = cc;
    p.stages = {RatFunc(1)};
    p.weight = m - RatFunc(r);
    parts.push_back(std::move(p));
  }
  {
    Participant p;
    p.kind = Participant::Kind::Bulk;
    p.stages = {RatFunc(1)};
    p.weight = (m - RatFunc(r)) * (n - RatFunc(c));
    parts.push_back(std::move(p));
  }

  std::vector<BranchOutcome> out;
  std::vector<int> idx(parts.size(), 0);
  std::vector<RatFunc> eps_rates;
  expand_race(cm, cover, parts, idx, RatFunc(1), eps_rates, out);
  return out;
}

RatFunc Engine::recurse_at(const CaseMatrix& cm, int depth) {
  if (depth > opts_.depth_limit)
    throw DepthLimitError("recurse: depth limit " +
                          std::to_string(opts_.depth_limit) + " exceeded");
  {
    std::lock_guard<std::mutex> lock(stats_mu_);
    stats_.max_depth = std::max(stats_.max_depth, depth);
  }
  ReducedCase rc = reduce(cm);
  RatFunc f = core(rc.cm, depth);
  if (rc.dm) f = f.shift_m(-rc.dm);
  if (rc.dn) f = f.shift_n(-rc.dn);
  return f;
}

RatFunc Engine::core(const CaseMatrix& cm, int depth) {
  if (cm.k <= 0) return RatFunc(0);
  if (contains_assignment(cm.pattern, cm.k)) return RatFunc(0);
  if (opts_.closed_form_base && cm.k >= 2 && cm.specials.empty() &&
      contains_assignment(cm.pattern, cm.k - 1))
    return main_theorem_F(cm.pattern, cm.k);

  const std::string key = cm.key();
  if (auto hit = memo_.find(key)) {
    std::lock_guard<std::mutex> lock(stats_mu_);
    ++stats_.memo_hits;
    return *hit;
  }

  // Covers are tried in heuristic order. A dead end may surface either as a
  // hazard of this cover's own race or as a hazard somewhere below one of
  // its children; both retry with the next cover, then the alternative
  // recursion.
  bool deeper_dead_end = false;
  for (const CoverSet& cover : ordered_covers(cm)) {
    std::vector<BranchOutcome> branches;
    try {
      branches = race(cm, cover);
    } catch (const HazardError&) {
      std::lock_guard<std::mutex> lock(stats_mu_);
      ++stats_.hazard_skips;
      continue;
    }
    {
      std::lock_guard<std::mutex> lock(stats_mu_);
      ++stats_.races;
      ++stats_.cases_expanded;
    }
    try {
      RatFunc f, psum;
      const RatFunc uncovered_k(cm.k - cover.size());
      for (const BranchOutcome& b : branches) {
        psum += b.probability;
        f += b.probability * (uncovered_k * b.conditional_eps_mean +
                              recurse_at(b.child, depth + 1));
      }
      if (!psum.is_one())
        throw Error("race: branch probabilities sum to " + psum.to_string());
      memo_.insert(key, f);
      return f;
    } catch (const HazardError&) {
      deeper_dead_end = true;
      std::lock_guard<std::mutex> lock(stats_mu_);
      ++stats_.hazard_skips;
      continue;
    } catch (const InapplicableError&) {
      deeper_dead_end = true;
      continue;
    }
  }

  if (opts_.alt_fallback) {
    RatFunc f = alt_core(cm, depth);
    memo_.insert(key, f);
    return f;
  }
  throw HazardError(deeper_dead_end
                        ? "recurse: every minimum cover dead-ends below"
                        : "recurse: every minimum cover is hazardous");
}

RatFunc Engine::alt_core(const CaseMatrix& cm, int depth) {
  const int r = cm.pattern.rows(), c = cm.pattern.cols();
  const RatFunc m = RatFunc::sym_m(), n = RatFunc::sym_n();
  for (const CoverSet& cover : ordered_covers(cm)) {
    bool ok = true;
    for (int rr : cover.rows)
      for (int cc : cover.cols) {
        if (cm.pattern.has(rr, cc) || cm.is_special(rr, cc)) ok = false;
      }
    for (int rr = 0; rr < r && ok; ++rr) {
      if (cover.has_row(rr)) continue;
      for (int cc = 0; cc < c && ok; ++cc) {
        if (cover.has_col(cc)) continue;
        if (cm.is_special(rr, cc)) ok = false;
      }
    }
    if (!ok) continue;

    auto with_zero = [&cm](Pos p, int nr, int nc) {
      CaseMatrix child;
      child.k = cm.k;
      child.pattern = ZeroPattern(nr, nc);
      for (const Pos& z : cm.pattern.zeros()) child.pattern.add(z.r, z.c);
      child.pattern.add(p.r, p.c);
      child.specials = cm.specials;
      return child;
    };

    RatFunc sum_r;
    for (int rr = 0; rr < r; ++rr) {
      if (cover.has_row(rr)) continue;
      for (int cc = 0; cc < c; ++cc) {
        if (cover.has_col(cc)) continue;
        sum_r += recurse_at(with_zero(Pos{rr, cc}, r, c), depth + 1);
      }
    }
    for (int rr = 0; rr < r; ++rr) {
      if (cover.has_row(rr)) continue;
      sum_r += (n - RatFunc(c)) * recurse_at(with_zero(Pos{rr, c}, r, c + 1), depth + 1);
    }
    for (int cc = 0; cc < c; ++cc) {
      if (cover.has_col(cc)) continue;
      sum_r += (m - RatFunc(r)) * recurse_at(with_zero(Pos{r, cc}, r + 1, c), depth + 1);
    }
    sum_r += (m - RatFunc(r)) * (n - RatFunc(c)) *
             recurse_at(with_zero(Pos{r, c}, r + 1, c + 1), depth + 1);

    RatFunc sum_dc;
    int n_dc = 0;
    for (int rr : cover.rows)
      for (int cc : cover.cols) {
        sum_dc += recurse_at(with_zero(Pos{rr, cc}, r, c), depth + 1);
        ++n_dc;
      }

    const RatFunc big_r =
        (m - RatFunc(static_cast<long>(cover.rows.size()))) *
        (n - RatFunc(static_cast<long>(cover.cols.size())));
    return (RatFunc(cm.k - cover.size()) - sum_dc + sum_r) /
           (big_r - RatFunc(n_dc));
  }
  throw InapplicableError(
      "alternative recursion inapplicable: every minimum cover doubly covers "
      "a zero or special entry, or leaves a special uncovered; case " +
      cm.to_json());
}

RatFunc Engine::recurse_alt(const CaseMatrix& cm) {
  ReducedCase rc = reduce(cm);
  if (rc.cm.k <= 0 || contains_assignment(rc.cm.pattern, rc.cm.k))
    return RatFunc(0);
  RatFunc f = alt_core(rc.cm, 0);
  if (rc.dm) f = f.shift_m(-rc.dm);
  if (rc.dn) f = f.shift_n(-rc.dn);
  return f;
}

RatFunc Engine::f_empty(int k, bool allow_long) {
  if (k < 1) throw BoundError("f_empty: k must be >= 1");
  if (k > (allow_long ? 6 : 5))
    throw BoundError("f_empty: k > 5 requires the long-run flag");
  CaseMatrix cm;
  cm.k = k;
  cm.pattern = ZeroPattern(0, 0);
  return recurse(cm);
}

Rat Engine::square_reduce(int n0) {
  if (n0 < 2 || n0 > 4) throw BoundError("square_reduce: n0 must be in [2,4]");
  const Rat inv_n(1, n0);
  Rat total(1);  // expected sum of the row minima
  std::vector<int> zeta(n0, 0);
  for (;;) {
    // probability of this zero-column vector
    Rat p1(1);
    for (int i = 0; i < n0; ++i) p1 *= inv_n;
    std::vector<bool> hit(n0, false);
    for (int i = 0; i < n0; ++i) hit[zeta[i]] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < n0; ++j)
      if (!hit[j]) free_cols.push_back(j);

    total += p1 * Rat(static_cast<long>(free_cols.size())) * inv_n;

    std::vector<int> ext(free_cols.size(), 0);
    for (;;) {
      Rat p2(1);
      for (size_t j = 0; j < ext.size(); ++j) p2 *= inv_n;
      CaseMatrix cm;
      cm.k = n0;
      cm.pattern = ZeroPattern(n0, n0);
      for (int i = 0; i < n0; ++i) cm.pattern.add(i, zeta[i]);
      for (size_t j = 0; j < free_cols.size(); ++j)
        cm.pattern.add(ext[j], free_cols[j]);
      const RatFunc f = recurse(cm);
      total += p1 * p2 * f.eval_at(Rat(n0), Rat(n0));
      // next extension vector
      size_t pos = 0;
      while (pos < ext.size() && ++ext[pos] == n0) ext[pos++] = 0;
      if (pos == ext.size()) break;
      if (ext.empty()) break;
    }
    int pos = 0;
    while (pos < n0 && ++zeta[pos] == n0) zeta[pos++] = 0;
    if (pos == n0) break;
  }
  return total;
}

std::string Engine::explain_json(const CaseMatrix& root) {
  nlohmann::json nodes = nlohmann::json::object();
  std::vector<CaseMatrix> queue{root};
  std::string root_key;
  while (!queue.empty()) {
    CaseMatrix cm = std::move(queue.back());
    queue.pop_back();
    ReducedCase rc = reduce(cm);
    const std::string key = rc.cm.key();
    if (root_key.empty()) root_key = key;
    if (nodes.contains(key)) continue;
    nlohmann::json node;
    node["k"] = rc.cm.k;
    node["case"] = nlohmann::json::parse(rc.cm.to_json());
    if (rc.cm.k <= 0 || contains_assignment(rc.cm.pattern, rc.cm.k)) {
      node["value"] = "0";
      nodes[key] = node;
      continue;
    }
    bool done = false;
    for (const CoverSet& cover : ordered_covers(rc.cm)) {
      if (cover.rows.size() * cover.cols.size() >= 2) continue;
      node["cover"]["rows"] = cover.rows;
      node["cover"]["cols"] = cover.cols;
      auto branches = race(rc.cm, cover);
      node["branches"] = nlohmann::json::array();
      for (const BranchOutcome& b : branches) {
        ReducedCase crc = reduce(b.child);
        nlohmann::json jb;
        jb["probability"] = b.probability.to_string();
        jb["eps_mean"] = b.conditional_eps_mean.to_string();
        jb["child"] = crc.cm.key();
        node["branches"].push_back(jb);
        queue.push_back(b.child);
      }
      done = true;
      break;
    }
    if (!done) node["note"] = "all minimum covers hazardous";
    nodes[key] = node;
  }
  nlohmann::json out;
  out["root"] = root_key;
  out["nodes"] = nodes;
  return out.dump(1);
}

}  // namespace assignlab
