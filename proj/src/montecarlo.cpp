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

#include "assignlab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace assignlab {

namespace {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

CounterRng::CounterRng(uint64_t seed, uint64_t counter)
    : state_(splitmix64(splitmix64(seed) ^ 0x517cc1b727220a95ull ^
                        splitmix64(counter * 0xff51afd7ed558ccdull + 1))) {}

uint64_t CounterRng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ull;
  uint64_t x = state_;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double CounterRng::next_unit() {
  // 53-bit mantissa shifted into (0, 1]
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::next_exp() { return -std::log(next_unit()); }

AssignmentResult min_cost_k_assignment(
    const std::vector<std::vector<double>>& costs, int k) {
  const int m = static_cast<int>(costs.size());
  const int n = m ? static_cast<int>(costs[0].size()) : 0;
  if (k > std::min(m, n)) throw Error("min_cost_k_assignment: k too large");
  // Nodes: 0 = source, 1..m = rows, m+1..m+n = cols, m+n+1 = sink.
  const int source = 0, sink = m + n + 1, nodes = m + n + 2;
  struct Arc {
    int to;
    int cap;
    double cost;
    int rev;
  };
  std::vector<std::vector<Arc>> g(nodes);
  auto add_arc = [&g](int from, int to, int cap, double cost) {
    g[from].push_back({to, cap, cost, static_cast<int>(g[to].size())});
    g[to].push_back({from, 0, -cost, static_cast<int>(g[from].size()) - 1});
  };
  for (int i = 0; i < m; ++i) add_arc(source, 1 + i, 1, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) add_arc(1 + i, 1 + m + j, 1, costs[i][j]);
  for (int j = 0; j < n; ++j) add_arc(1 + m + j, sink, 1, 0.0);

  AssignmentResult res;
  for (int round = 0; round < k; ++round) {
    // Bellman-Ford shortest path over the residual network (arc costs can be
    // negative after earlier augmentations; sizes here are tiny).
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(nodes, inf);
    std::vector<std::pair<int, int>> pre(nodes, {-1, -1});
    dist[source] = 0.0;
    for (int it = 0; it < nodes; ++it) {
      bool improved = false;
      for (int u = 0; u < nodes; ++u) {
        if (dist[u] == inf) continue;
        for (size_t ai = 0; ai < g[u].size(); ++ai) {
          const Arc& a = g[u][ai];
          if (a.cap > 0 && dist[u] + a.cost < dist[a.to] - 1e-15) {
            dist[a.to] = dist[u] + a.cost;
            pre[a.to] = {u, static_cast<int>(ai)};
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
    if (dist[sink] == inf) throw Error("min_cost_k_assignment: no augmenting path");
    for (int v = sink; v != source;) {
      auto [u, ai] = pre[v];
      g[u][ai].cap -= 1;
      g[g[u][ai].to][g[u][ai].rev].cap += 1;
      v = u;
    }
  }
  for (int i = 0; i < m; ++i)
    for (const Arc& a : g[1 + i])
      if (a.to >= 1 + m && a.to < 1 + m + n && a.cap == 0) {
        // forward row->col arc fully used
        res.cells.insert(Pos{i, a.to - 1 - m});
        res.cost += costs[i][a.to - 1 - m];
      }
  if (static_cast<int>(res.cells.size()) != k)
    throw Error("min_cost_k_assignment: flow did not select k cells");
  return res;
}

namespace {

struct Accumulator {
  double sum = 0.0;
  double sumsq = 0.0;
};

Estimate finish(const Accumulator& acc, long samples) {
  Estimate e;
  e.samples = samples;
  e.mean = acc.sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, acc.sumsq / static_cast<double>(samples) - e.mean * e.mean);
  const double sd =
      std::sqrt(var * static_cast<double>(samples) /
                std::max<double>(1.0, static_cast<double>(samples - 1)));
  e.stderr_ = sd / std::sqrt(static_cast<double>(samples));
  return e;
}

// Runs fn(sample_index) -> value over [0, samples). Values accumulate into
// fixed-size buckets combined in index order, so the result is bit-identical
// for any worker count or scheduling.
template <typename Fn>
Accumulator parallel_sum(long samples, int workers, const Fn& fn) {
  workers = std::max(1, workers);
  constexpr long kBucket = 4096;
  const long nbuckets = (samples + kBucket - 1) / kBucket;
  std::vector<Accumulator> bucket(nbuckets);
  std::atomic<long> next{0};
  auto worker = [&] {
    for (;;) {
      const long b = next.fetch_add(1);
      if (b >= nbuckets) return;
      const long lo = b * kBucket, hi = std::min(samples, lo + kBucket);
      Accumulator acc;
      for (long i = lo; i < hi; ++i) {
        const double v = fn(i);
        acc.sum += v;
        acc.sumsq += v * v;
      }
      bucket[b] = acc;
    }
  };
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  Accumulator total;
  for (const Accumulator& acc : bucket) {
    total.sum += acc.sum;
    total.sumsq += acc.sumsq;
  }
  return total;
}

std::vector<std::vector<double>> draw_matrix(const SampleConfig& cfg,
                                             long index) {
  CounterRng rng(cfg.seed, static_cast<uint64_t>(index));
  std::vector<std::vector<double>> costs(cfg.m0, std::vector<double>(cfg.n0));
  for (int i = 0; i < cfg.m0; ++i)
    for (int j = 0; j < cfg.n0; ++j) {
      const double v = rng.next_exp();
      costs[i][j] = cfg.zeros.has(i, j) ? 0.0 : v;
    }
  for (const auto& [pos, rates] : cfg.staged) {
    double v = 0.0;
    for (double rate : rates) v += rng.next_exp() / rate;
    costs[pos.r][pos.c] = v;
  }
  return costs;
}

void validate(const SampleConfig& cfg) {
  if (cfg.samples < 1) throw Error("montecarlo: samples must be >= 1");
  if (cfg.k > std::min(cfg.m0, cfg.n0))
    throw Error("montecarlo: k must be <= min(m, n)");
  if (cfg.zeros.rows() > cfg.m0 || cfg.zeros.cols() > cfg.n0)
    throw Error("montecarlo: window exceeds matrix dimensions");
  for (const auto& [pos, rates] : cfg.staged) {
    if (pos.r < 0 || pos.r >= cfg.m0 || pos.c < 0 || pos.c >= cfg.n0)
      throw Error("montecarlo: staged entry outside the matrix");
    for (double rate : rates)
      if (!(rate > 0)) throw Error("montecarlo: stage rates must be positive");
  }
}

}  // namespace

Estimate estimate_F(const SampleConfig& cfg) {
  validate(cfg);
  Accumulator acc = parallel_sum(cfg.samples, cfg.workers, [&](long i) {
    return min_cost_k_assignment(draw_matrix(cfg, i), cfg.k).cost;
  });
  return finish(acc, cfg.samples);
}

Estimate estimate_use_probability(const SampleConfig& cfg, const Pos& cell) {
  validate(cfg);
  Accumulator acc = parallel_sum(cfg.samples, cfg.workers, [&](long i) {
    const auto r = min_cost_k_assignment(draw_matrix(cfg, i), cfg.k);
    return r.cells.count(cell) ? 1.0 : 0.0;
  });
  return finish(acc, cfg.samples);
}

EbIdentityResult check_eb_identity(const std::vector<double>& a,
                                   const std::vector<double>& b, long samples,
                                   uint64_t seed) {
  if (a.empty() || a.size() != b.size())
    throw Error("check_eb_identity: lists must be nonempty and equal length");
  for (double bi : b)
    if (bi <= 0) throw Error("check_eb_identity: slopes must be positive");
  const double amin = *std::min_element(a.begin(), a.end());
  Accumulator lhs, rhs, diff;
  for (long i = 0; i < samples; ++i) {
    CounterRng rng(seed, static_cast<uint64_t>(i));
    const double x = rng.next_exp();
    size_t best = 0;
    for (size_t j = 1; j < a.size(); ++j)
      if (a[j] + b[j] * x < a[best] + b[best] * x) best = j;
    const double vl = b[best];
    const double vr = a[best] + b[best] * x - amin;
    lhs.sum += vl;
    lhs.sumsq += vl * vl;
    rhs.sum += vr;
    rhs.sumsq += vr * vr;
    const double d = vl - vr;
    diff.sum += d;
    diff.sumsq += d * d;
  }
  EbIdentityResult out;
  out.lhs = finish(lhs, samples);
  out.rhs = finish(rhs, samples);
  const Estimate d = finish(diff, samples);
  out.z = d.stderr_ > 0 ? d.mean / d.stderr_ : 0.0;
  return out;
}

}  // namespace assignlab
