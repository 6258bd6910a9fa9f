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

#include "assignlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "assignlab/montecarlo.hpp"
#include "assignlab/pattern.hpp"

namespace assignlab {

namespace {

double region_u(const RegionSpec& region) {
  if (region.kind == RegionSpec::Kind::kQuarterCircle) return 2.0;
  if (!(region.p > 1.0)) throw Error("asymptotics: p must exceed 1");
  return region.p / (region.p - 1.0);
}

// 15-point Kronrod / 7-point Gauss pair on [-1, 1].
constexpr double kKronrodX[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kKronrodW[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kGaussW[7] = {0.129484966168870, 0.279705391489277,
                               0.381830050505119, 0.417959183673469,
                               0.381830050505119, 0.279705391489277,
                               0.129484966168870};

template <typename F>
void gauss_kronrod(const F& f, double a, double b, double& value,
                   double& error) {
  const double h = 0.5 * (b - a), mid = 0.5 * (a + b);
  double gk = 0.0, g = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double fx = f(mid + h * kKronrodX[i]);
    gk += kKronrodW[i] * fx;
    if (i % 2 == 1) g += kGaussW[i / 2] * fx;
  }
  value = gk * h;
  error = std::abs((gk - g) * h);
}

template <typename F>
double adaptive_quad(const F& f, double a, double b, double tol,
                     int max_depth = 60) {
  struct Seg {
    double a, b, tol;
    int depth;
  };
  double total = 0.0;
  std::vector<Seg> stack{{a, b, tol, 0}};
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    double v, e;
    gauss_kronrod(f, s.a, s.b, v, e);
    if (e <= s.tol || s.depth >= max_depth) {
      if (s.depth >= max_depth && e > s.tol)
        throw Error("adaptive_quad: tolerance not reached");
      total += v;
      continue;
    }
    const double mid = 0.5 * (s.a + s.b);
    stack.push_back({s.a, mid, s.tol / 2, s.depth + 1});
    stack.push_back({mid, s.b, s.tol / 2, s.depth + 1});
  }
  return total;
}

}  // namespace

double m_ab(const RegionSpec& region, double a, double b) {
  if (a < 0 || b < 0 || (a == 0 && b == 0))
    throw Error("m_ab: requires a, b >= 0, not both zero");
  const double u = region_u(region);
  return a + b - std::pow(std::pow(a, u) + std::pow(b, u), 1.0 / u);
}

bool in_region_D(const RegionSpec& region, double x, double y) {
  if (x < 0 || x > 1 || y < 0 || y > 1)
    throw Error("in_region_D: point outside the unit square");
  if (x == 1.0 && y == 1.0) return false;
  return m_ab(region, 1.0 - x, 1.0 - y) < 1.0 - x - y;
}

double limit_integral(const RegionSpec& region, double tol) {
  if (tol < 1e-10) throw Error("limit_integral: tolerance below 1e-10");
  const double u = region_u(region);
  // -log(1-t)/t extended continuously by 1 at t = 0.
  auto f = [](double t) {
    if (t < 1e-12) return 1.0 + t / 2.0;
    return -std::log1p(-t) / t;
  };
  // The logarithmic endpoint is integrated as a series: with w = 1 - t,
  // int_{1-d}^1 -log(1-t)/t dt = sum_j d^{j+1} (1 - (j+1) log d)/(j+1)^2.
  const double d = 1e-5;
  double tail = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double q = j + 1.0;
    tail += std::pow(d, q) * (1.0 - q * std::log(d)) / (q * q);
  }
  const double body = adaptive_quad(f, 0.0, 1.0 - d, tol / 2.0);
  return (body + tail) / (u * u);
}

double closed_form_limit(double p) {
  if (!(p > 1.0)) throw Error("closed_form_limit: p must exceed 1");
  const double f = 1.0 - 1.0 / p;
  return f * f * M_PI * M_PI / 6.0;
}

std::vector<ConvergenceRow> convergence_table(const RegionSpec& region,
                                              const std::vector<int>& n_list,
                                              long subset_samples,
                                              uint64_t seed) {
  const double p = region.kind == RegionSpec::Kind::kQuarterCircle ? 2.0
                                                                   : region.p;
  if (!(p > 1.0)) throw Error("convergence_table: p must exceed 1");
  std::vector<ConvergenceRow> rows;
  for (int n : n_list) {
    if (n < 1 || n > 40) throw BoundError("convergence_table: n out of range");
    // cell (i,j) intersects K iff its upper-right corner does
    ZeroPattern z(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double x = static_cast<double>(i + 1) / n;
        const double y = static_cast<double>(j + 1) / n;
        if (std::pow(x, p) + std::pow(y, p) >= 1.0) z.add(i, j);
      }
    double f_hat = 0.0;
    uint64_t ctr = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; i + j < n; ++j) {
        const int budget = n - 1 - i - j;
        double p_ij;
        // exact enumeration when feasible, sampling otherwise
        const double log_count = std::lgamma(n + 1) - std::lgamma(i + 1) -
                                 std::lgamma(n - i + 1) + std::lgamma(n + 1) -
                                 std::lgamma(j + 1) - std::lgamma(n - j + 1);
        if (log_count <= std::log(static_cast<double>(subset_samples))) {
          long hit = 0, tot = 0;
          std::vector<int> rz(i), cz(j);
          // enumerate row subsets x col subsets
          std::vector<int> rcomb(i), ccomb(j);
          for (int t = 0; t < i; ++t) rcomb[t] = t;
          bool rdone = false;
          while (!rdone) {
            for (int t = 0; t < j; ++t) ccomb[t] = t;
            bool cdone = false;
            while (!cdone) {
              CoverSet sigma;
              sigma.rows = rcomb;
              sigma.cols = ccomb;
              ++tot;
              if (is_partial_cover(z, sigma, budget)) ++hit;
              int t = j - 1;
              while (t >= 0 && ccomb[t] == n - j + t) --t;
              if (t < 0) {
                cdone = true;
              } else {
                ++ccomb[t];
                for (int q = t + 1; q < j; ++q) ccomb[q] = ccomb[q - 1] + 1;
              }
            }
            int t = i - 1;
            while (t >= 0 && rcomb[t] == n - i + t) --t;
            if (t < 0) {
              rdone = true;
            } else {
              ++rcomb[t];
              for (int q = t + 1; q < i; ++q) rcomb[q] = rcomb[q - 1] + 1;
            }
          }
          p_ij = tot ? static_cast<double>(hit) / static_cast<double>(tot) : 0.0;
        } else {
          long hit = 0;
          for (long s = 0; s < subset_samples; ++s) {
            CounterRng rng(seed, ctr++);
            // sample i distinct rows and j distinct cols
            std::vector<int> rows_perm(n), cols_perm(n);
            for (int t = 0; t < n; ++t) rows_perm[t] = cols_perm[t] = t;
            for (int t = 0; t < i; ++t) {
              const int u2 = t + static_cast<int>(rng.next_u64() % (n - t));
              std::swap(rows_perm[t], rows_perm[u2]);
            }
            for (int t = 0; t < j; ++t) {
              const int u2 = t + static_cast<int>(rng.next_u64() % (n - t));
              std::swap(cols_perm[t], cols_perm[u2]);
            }
            CoverSet sigma;
            sigma.rows.assign(rows_perm.begin(), rows_perm.begin() + i);
            sigma.cols.assign(cols_perm.begin(), cols_perm.begin() + j);
            std::sort(sigma.rows.begin(), sigma.rows.end());
            std::sort(sigma.cols.begin(), sigma.cols.end());
            if (is_partial_cover(z, sigma, budget)) ++hit;
          }
          p_ij = static_cast<double>(hit) / static_cast<double>(subset_samples);
        }
        f_hat += p_ij / (static_cast<double>(n - i) * (n - j));
      }
    }
    rows.push_back({n, f_hat});
  }
  return rows;
}

}  // namespace assignlab
