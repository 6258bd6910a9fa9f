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

#include "assignlab/golden.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "assignlab/btriangle.hpp"

namespace assignlab {

std::vector<GoldenCase> parse_corpus(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  std::vector<GoldenCase> out;
  for (const auto& e : j) {
    GoldenCase gc;
    gc.id = e.at("id").get<int>();
    gc.k = e.at("k").get<int>();
    nlohmann::json cj;
    cj["k"] = gc.k;
    cj["rows"] = e.at("rows");
    cj["cols"] = e.at("cols");
    cj["zeros"] = e.at("zeros");
    cj["specials"] = e.at("specials");
    gc.input = CaseMatrix::from_json(cj.dump());
    const auto& b = e.at("b");
    gc.f_zero = b.empty();
    for (const auto& row : b) {
      std::vector<Int> r;
      for (const auto& v : row) r.push_back(Int(v.get<long>()));
      gc.b.push_back(std::move(r));
    }
    for (const auto& s : e.at("residual"))
      gc.residual.push_back(s.get<std::string>());
    if (e.contains("cover"))
      for (const auto& s : e.at("cover")) gc.cover.push_back(s.get<std::string>());
    if (e.contains("uses"))
      for (const auto& v : e.at("uses")) gc.uses.push_back(v.get<int>());
    out.push_back(std::move(gc));
  }
  return out;
}

std::vector<GoldenCase> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_corpus: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

std::string print_corpus(const std::vector<GoldenCase>& cases) {
  nlohmann::json arr = nlohmann::json::array();
  for (const GoldenCase& gc : cases) {
    nlohmann::json e = nlohmann::json::parse(gc.input.to_json());
    e["id"] = gc.id;
    e["b"] = nlohmann::json::array();
    for (const auto& row : gc.b) {
      nlohmann::json r = nlohmann::json::array();
      for (const Int& v : row) r.push_back(v.get_si());
      e["b"].push_back(r);
    }
    e["residual"] = gc.residual;
    e["cover"] = gc.cover;
    e["uses"] = gc.uses;
    arr.push_back(e);
  }
  return arr.dump(1);
}

RatFunc golden_expected_F(const GoldenCase& gc) {
  RatFunc f;
  const RatFunc m = RatFunc::sym_m(), n = RatFunc::sym_n();
  for (size_t i = 0; i < gc.b.size(); ++i)
    for (size_t j = 0; j < gc.b[i].size(); ++j) {
      if (gc.b[i][j] == 0) continue;
      f += RatFunc(Rat(gc.b[i][j])) /
           ((m - RatFunc(static_cast<long>(i))) *
            (n - RatFunc(static_cast<long>(j))));
    }
  for (const std::string& s : gc.residual) f += RatFunc::parse(s);
  return f;
}

std::vector<GoldenOutcome> run_corpus(Engine& engine,
                                      const std::vector<GoldenCase>& cases,
                                      const std::vector<int>& ids,
                                      int workers) {
  std::vector<const GoldenCase*> work;
  for (const GoldenCase& gc : cases) {
    if (ids.empty() || std::find(ids.begin(), ids.end(), gc.id) != ids.end())
      work.push_back(&gc);
  }
  std::vector<GoldenOutcome> results(work.size());
  std::atomic<size_t> next{0};
  auto runner = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= work.size()) return;
      const GoldenCase& gc = *work[i];
      GoldenOutcome& out = results[i];
      out.id = gc.id;
      try {
        const RatFunc got = engine.recurse(gc.input);
        const RatFunc want = golden_expected_F(gc);
        if (got == want) {
          out.pass = true;
        } else {
          out.pass = false;
          out.message = "value mismatch: engine " + got.to_string() +
                        " expected " + want.to_string();
        }
        if (out.pass && !gc.f_zero) {
          // The basis coefficients of F must equal the printed matrix plus
          // whatever basis components the printed extra terms carry (the
          // corpus sometimes leaves non-integer basis parts in them).
          BTriangle tri = to_btriangle(got, gc.k);
          RatFunc printed_rest;
          for (const std::string& s : gc.residual)
            printed_rest += RatFunc::parse(s);
          BTriangle rest_tri = to_btriangle(printed_rest, gc.k);
          for (size_t r = 0; r < gc.b.size() && out.pass; ++r)
            for (size_t c = 0; c < gc.b[r].size() && out.pass; ++c) {
              if (static_cast<int>(r + c) >= gc.k) continue;
              const Rat want_b = Rat(gc.b[r][c]) + rest_tri.coeffs[r][c];
              if (!(tri.coeffs[r][c] == want_b)) {
                out.pass = false;
                out.message = "triangle mismatch at (" + std::to_string(r) +
                              "," + std::to_string(c) + ")";
              }
            }
        }
      } catch (const std::exception& ex) {
        out.pass = false;
        out.message = ex.what();
      }
    }
  };
  workers = std::max(1, workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(runner);
  for (auto& t : pool) t.join();
  std::sort(results.begin(), results.end(),
            [](const GoldenOutcome& a, const GoldenOutcome& b) {
              return a.id < b.id;
            });
  return results;
}

}  // namespace assignlab
