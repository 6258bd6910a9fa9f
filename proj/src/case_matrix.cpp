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

#include "assignlab/case_matrix.hpp"

#include <algorithm>

#include <json.hpp>

namespace assignlab {

void EntryStages::sort_canonical() {
  std::sort(rates.begin(), rates.end(),
            [](const RatFunc& a, const RatFunc& b) {
              return a.to_string() < b.to_string();
            });
}

std::string EntryStages::signature() const {
  std::string s;
  for (const RatFunc& r : rates) {
    s += r.to_string();
    s += "|";
  }
  return s;
}

std::string CaseMatrix::key() const {
  std::vector<std::pair<Pos, std::string>> extras;
  extras.reserve(specials.size());
  for (const auto& [pos, st] : specials) extras.push_back({pos, st.signature()});
  return "k" + std::to_string(k) + ";" + canonical_key(pattern, extras);
}

CaseMatrix CaseMatrix::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CaseMatrix cm;
  cm.k = j.at("k").get<int>();
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  cm.pattern = ZeroPattern(rows, cols);
  for (const auto& z : j.at("zeros"))
    cm.pattern.add(z.at(0).get<int>() - 1, z.at(1).get<int>() - 1);
  if (j.contains("specials")) {
    for (const auto& s : j.at("specials")) {
      Pos p{s.at("cell").at(0).get<int>() - 1, s.at("cell").at(1).get<int>() - 1};
      if (cm.pattern.has(p.r, p.c))
        throw ParseError("case: special on a zero cell");
      EntryStages st;
      for (const auto& e : s.at("stages"))
        st.rates.push_back(RatFunc::parse(e.get<std::string>()));
      if (st.rates.empty()) throw ParseError("case: special with no stages");
      st.sort_canonical();
      cm.specials[p] = std::move(st);
    }
  }
  return cm;
}

std::string CaseMatrix::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["rows"] = pattern.rows();
  j["cols"] = pattern.cols();
  j["zeros"] = nlohmann::json::array();
  for (const Pos& p : pattern.zeros())
    j["zeros"].push_back({p.r + 1, p.c + 1});
  j["specials"] = nlohmann::json::array();
  for (const auto& [pos, st] : specials) {
    nlohmann::json s;
    s["cell"] = {pos.r + 1, pos.c + 1};
    s["stages"] = nlohmann::json::array();
    for (const RatFunc& r : st.rates) s["stages"].push_back(r.to_string());
    j["specials"].push_back(s);
  }
  return j.dump();
}

CaseMatrix CaseMatrix::from_pattern_text(
    int k, const std::string& text,
    const std::map<char, std::vector<std::string>>& stages) {
  PatternText pt = parse_pattern_text(text);
  CaseMatrix cm;
  cm.k = k;
  cm.pattern = pt.zeros;
  for (const auto& [label, pos] : pt.labels) {
    auto it = stages.find(label);
    if (it == stages.end())
      throw ParseError(std::string("case: no stages for label '") + label + "'");
    EntryStages st;
    for (const std::string& e : it->second)
      st.rates.push_back(RatFunc::parse(e));
    st.sort_canonical();
    cm.specials[pos] = std::move(st);
  }
  return cm;
}

}  // namespace assignlab
