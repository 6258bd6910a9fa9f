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

#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "assignlab/conjecture.hpp"
#include "assignlab/golden.hpp"

using namespace assignlab;
using nlohmann::json;

namespace {

#ifndef ASSIGNLAB_SOURCE_DIR
#define ASSIGNLAB_SOURCE_DIR "."
#endif

std::string repo_path(const std::string& rel) {
  return std::string(ASSIGNLAB_SOURCE_DIR) + "/" + rel;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

// Minimal structural validator for the shipped schema subset:
// type (string or list), required, properties, items.
bool type_ok(const json& value, const json& type) {
  if (type.is_array()) {
    for (const auto& t : type)
      if (type_ok(value, t)) return true;
    return false;
  }
  const std::string t = type.get<std::string>();
  if (t == "object") return value.is_object();
  if (t == "array") return value.is_array();
  if (t == "string") return value.is_string();
  if (t == "integer") return value.is_number_integer();
  if (t == "number") return value.is_number();
  if (t == "boolean") return value.is_boolean();
  if (t == "null") return value.is_null();
  return false;
}

bool validate(const json& value, const json& schema) {
  if (schema.contains("type") && !type_ok(value, schema.at("type")))
    return false;
  if (schema.contains("required")) {
    if (!value.is_object()) return false;
    for (const auto& key : schema.at("required"))
      if (!value.contains(key.get<std::string>())) return false;
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema.at("properties").items())
      if (value.contains(key) && !validate(value.at(key), sub)) return false;
  }
  if (schema.contains("items") && value.is_array()) {
    for (const auto& item : value)
      if (!validate(item, schema.at("items"))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("golden corpus loads, round-trips, and covers all ids") {
  const auto cases = load_corpus(repo_path("tests/golden/cases.json"));
  REQUIRE(cases.size() == 123);
  for (size_t i = 0; i < cases.size(); ++i)
    CHECK(cases[i].id == static_cast<int>(i) + 1);

  const std::string printed = print_corpus(cases);
  const auto back = parse_corpus(printed);
  REQUIRE(back.size() == cases.size());
  for (size_t i = 0; i < cases.size(); ++i) {
    CHECK(back[i].id == cases[i].id);
    CHECK(back[i].k == cases[i].k);
    CHECK(back[i].input.pattern == cases[i].input.pattern);
    CHECK(back[i].input.key() == cases[i].input.key());
    CHECK(back[i].b == cases[i].b);
    CHECK(back[i].residual == cases[i].residual);
    CHECK(back[i].cover == cases[i].cover);
    CHECK(back[i].uses == cases[i].uses);
  }
  CHECK(print_corpus(back) == printed);  // printing is a fixed point
}

TEST_CASE("golden expected values parse and evaluate") {
  const auto cases = load_corpus(repo_path("tests/golden/cases.json"));
  // spot values transcribed independently
  for (const auto& gc : cases) {
    if (gc.id == 2)
      CHECK(golden_expected_F(gc) == RatFunc::parse("1/(m*n)"));
    if (gc.id == 3)
      CHECK(golden_expected_F(gc) ==
            RatFunc::parse("-1/(m*n)+1/((m-1)*n)+1/(m*(n-1))"));
    if (gc.id == 24)
      CHECK(golden_expected_F(gc).eval_at(Rat(4), Rat(5)) ==
            RatFunc::parse("-1/(m*(n-2))+1/(m*(n-3))-1/((m-1)*(n-1))"
                           "+1/((m-1)*(n-2))+1/((m-2)*(n-1))"
                           "+1/((m-2)*(2*m*n-5*n-1))")
                .eval_at(Rat(4), Rat(5)));
  }
}

TEST_CASE("the conjectured formula matches the engine on every pure-zero case") {
  const auto cases = load_corpus(repo_path("tests/golden/cases.json"));
  Engine eng;
  int checked = 0;
  for (const auto& gc : cases) {
    if (gc.k < 1 || !gc.input.specials.empty()) continue;
    const RatFunc via_engine = eng.recurse(gc.input);
    const RatFunc via_formula = main_conjecture_F(gc.input.pattern, gc.k);
    CHECK(via_engine == via_formula);
    ++checked;
  }
  CHECK(checked == 72);
}

TEST_CASE("corpus entries validate against the case schema") {
  const json schema = load_json(repo_path("schemas/case.schema.json"));
  const json corpus = load_json(repo_path("tests/golden/cases.json"));
  REQUIRE(corpus.is_array());
  for (const auto& entry : corpus) CHECK(validate(entry, schema));
}

TEST_CASE("schema validator distinguishes shapes") {
  const json schema = load_json(repo_path("schemas/estimate.schema.json"));
  json good;
  good["mean"] = 1.25;
  good["stderr"] = 0.01;
  good["samples"] = 1000;
  good["target"] = "5/4";
  good["z"] = 0.3;
  CHECK(validate(good, schema));
  good["target"] = nullptr;
  good["z"] = nullptr;
  CHECK(validate(good, schema));
  good.erase("z");
  CHECK_FALSE(validate(good, schema));
  good["z"] = "not a number";
  CHECK_FALSE(validate(good, schema));
}
