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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "assignlab/asymptotics.hpp"
#include "assignlab/btriangle.hpp"
#include "assignlab/conjecture.hpp"
#include "assignlab/engine.hpp"
#include "assignlab/golden.hpp"
#include "assignlab/montecarlo.hpp"

namespace {

using namespace assignlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitEngine = 2;
constexpr int kExitVerify = 3;

int effective_workers(int flag_value) {
  if (const char* env = std::getenv("ASSIGN_LAB_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (...) {
    }
  }
  return std::max(1, flag_value);
}

// Named built-ins plus pattern-text or case-JSON files.
CaseMatrix load_case(int k, const std::string& spec) {
  if (spec == "empty") return CaseMatrix::from_pattern_text(k, "0 0\n");
  if (spec == "one-zero") return CaseMatrix::from_pattern_text(k, "1 1\n0\n");
  if (spec == "problem-case")
    return CaseMatrix::from_pattern_text(k, "3 3\n000\n0..\n0..\n");
  if (spec.rfind("diag:", 0) == 0) {
    const int d = std::stoi(spec.substr(5));
    std::ostringstream os;
    os << d << " " << d << "\n";
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) os << (i == j ? '0' : '.');
      os << "\n";
    }
    return CaseMatrix::from_pattern_text(k, os.str());
  }
  std::ifstream in(spec);
  if (!in) throw ParseError("cannot open pattern file: " + spec);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    CaseMatrix cm = CaseMatrix::from_json(text);
    if (cm.k != k)
      throw ParseError("case file k=" + std::to_string(cm.k) +
                       " does not match --k " + std::to_string(k));
    return cm;
  }
  return CaseMatrix::from_pattern_text(k, text);
}

ZeroPattern load_zeros(const std::string& spec) {
  return load_case(1, spec).pattern;
}

nlohmann::json report_json(const CaseMatrix& cm, const RatFunc& f,
                           const std::string& provenance) {
  const BTriangle tri = to_btriangle(f, cm.k);
  nlohmann::json j;
  j["pattern"] = nlohmann::json::parse(cm.to_json());
  j["k"] = cm.k;
  j["F"] = f.to_string();
  j["b"] = nlohmann::json::array();
  for (int i = 0; i < cm.k; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int jj = 0; jj < cm.k; ++jj)
      row.push_back(i + jj < cm.k ? tri.coeffs[i][jj].to_string() : "0");
    j["b"].push_back(row);
  }
  j["residual"] = nlohmann::json::array();
  for (const RatFunc& r : tri.residual) j["residual"].push_back(r.to_string());
  j["provenance"] = provenance;
  return j;
}

int cmd_compute(int k, const std::string& pattern, const std::string& strategy,
                int depth_limit, bool as_json, const std::string& tree_path) {
  CaseMatrix cm = load_case(k, pattern);
  EngineOptions opts;
  opts.depth_limit = depth_limit;
  Engine eng(opts);
  const RatFunc f =
      strategy == "alt" ? eng.recurse_alt(cm) : eng.recurse(cm);
  if (!tree_path.empty()) {
    std::ofstream out(tree_path);
    out << eng.explain_json(cm) << "\n";
  }
  if (as_json) {
    std::cout << report_json(cm, f, "exact").dump(1) << "\n";
  } else {
    const BTriangle tri = to_btriangle(f, cm.k);
    std::cout << "F = " << f.to_string() << "\n";
    std::cout << tri.to_string();
  }
  return kExitOk;
}

void print_check(const std::string& name, bool ok, bool& all_ok) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
  if (!ok) all_ok = false;
}

int cmd_verify_cs(int k, bool allow_long) {
  Engine eng;
  bool all = true;
  print_check("cs k=" + std::to_string(k),
              eng.f_empty(k, allow_long) == cs_formula(k), all);
  return all ? kExitOk : kExitVerify;
}

int cmd_verify_parisi(int n0) {
  Engine eng;
  bool all = true;
  const Rat want = parisi_value(n0);
  print_check("parisi n=" + std::to_string(n0) + " formula-eval",
              cs_formula(n0).eval_at(Rat(n0), Rat(n0)) == want, all);
  if (n0 <= 5)
    print_check("parisi n=" + std::to_string(n0) + " recursion-eval",
                eng.f_empty(n0).eval_at(Rat(n0), Rat(n0)) == want, all);
  if (n0 >= 2 && n0 <= 4)
    print_check("parisi n=" + std::to_string(n0) + " square-reduce",
                eng.square_reduce(n0) == want, all);
  return all ? kExitOk : kExitVerify;
}

int cmd_verify_diagonal(int k) {
  Engine eng;
  bool all = true;
  Rat h(0);
  for (int i = 1; i <= k; ++i) h += Rat(1, i);
  print_check("diagonal k=" + std::to_string(k) + " H_k/k",
              diagonal_F(k).eval_at(Rat(k), Rat(k)) == h / Rat(k), all);
  if (k >= 2) {
    ZeroPattern stair(k - 1, k - 1);
    for (int i = 0; i + 1 < k; ++i) stair.add(i, i);
    print_check("diagonal k=" + std::to_string(k) + " vs proven formula",
                diagonal_F(k) == main_theorem_F(stair, k), all);
  }
  return all ? kExitOk : kExitVerify;
}

int cmd_verify_mobius(const std::string& pattern, int k, int m0, int n0) {
  const ZeroPattern z = load_zeros(pattern);
  bool all = true;
  print_check("mobius k=" + std::to_string(k) + " at (" + std::to_string(m0) +
                  "," + std::to_string(n0) + ")",
              mobius_F(z, k, m0, n0) ==
                  main_conjecture_F(z, k).eval_at(Rat(m0), Rat(n0)),
              all);
  return all ? kExitOk : kExitVerify;
}

int cmd_verify_appendix(const std::string& corpus_path,
                        const std::string& cases_arg, int workers) {
  const auto corpus = load_corpus(corpus_path);
  std::vector<int> ids;
  if (cases_arg != "all") {
    std::stringstream ss(cases_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) ids.push_back(std::stoi(tok));
  }
  Engine eng;
  const auto results = run_corpus(eng, corpus, ids, workers);
  bool all = true;
  for (const auto& r : results)
    print_check("case " + std::to_string(r.id) +
                    (r.message.empty() ? "" : " (" + r.message + ")"),
                r.pass, all);
  std::cout << (all ? "OK" : "FAILED") << " " << results.size()
            << " cases, memo " << eng.memo().size() << "\n";
  return all ? kExitOk : kExitVerify;
}

int cmd_simulate(int k, int m0, int n0, const std::string& pattern,
                 long samples, uint64_t seed, int workers, int cell_r,
                 int cell_c) {
  SampleConfig cfg;
  cfg.k = k;
  cfg.m0 = m0;
  cfg.n0 = n0;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.workers = workers;
  if (!pattern.empty()) cfg.zeros = load_zeros(pattern);
  const bool use_cell = cell_r > 0 && cell_c > 0;
  RatFunc target_f;
  bool have_target = true;
  Engine eng;
  try {
    if (use_cell) {
      target_f = zero_use_probability(eng, cfg.zeros,
                                      Pos{cell_r - 1, cell_c - 1}, k,
                                      Via::kEngine);
    } else {
      CaseMatrix cm;
      cm.k = k;
      cm.pattern = cfg.zeros;
      target_f = eng.recurse(cm);
    }
  } catch (const Error&) {
    have_target = false;
  }
  const Estimate est = use_cell
                           ? estimate_use_probability(
                                 cfg, Pos{cell_r - 1, cell_c - 1})
                           : estimate_F(cfg);

  nlohmann::json j;
  j["mean"] = est.mean;
  j["stderr"] = est.stderr_;
  j["samples"] = est.samples;
  if (have_target) {
    const Rat t = target_f.eval_at(Rat(m0), Rat(n0));
    j["target"] = t.to_string();
    j["z"] = est.stderr_ > 0 ? (est.mean - t.to_double()) / est.stderr_ : 0.0;
  } else {
    j["target"] = nullptr;
    j["z"] = nullptr;
  }
  std::cout << j.dump(1) << "\n";
  return kExitOk;
}

int cmd_asymptotics(const std::string& region_name, double p, double tol,
                    const std::string& table, long subset_samples,
                    uint64_t seed) {
  RegionSpec region;
  if (region_name == "quarter") {
    region.kind = RegionSpec::Kind::kQuarterCircle;
    p = 2.0;
  } else {
    region.kind = RegionSpec::Kind::kPnorm;
    region.p = p;
  }
  const double integral = limit_integral(region, tol);
  const double closed = closed_form_limit(p);
  std::cout << "integral " << integral << "\n";
  std::cout << "closed_form " << closed << "\n";
  if (!table.empty()) {
    std::vector<int> ns;
    std::stringstream ss(table);
    std::string tok;
    while (std::getline(ss, tok, ',')) ns.push_back(std::stoi(tok));
    const auto rows = convergence_table(region, ns, subset_samples, seed);
    std::cout << "n,F_hat,limit\n";
    for (const auto& r : rows)
      std::cout << r.n << "," << r.f_hat << "," << closed << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact expected costs of optimal k-assignments with zeros"};
  app.require_subcommand(1);

  auto* compute = app.add_subcommand("compute", "value of one case");
  int k = 1;
  std::string pattern;
  std::string strategy = "recurse";
  int depth_limit = 64;
  bool as_json = false;
  std::string tree_path;
  compute->add_option("--k", k, "assignment size")->required();
  compute->add_option("--pattern", pattern,
                      "pattern file, case JSON file, or one of: empty, "
                      "one-zero, problem-case, diag:K")
      ->required();
  compute->add_option("--strategy", strategy, "recurse|alt")
      ->check(CLI::IsMember({"recurse", "alt"}));
  compute->add_option("--depth-limit", depth_limit, "recursion depth limit");
  compute->add_flag("--json", as_json, "emit the report as JSON");
  compute->add_option("--tree", tree_path, "write the audit tree JSON here");

  auto* verify = app.add_subcommand("verify", "equality checks");
  verify->require_subcommand(1);
  auto* vcs = verify->add_subcommand("cs", "recursion vs closed formula");
  int vk = 2;
  bool allow_long = false;
  vcs->add_option("--k", vk)->required();
  vcs->add_flag("--allow-long", allow_long, "permit the k=6 run");
  auto* vparisi = verify->add_subcommand("parisi", "square specialization");
  int vn = 2;
  vparisi->add_option("--n", vn)->required();
  auto* vapp = verify->add_subcommand("appendix", "golden corpus");
  std::string cases_arg = "all";
  std::string corpus_path = "tests/golden/cases.json";
  int vworkers = 2;
  vapp->add_option("--cases", cases_arg, "all or a comma list of ids");
  vapp->add_option("--corpus", corpus_path, "corpus JSON path");
  vapp->add_option("--workers", vworkers, "worker pool size");
  auto* vdiag = verify->add_subcommand("diagonal", "staircase corollary");
  int dk = 2;
  vdiag->add_option("--k", dk)->required();
  auto* vmob = verify->add_subcommand("mobius", "poset vs probability form");
  std::string mob_pattern;
  int mk = 2;
  std::vector<int> dims;
  vmob->add_option("--pattern", mob_pattern)->required();
  vmob->add_option("--k", mk)->required();
  vmob->add_option("--dims", dims, "concrete m n")->expected(2);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo cross-check");
  int sk = 2, sm = 2, sn = 2;
  std::string spattern;
  long samples = 100000;
  uint64_t seed = 1;
  int sworkers = 2;
  std::vector<int> cell;
  simulate->add_option("--k", sk)->required();
  simulate->add_option("--m", sm)->required();
  simulate->add_option("--n", sn)->required();
  simulate->add_option("--pattern", spattern, "zeros (default none)");
  simulate->add_option("--samples", samples)->required();
  simulate->add_option("--seed", seed);
  simulate->add_option("--workers", sworkers);
  simulate->add_option("--cell", cell, "report usage probability of cell R C")
      ->expected(2);

  auto* asym = app.add_subcommand("asymptotics", "limit integrals");
  std::string region_name = "quarter";
  double pval = 2.0;
  double tol = 1e-6;
  std::string table;
  long subset_samples = 2000;
  uint64_t aseed = 1;
  asym->add_option("--region", region_name)
      ->check(CLI::IsMember({"quarter", "pnorm"}));
  asym->add_option("--p", pval, "norm exponent (pnorm only)");
  asym->add_option("--tol", tol, "quadrature tolerance");
  asym->add_option("--table", table, "comma list of n for the table");
  asym->add_option("--subset-samples", subset_samples);
  asym->add_option("--seed", aseed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compute->parsed())
      return cmd_compute(k, pattern, strategy, depth_limit, as_json, tree_path);
    if (vcs->parsed()) return cmd_verify_cs(vk, allow_long);
    if (vparisi->parsed()) return cmd_verify_parisi(vn);
    if (vapp->parsed())
      return cmd_verify_appendix(corpus_path, cases_arg,
                                 effective_workers(vworkers));
    if (vdiag->parsed()) return cmd_verify_diagonal(dk);
    if (vmob->parsed()) {
      if (dims.size() != 2) throw ParseError("--dims M N required");
      return cmd_verify_mobius(mob_pattern, mk, dims[0], dims[1]);
    }
    if (simulate->parsed()) {
      if (samples < 1) {
        std::cerr << "error: --samples must be >= 1\n";
        return kExitUsage;
      }
      if (sk > std::min(sm, sn)) {
        std::cerr << "error: --k must be <= min(m, n)\n";
        return kExitUsage;
      }
      return cmd_simulate(sk, sm, sn, spattern, samples, seed,
                          effective_workers(sworkers),
                          cell.size() == 2 ? cell[0] : 0,
                          cell.size() == 2 ? cell[1] : 0);
    }
    if (asym->parsed()) {
      if (region_name == "pnorm" && !(pval > 1.0)) {
        std::cerr << "error: --p must exceed 1\n";
        return kExitUsage;
      }
      return cmd_asymptotics(region_name, pval, tol, table, subset_samples,
                             aseed);
    }
  } catch (const HazardError& e) {
    std::cerr << "engine hazard: " << e.what() << "\n";
    return kExitEngine;
  } catch (const DepthLimitError& e) {
    std::cerr << "engine limit: " << e.what() << "\n";
    return kExitEngine;
  } catch (const InapplicableError& e) {
    std::cerr << "alternative recursion inapplicable\n";
    return kExitEngine;
  } catch (const BoundError& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return kExitEngine;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
