// Copyright 2026 The cgt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "cgt/intervention.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cgt;
using namespace cgt_test;

TEST_SUITE("intervention") {

TEST_CASE("truncated query reproduces the hand-computed adjustment") {
  BayesNet bn = *load_corpus("deter_causal").bn;
  // sum_c P(X_A | X_D=d, X_C=c) P(X_C=c) with the corpus tables
  Factor dist = truncated_query(bn, {"X_A"}, {{{"X_D", "d"}}});
  CHECK(dist.table[0] == doctest::Approx(0.6 * 0.1 + 0.4 * 0.4).epsilon(1e-12));
  CHECK(dist.table[1] == doctest::Approx(0.6 * 0.9 + 0.4 * 0.6).epsilon(1e-12));
  CHECK(dist.total() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("intervening on a root equals conditioning on it") {
  BayesNet bn = *load_corpus("deter_causal").bn;
  Factor by_do = truncated_query(bn, {"X_A"}, {{{"X_C", "c"}}});
  Factor by_evidence = bn.variable_elimination({"X_A"}, {{"X_C", "c"}});
  for (int s = 0; s < 2; ++s) {
    CHECK(std::abs(by_do.table[s] - by_evidence.table[s]) < 1e-12);
  }
}

TEST_CASE("intervening on all non-targets leaves a clamped CPD row") {
  BayesNet bn = *load_corpus("deter_causal").bn;
  Factor dist = truncated_query(bn, {"X_A"}, {{{"X_C", "¬c"}, {"X_D", "d"}}});
  CHECK(dist.table[0] == doctest::Approx(0.4).epsilon(1e-12));  // P(a | ¬c, d)
  CHECK(dist.table[1] == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("surgery equals the truncated factorization on the corpus model") {
  BayesNet bn = *load_corpus("deter_causal").bn;
  Factor a = truncated_query(bn, {"X_A"}, {{{"X_D", "d"}}});
  Factor b = surgery_query(bn, {"X_A"}, {{{"X_D", "d"}}});
  for (int s = 0; s < 2; ++s) {
    CHECK(std::abs(a.table[s] - b.table[s]) < 1e-12);
  }
}

TEST_CASE("empty intervention is the ordinary marginal") {
  BayesNet bn = *load_corpus("deter_causal").bn;
  Factor by_do = surgery_query(bn, {"X_A"}, {});
  Factor marginal = bn.variable_elimination({"X_A"}, {});
  for (int s = 0; s < 2; ++s) {
    CHECK(std::abs(by_do.table[s] - marginal.table[s]) < 1e-12);
  }
}

TEST_CASE("intervening on a leaf does not affect the root") {
  BayesNet bn = *load_corpus("deter_causal").bn;
  Factor root = surgery_query(bn, {"X_C"}, {{{"X_A", "a"}}});
  CHECK(root.table[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(root.table[1] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("overlapping targets and interventions are rejected") {
  BayesNet bn = *load_corpus("deter_causal").bn;
  CHECK_THROWS_AS(truncated_query(bn, {"X_A"}, {{{"X_A", "a"}}}), Error);
  CHECK_THROWS_AS(surgery_query(bn, {"X_A"}, {{{"X_A", "a"}}}), Error);
  CHECK_THROWS_AS(truncated_query(bn, {"X_A"}, {{{"zz", "a"}}}), Error);
}

TEST_CASE("both routes agree on random networks") {
  std::mt19937_64 rng(303);
  int cases = 0;
  while (cases < 220) {
    BayesNet bn = random_binary_bn(rng);
    int n = static_cast<int>(bn.variables().all().size());
    std::uniform_int_distribution<int> pick(0, n - 1);
    int target = pick(rng);
    std::map<int, int> cut;
    cut[pick(rng)] = pick(rng) % 2;
    if (pick(rng) % 2 == 0) cut[pick(rng)] = pick(rng) % 2;  // double intervention
    if (cut.count(target)) continue;
    Intervention itv;
    for (const auto& [node, value] : cut) {
      itv.assignments.emplace_back(bn.variables().all()[node].id,
                                   value == 0 ? "0" : "1");
    }
    std::vector<NodeId> targets = {bn.variables().all()[target].id};
    Factor truncated = truncated_query(bn, targets, itv);
    Factor surged = surgery_query(bn, targets, itv);
    std::vector<double> expected = oracle_truncated(bn, {target}, cut);
    CHECK(std::abs(truncated.total() - 1.0) < 1e-9);
    for (int s = 0; s < 2; ++s) {
      CHECK(std::abs(truncated.table[s] - surged.table[s]) < 1e-12);
      CHECK(std::abs(truncated.table[s] - expected[s]) < 1e-12);
    }
    ++cases;
  }
}

TEST_CASE("intervening off any causal path leaves the target unchanged") {
  std::mt19937_64 rng(404);
  int cases = 0;
  while (cases < 60) {
    BayesNet bn = random_binary_bn(rng);
    int n = static_cast<int>(bn.variables().all().size());
    std::uniform_int_distribution<int> pick(0, n - 1);
    int target = pick(rng);
    int cut = pick(rng);
    if (cut == target) continue;
    const NodeId& target_id = bn.variables().all()[target].id;
    const NodeId& cut_id = bn.variables().all()[cut].id;
    std::vector<NodeId> downstream = bn.graph().descendants(cut_id);
    if (std::find(downstream.begin(), downstream.end(), target_id) !=
        downstream.end()) {
      continue;  // a directed path exists; the do may matter
    }
    Factor before = bn.variable_elimination({target_id}, {});
    Factor after = surgery_query(bn, {target_id}, {{{cut_id, "0"}}});
    for (int s = 0; s < 2; ++s) {
      CHECK(std::abs(before.table[s] - after.table[s]) < 1e-12);
    }
    ++cases;
  }
}

TEST_CASE("surgery supports conditioning on top of the intervention") {
  BayesNet bn = *load_corpus("deter_causal").bn;
  // Conditioning on the intervened variable itself is rejected.
  CHECK_THROWS_AS(
      surgery_query(bn, {"X_A"}, {{{"X_D", "d"}}}, {{"X_D", "d"}}), Error);
  Factor dist = surgery_query(bn, {"X_A"}, {{{"X_D", "d"}}}, {{"X_C", "c"}});
  CHECK(dist.table[0] == doctest::Approx(0.1).epsilon(1e-12));
}

}  // TEST_SUITE
