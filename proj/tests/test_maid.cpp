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

#include <algorithm>
#include <cmath>
#include <set>

#include "cgt/extensive_form.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cgt;
using namespace cgt_test;

namespace {

Maid example7() { return *load_corpus("maid_example7").maid; }
Maid example6() { return *load_corpus("influence_example6").maid; }

MaidProfile sigma_hat(const Maid& maid) {
  return parse_strategy(read_file(corpus_path("sigma_hat")), maid);
}

// Exhaustive policy evaluation for the single-agent diagram, written against
// the raw tables rather than the inference machinery.
double example6_policy_value(const Maid& maid, int act_c, int act_nc) {
  const Cpd& attack = maid.chance_cpds[1];  // X_A | X_C, D_C
  const UtilityNode& u = maid.utilities[0];
  double total = 0.0;
  for (int c = 0; c < 2; ++c) {
    int decision = c == 0 ? act_c : act_nc;
    for (int a = 0; a < 2; ++a) {
      double p_attack = attack.table[(c * 2 + decision) * 2 + a];
      total += 0.5 * p_attack * u.table[c * 2 + a];
    }
  }
  return total;
}

}  // namespace

TEST_SUITE("maid") {

TEST_CASE("corpus diagrams validate") {
  CHECK(example7().validate().ok());
  CHECK(example6().validate().ok());
}

TEST_CASE("utility nodes with children are rejected") {
  Maid maid = example7();
  maid.graph.add_edge("U1", "D_A");
  CHECK_FALSE(maid.validate().ok());
}

TEST_CASE("a complete profile induces a three-variable network") {
  Maid maid = example7();
  BayesNet bn = induce_bn(maid, sigma_hat(maid));
  CHECK(bn.graph().num_nodes() == 3);
  CHECK(bn.validate().ok());
  CHECK(maid.utilities.size() == 2);  // the two utility nodes stay outside
  // Uniform rules produce uniform decision rows.
  MaidProfile uniform;
  uniform.rules.push_back({"D_D", {0.5, 0.5, 0.5, 0.5}});
  uniform.rules.push_back({"D_A", std::vector<double>(8, 0.5)});
  BayesNet mixed = induce_bn(maid, uniform);
  CHECK(mixed.cpd("D_D").table == std::vector<double>{0.5, 0.5, 0.5, 0.5});
  MaidProfile incomplete;
  incomplete.rules.push_back(uniform.rules[0]);
  CHECK_THROWS_AS(induce_bn(maid, incomplete), Error);
}

TEST_CASE("the equilibrium value of the deterring diagram is zero") {
  Maid maid = example7();
  MaidProfile profile = sigma_hat(maid);
  CHECK(agent_expected_utility(maid, profile, 0) == doctest::Approx(0.0));
  CHECK(agent_expected_utility(maid, profile, 1) == doctest::Approx(0.0));
}

TEST_CASE("point-mass rules follow a single path") {
  Maid maid = example7();
  PureMaidProfile pure;
  pure.choice = {{0, 0}, {1, 1, 1, 1}};  // always d, never attack
  MaidProfile profile = pure.to_rules(maid);
  // No attack pays the deterrer 1 in both capability states.
  CHECK(agent_expected_utility(maid, profile, 0) == doctest::Approx(1.0));
  CHECK(agent_expected_utility(maid, profile, 1) == doctest::Approx(-1.0));
}

TEST_CASE("single-agent optimum equals exhaustive policy enumeration") {
  Maid maid = example6();
  double best = -1e9;
  for (int act_c = 0; act_c < 2; ++act_c) {
    for (int act_nc = 0; act_nc < 2; ++act_nc) {
      best = std::max(best, example6_policy_value(maid, act_c, act_nc));
    }
  }
  MaidEquilibriumSet set = maid_pure_nash(maid);
  REQUIRE_FALSE(set.items.empty());
  for (const MaidEquilibrium& eq : set.items) {
    CHECK(eq.payoffs[0] == doctest::Approx(best).epsilon(1e-12));
  }
  // The always-explicit policy is the unique optimum of the corpus tables.
  REQUIRE(set.items.size() == 1);
  CHECK(set.items[0].profile.choice[0] == std::vector<int>{0, 0});
  CHECK(best == doctest::Approx(0.45));
}

TEST_CASE("the deterring diagram has exactly eight equilibria") {
  Maid maid = example7();
  MaidEquilibriumSet set = maid_pure_nash(maid);
  REQUIRE(set.items.size() == 8);
  // sigma_hat: explicit iff strong; attack iff weak regardless of message.
  PureMaidProfile expected;
  expected.choice = {{0, 1}, {1, 1, 0, 0}};
  bool found = false;
  for (const MaidEquilibrium& eq : set.items) {
    if (eq.profile.choice == expected.choice) found = true;
    CHECK(eq.payoffs[0] == doctest::Approx(0.0));
  }
  CHECK(found);
}

TEST_CASE("parentless decisions with dominant actions give one profile") {
  Maid maid;
  maid.agents = {"A", "B"};
  maid.graph.add_node("D1", NodeKind::decision(0));
  maid.graph.add_node("D2", NodeKind::decision(1));
  maid.graph.add_node("U1", NodeKind::utility(0));
  maid.graph.add_node("U2", NodeKind::utility(1));
  maid.graph.add_edge("D1", "U1");
  maid.graph.add_edge("D2", "U2");
  maid.variables.add({"D1", {"x", "y"}});
  maid.variables.add({"D2", {"x", "y"}});
  maid.utilities.push_back({"U1", 0, {"D1"}, {2.0, 1.0}});
  maid.utilities.push_back({"U2", 1, {"D2"}, {0.0, 5.0}});
  REQUIRE(maid.validate().ok());
  MaidEquilibriumSet set = maid_pure_nash(maid);
  REQUIRE(set.items.size() == 1);
  CHECK(set.items[0].profile.choice == std::vector<std::vector<int>>{{0}, {1}});
}

TEST_CASE("no agent gains by rewriting its rules at an equilibrium") {
  Maid maid = example7();
  MaidEquilibriumSet set = maid_pure_nash(maid);
  for (const MaidEquilibrium& eq : set.items) {
    MaidProfile profile = eq.profile.to_rules(maid);
    for (int agent = 0; agent < 2; ++agent) {
      double current = agent_expected_utility(maid, profile, agent);
      // Deviations: all joint rewrites of the agent's own rules.
      std::vector<int> own = agent == 0 ? std::vector<int>{0} : std::vector<int>{1};
      std::vector<int> sizes;
      for (int d : own) sizes.push_back(static_cast<int>(eq.profile.choice[d].size()));
      std::vector<std::vector<int>> rules;
      // enumerate all rules of the single decision node the agent owns
      int contexts = sizes[0];
      for (int code = 0; code < (1 << contexts); ++code) {
        std::vector<int> rule(contexts);
        for (int c = 0; c < contexts; ++c) rule[c] = (code >> c) & 1;
        PureMaidProfile trial = eq.profile;
        trial.choice[own[0]] = rule;
        double value = agent_expected_utility(maid, trial.to_rules(maid), agent);
        CHECK(value <= current + 1e-9);
      }
    }
  }
}

TEST_CASE("conditioning on the explicit message pays one") {
  Maid maid = example7();
  MaidProfile profile = sigma_hat(maid);
  CHECK(conditional_eu(maid, profile, 0, {{"D_D", "d"}}) == doctest::Approx(1.0));
}

TEST_CASE("conditioning on the vague message matches brute force") {
  Maid maid = example7();
  MaidProfile profile = sigma_hat(maid);
  // Under sigma_hat, D_D=¬d implies weak capability, hence an attack: U1=-1.
  BayesNet bn = induce_bn(maid, profile);
  OracleResult oracle = oracle_conditional(bn, {0, 2}, {{1, 1}});
  double expected = 0.0;
  const UtilityNode& u1 = maid.utilities[0];
  for (int c = 0; c < 2; ++c) {
    for (int a = 0; a < 2; ++a) {
      expected += oracle.dist[c * 2 + a] * u1.table[c * 2 + a];
    }
  }
  CHECK(conditional_eu(maid, profile, 0, {{"D_D", "¬d"}}) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(-1.0));
}

TEST_CASE("conditioning implied by a point-mass rule is the plain value") {
  Maid maid = example7();
  PureMaidProfile pure;
  pure.choice = {{0, 0}, {1, 1, 1, 1}};  // message always d
  MaidProfile profile = pure.to_rules(maid);
  CHECK(conditional_eu(maid, profile, 0, {{"D_D", "d"}}) ==
        doctest::Approx(agent_expected_utility(maid, profile, 0)));
}

TEST_CASE("zero-probability conditioning fails loudly") {
  Maid maid = example7();
  PureMaidProfile pure;
  pure.choice = {{0, 0}, {1, 1, 1, 1}};
  CHECK_THROWS_AS(conditional_eu(maid, pure.to_rules(maid), 0, {{"D_D", "¬d"}}),
                  Error);
}

TEST_CASE("forcing the explicit message pays zero") {
  Maid maid = example7();
  MaidProfile profile = sigma_hat(maid);
  CHECK(interventional_eu(maid, profile, 0, {{{"D_D", "d"}}}) ==
        doctest::Approx(0.0));
}

TEST_CASE("forcing off the attack pays one in both capability states") {
  Maid maid = example7();
  MaidProfile profile = sigma_hat(maid);
  CHECK(interventional_eu(maid, profile, 0, {{{"D_A", "¬a"}}}) ==
        doctest::Approx(1.0));
}

TEST_CASE("interventions must target decision nodes") {
  Maid maid = example7();
  MaidProfile profile = sigma_hat(maid);
  CHECK_THROWS_AS(interventional_eu(maid, profile, 0, {{{"X_C", "c"}}}), Error);
}

TEST_CASE("do equals conditioning on a parentless decision played for sure") {
  // Variant of the deterring diagram with a parentless deterrer decision.
  Maid maid = example7();
  Admg graph;
  for (const GraphNode& node : maid.graph.nodes()) graph.add_node(node.id, node.kind);
  for (const auto& [a, b] : maid.graph.directed_edges()) {
    if (maid.graph.node(a).id == "X_C" && maid.graph.node(b).id == "D_D") continue;
    graph.add_edge(maid.graph.node(a).id, maid.graph.node(b).id);
  }
  maid.graph = std::move(graph);
  REQUIRE(maid.validate().ok());
  PureMaidProfile pure;
  pure.choice = {{0}, {1, 1, 0, 0}};  // message d with probability one
  MaidProfile profile = pure.to_rules(maid);
  CHECK(interventional_eu(maid, profile, 0, {{{"D_D", "d"}}}) ==
        doctest::Approx(conditional_eu(maid, profile, 0, {{"D_D", "d"}}))
            .epsilon(1e-12));
}

TEST_CASE("the equivalent game tree yields the same equilibrium values") {
  // Example 7 unrolled: chance X_C, then the deterrer (sees X_C), then the
  // adversary (sees X_C and the message). Strategy spaces match the diagram.
  Maid maid = example7();
  GameTree tree({"Deterrer", "Adversary"});
  const UtilityNode& u1 = maid.utilities[0];
  const UtilityNode& u2 = maid.utilities[1];
  std::vector<int> deterrer_nodes;
  for (int c = 0; c < 2; ++c) {
    std::vector<int> adversary_nodes;
    for (int d = 0; d < 2; ++d) {
      std::vector<int> leaves;
      for (int a = 0; a < 2; ++a) {
        leaves.push_back(tree.add_terminal(
            "t_" + std::to_string(c) + std::to_string(d) + std::to_string(a),
            {u1.table[c * 2 + a], u2.table[c * 2 + a]}));
      }
      adversary_nodes.push_back(tree.add_decision(
          "adv_" + std::to_string(c) + std::to_string(d), 1, {"a", "¬a"}, leaves));
    }
    deterrer_nodes.push_back(tree.add_decision("det_" + std::to_string(c), 0,
                                               {"d", "¬d"}, adversary_nodes));
  }
  tree.add_chance("cap", {"c", "¬c"}, {0.5, 0.5}, deterrer_nodes);
  tree.finalize();
  REQUIRE(tree.validate().ok());

  EfgEquilibriumSet tree_eq = efg_pure_nash(tree);
  MaidEquilibriumSet maid_eq = maid_pure_nash(maid);
  CHECK(tree_eq.items.size() == maid_eq.items.size());
  std::multiset<std::pair<double, double>> tree_values, maid_values;
  for (const EfgEquilibrium& eq : tree_eq.items) {
    tree_values.insert({eq.payoffs[0], eq.payoffs[1]});
  }
  for (const MaidEquilibrium& eq : maid_eq.items) {
    maid_values.insert({eq.payoffs[0], eq.payoffs[1]});
  }
  CHECK(tree_values == maid_values);
}

TEST_CASE("rescaling one agent's utilities keeps the equilibrium set") {
  Maid maid = example7();
  Maid scaled = maid;
  for (UtilityNode& u : scaled.utilities) {
    if (u.agent == 0) {
      for (double& v : u.table) v = 2.5 * v + 7.0;
    }
  }
  MaidEquilibriumSet a = maid_pure_nash(maid);
  MaidEquilibriumSet b = maid_pure_nash(scaled);
  REQUIRE(a.items.size() == b.items.size());
  for (size_t i = 0; i < a.items.size(); ++i) {
    CHECK(a.items[i].profile.choice == b.items[i].profile.choice);
  }
}

TEST_CASE("best-response iteration lands on an equilibrium here") {
  Maid maid = example7();
  auto eq = best_response_iteration(maid);
  REQUIRE(eq.has_value());
  MaidEquilibriumSet all = maid_pure_nash(maid);
  bool member = false;
  for (const MaidEquilibrium& e : all.items) {
    if (e.profile.choice == eq->profile.choice) member = true;
  }
  CHECK(member);
}

}  // TEST_SUITE
