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

#ifndef CGT_MAID_HPP_
#define CGT_MAID_HPP_

#include <optional>

#include "cgt/intervention.hpp"
#include "cgt/normal_form.hpp"

namespace cgt {

// Deterministic real-valued node: one value per configuration of its parents
// (same row layout as CPDs, first parent slowest).
struct UtilityNode {
  NodeId id;
  int agent = -1;
  std::vector<NodeId> parents;
  std::vector<double> table;
};

// Multi-agent influence diagram. Chance nodes carry CPDs, decision nodes are
// owned by agents and get their distributions from strategy profiles, and
// utility nodes are childless deterministic functions of their parents.
// A complete strategy profile turns the diagram into a causal Bayesian
// network over the chance and decision nodes.
struct Maid {
  std::vector<std::string> agents;
  Admg graph;
  VariableTable variables;  // chance and decision nodes
  std::vector<Cpd> chance_cpds;
  std::vector<UtilityNode> utilities;

  int num_agents() const { return static_cast<int>(agents.size()); }
  std::vector<NodeId> decision_nodes() const;          // declaration order
  std::vector<NodeId> decision_nodes(int agent) const;
  std::vector<const UtilityNode*> utilities_of(int agent) const;
  const UtilityNode& utility(const NodeId& id) const;  // throws kUnknownNode

  ValidationReport validate() const;
};

// Distribution over a decision node's actions per parent configuration; the
// same shape as a CPD for that node.
struct DecisionRule {
  NodeId decision;
  std::vector<double> table;
};

struct MaidProfile {
  std::vector<DecisionRule> rules;  // one per decision node, declaration order
};

// One action index per (decision node, parent configuration).
struct PureMaidProfile {
  std::vector<std::vector<int>> choice;

  MaidProfile to_rules(const Maid& maid) const;
};

// The causal Bayesian network a complete profile induces: chance CPDs are
// kept and decision nodes adopt their rules. Utility nodes stay outside the
// network and are evaluated as expectations over their parents.
BayesNet induce_bn(const Maid& maid, const MaidProfile& profile);

double agent_expected_utility(const Maid& maid, const MaidProfile& profile,
                              int agent);

// E[sum of the agent's utility nodes | evidence] under the induced network.
double conditional_eu(const Maid& maid, const MaidProfile& profile, int agent,
                      const Assignment& evidence);

// Post-policy intervention: the profile stays fixed, the induced network is
// mutilated at the intervened decision nodes, then the expectation is taken.
double interventional_eu(const Maid& maid, const MaidProfile& profile,
                         int agent, const Intervention& itv);

struct MaidEquilibrium {
  PureMaidProfile profile;
  std::vector<double> payoffs;
};

struct MaidEquilibriumSet {
  std::vector<MaidEquilibrium> items;
};

// All pure-rule profiles where no agent gains more than the tolerance by
// rewriting all of its decision rules at once.
MaidEquilibriumSet maid_pure_nash(const Maid& maid,
                                  std::uint64_t limit = kDefaultEnumerationLimit);

// Heuristic escape hatch for models too large to enumerate: round-robin best
// responses in agent order with lexicographic tie-break. May not converge.
std::optional<MaidEquilibrium> best_response_iteration(const Maid& maid,
                                                       int max_rounds = 100);

}  // namespace cgt

#endif  // CGT_MAID_HPP_
