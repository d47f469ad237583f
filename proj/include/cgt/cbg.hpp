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

#ifndef CGT_CBG_HPP_
#define CGT_CBG_HPP_

#include "cgt/maid.hpp"

namespace cgt {

// Family of candidate causal structures. All members share the agent set and
// each agent's decision nodes and action spaces; chance structure may differ.
struct GraphFamily {
  std::vector<std::string> names;
  std::vector<Maid> members;

  int num_graphs() const { return static_cast<int>(members.size()); }
  int index_of(const std::string& name) const;  // throws kUnknownGraph
};

// first_order[i][g]  = agent i's private probability that the structure is g.
// second_order[i][g] = agent i's probability that the other agents believe g.
struct BeliefProfile {
  std::vector<std::vector<double>> first_order;
  std::vector<std::vector<double>> second_order;
};

// Agent strategy for one graph: per own decision node (family order), one
// action per decision context under that graph's parent structure. Wildcards
// mark components no belief constrains or references.
struct AgentGraphChoice {
  bool wildcard = false;
  std::vector<std::vector<int>> rule;
};

struct GraphIndexedProfile {
  std::vector<std::vector<AgentGraphChoice>> component;  // [agent][graph]
};

// Flags inter-agent decision paths, mismatched decision/action spaces across
// graphs, and member-level problems.
ValidationReport validate_family(const GraphFamily& family);

ValidationReport validate_beliefs(const GraphFamily& family,
                                  const BeliefProfile& beliefs);

// Per-agent decision node names in canonical (first member) order.
std::vector<std::vector<NodeId>> family_decisions(const GraphFamily& family);

// The belief-weighted value of one graph for one agent:
// second_order[agent][graph] times the agent's expected utility in the causal
// network induced by the profile restricted to that graph.
double cbg_expected_utility(const GraphFamily& family,
                            const BeliefProfile& beliefs,
                            const GraphIndexedProfile& profile, int agent,
                            int graph);

enum class CbgMode { kPerGraph, kExAnte };

struct CbgEquilibrium {
  GraphIndexedProfile profile;
  std::vector<double> payoffs;  // ex-ante under each agent's own first-order belief
};

struct CbgEquilibriumSet {
  std::vector<CbgEquilibrium> items;
};

// Pure Bayesian Nash equilibria over graph-indexed strategies.
//
// A profile passes when, for every agent i and every graph g whose scenario
// weight is positive (second-order beliefs in per-graph mode, first-order in
// ex-ante mode), no alternative rule for g improves agent i's first-order
// expected value sum_{g'} first_order[i][g'] * EU_i(g') by more than the
// tolerance. A deviation rewrites the agent's component at g and at every
// other graph where its decision contexts have identical shape, so an agent
// cannot exploit a graph it could not tell apart when acting. Zero-weight,
// unreferenced components are wildcards.
CbgEquilibriumSet cbg_pure_bne(const GraphFamily& family,
                               const BeliefProfile& beliefs, CbgMode mode,
                               std::uint64_t limit = kDefaultEnumerationLimit);

}  // namespace cgt

#endif  // CGT_CBG_HPP_
