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

#include "cgt/cbg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace cgt {

int GraphFamily::index_of(const std::string& name) const {
  for (int g = 0; g < num_graphs(); ++g) {
    if (names[g] == name) return g;
  }
  fail(ErrorKind::kUnknownGraph, "no graph named '" + name + "'");
}

std::vector<std::vector<NodeId>> family_decisions(const GraphFamily& family) {
  std::vector<std::vector<NodeId>> result;
  if (family.members.empty()) return result;
  const Maid& first = family.members.front();
  result.resize(first.num_agents());
  for (int agent = 0; agent < first.num_agents(); ++agent) {
    result[agent] = first.decision_nodes(agent);
  }
  return result;
}

ValidationReport validate_family(const GraphFamily& family) {
  ValidationReport report;
  if (family.members.empty()) {
    report.violation("family has no graphs");
    return report;
  }
  if (family.names.size() != family.members.size()) {
    report.violation("every graph needs a name");
    return report;
  }
  const Maid& first = family.members.front();
  for (int g = 0; g < family.num_graphs(); ++g) {
    const Maid& maid = family.members[g];
    ValidationReport member = maid.validate();
    for (const std::string& v : member.violations) {
      report.violation("graph '" + family.names[g] + "': " + v);
    }
    if (maid.agents != first.agents) {
      report.violation("graph '" + family.names[g] + "' has a different agent set");
      continue;
    }
    // Decision nodes of different agents must not be causally connected.
    for (const NodeId& d : maid.decision_nodes()) {
      if (!maid.graph.contains(d)) continue;
      int owner = maid.graph.node(maid.graph.index_of(d)).kind.agent;
      for (const NodeId& reached : maid.graph.descendants(d)) {
        const GraphNode& node = maid.graph.node(maid.graph.index_of(reached));
        if (node.kind.category == NodeCategory::kDecision &&
            node.kind.agent != owner) {
          report.violation("graph '" + family.names[g] + "': decision path from '" +
                           d + "' to '" + reached + "' crosses agents");
        }
      }
    }
  }
  if (!report.ok()) return report;
  // Shared decision and action spaces across the family.
  std::vector<std::vector<NodeId>> decisions = family_decisions(family);
  for (int g = 0; g < family.num_graphs(); ++g) {
    const Maid& maid = family.members[g];
    for (int agent = 0; agent < first.num_agents(); ++agent) {
      std::vector<NodeId> own = maid.decision_nodes(agent);
      std::vector<NodeId> expected = decisions[agent];
      std::sort(own.begin(), own.end());
      std::sort(expected.begin(), expected.end());
      if (own != expected) {
        report.violation("graph '" + family.names[g] + "': agent '" +
                         first.agents[agent] + "' has different decision nodes");
        continue;
      }
      for (const NodeId& d : decisions[agent]) {
        if (maid.variables.at(d).states != first.variables.at(d).states) {
          report.violation("graph '" + family.names[g] + "': decision '" + d +
                           "' has a different action space");
        }
      }
    }
  }
  return report;
}

ValidationReport validate_beliefs(const GraphFamily& family,
                                  const BeliefProfile& beliefs) {
  ValidationReport report;
  int m = family.members.empty() ? 0 : family.members.front().num_agents();
  for (const auto* matrix : {&beliefs.first_order, &beliefs.second_order}) {
    const char* label = matrix == &beliefs.first_order ? "first" : "second";
    if (static_cast<int>(matrix->size()) != m) {
      report.violation(std::string(label) + "-order beliefs must have one row per agent");
      continue;
    }
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>((*matrix)[i].size()) != family.num_graphs()) {
        report.violation(std::string(label) + "-order beliefs of agent " +
                         std::to_string(i + 1) + " must cover every graph");
        continue;
      }
      double sum = 0.0;
      for (double w : (*matrix)[i]) {
        if (w < 0.0) report.violation("negative belief weight");
        sum += w;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        report.violation(std::string(label) + "-order belief row of agent " +
                         std::to_string(i + 1) + " does not sum to 1");
      }
    }
  }
  return report;
}

namespace {

struct CellRef {
  int decision;  // index into the agent's canonical decision list
  int context;
};

// Enumeration space of one (agent, graph) component.
struct ComponentSpace {
  std::vector<long long> contexts;  // per decision
  std::vector<int> cards;           // per decision
  std::vector<CellRef> cells;       // flattened (decision, context) pairs
  std::vector<int> cell_sizes;
  std::string signature;            // shape of the decision contexts
};

ComponentSpace component_space(const Maid& maid,
                               const std::vector<NodeId>& decisions) {
  ComponentSpace space;
  std::ostringstream sig;
  for (size_t d = 0; d < decisions.size(); ++d) {
    const std::vector<NodeId> parents = maid.graph.parents(decisions[d]);
    long long contexts = 1;
    sig << decisions[d] << "(";
    for (const NodeId& p : parents) {
      contexts *= maid.variables.at(p).cardinality();
      sig << p << ":" << maid.variables.at(p).cardinality() << ",";
    }
    sig << ")";
    space.contexts.push_back(contexts);
    space.cards.push_back(maid.variables.at(decisions[d]).cardinality());
    for (long long c = 0; c < contexts; ++c) {
      space.cells.push_back({static_cast<int>(d), static_cast<int>(c)});
      space.cell_sizes.push_back(space.cards.back());
    }
  }
  space.signature = sig.str();
  return space;
}

AgentGraphChoice zero_choice(const ComponentSpace& space) {
  AgentGraphChoice choice;
  for (size_t d = 0; d < space.contexts.size(); ++d) {
    choice.rule.emplace_back(space.contexts[d], 0);
  }
  return choice;
}

MaidProfile graph_profile(const Maid& maid,
                          const std::vector<std::vector<NodeId>>& decisions,
                          const GraphIndexedProfile& profile, int graph) {
  PureMaidProfile pure;
  for (const NodeId& d : maid.decision_nodes()) {
    bool found = false;
    for (int agent = 0; agent < static_cast<int>(decisions.size()); ++agent) {
      for (size_t k = 0; k < decisions[agent].size(); ++k) {
        if (decisions[agent][k] == d) {
          pure.choice.push_back(profile.component[agent][graph].rule[k]);
          found = true;
        }
      }
    }
    if (!found) {
      fail(ErrorKind::kIncompleteProfile, "no rule for decision '" + d + "'");
    }
  }
  return pure.to_rules(maid);
}

// Expected utilities of every agent in one graph, memoized on the profile's
// restriction to that graph.
class EuCache {
 public:
  EuCache(const GraphFamily& family, const std::vector<std::vector<NodeId>>& decisions)
      : family_(family), decisions_(decisions) {}

  const std::vector<double>& eu(const GraphIndexedProfile& profile, int graph) {
    std::vector<int> key = {graph};
    for (const auto& per_agent : profile.component) {
      for (const auto& rule : per_agent[graph].rule) {
        key.insert(key.end(), rule.begin(), rule.end());
      }
    }
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const Maid& maid = family_.members[graph];
    MaidProfile rules = graph_profile(maid, decisions_, profile, graph);
    std::vector<double> values;
    for (int agent = 0; agent < maid.num_agents(); ++agent) {
      values.push_back(agent_expected_utility(maid, rules, agent));
    }
    return cache_.emplace(std::move(key), std::move(values)).first->second;
  }

 private:
  const GraphFamily& family_;
  const std::vector<std::vector<NodeId>>& decisions_;
  std::map<std::vector<int>, std::vector<double>> cache_;
};

}  // namespace

double cbg_expected_utility(const GraphFamily& family,
                            const BeliefProfile& beliefs,
                            const GraphIndexedProfile& profile, int agent,
                            int graph) {
  if (graph < 0 || graph >= family.num_graphs()) {
    fail(ErrorKind::kUnknownGraph, "graph index out of range");
  }
  double weight = beliefs.second_order[agent][graph];
  if (weight == 0.0) return 0.0;
  const Maid& maid = family.members[graph];
  MaidProfile rules = graph_profile(maid, family_decisions(family), profile, graph);
  return weight * agent_expected_utility(maid, rules, agent);
}

CbgEquilibriumSet cbg_pure_bne(const GraphFamily& family,
                               const BeliefProfile& beliefs, CbgMode mode,
                               std::uint64_t limit) {
  const int num_graphs = family.num_graphs();
  const int num_agents = family.members.front().num_agents();
  std::vector<std::vector<NodeId>> decisions = family_decisions(family);

  std::vector<std::vector<ComponentSpace>> spaces(num_agents);
  for (int i = 0; i < num_agents; ++i) {
    for (int g = 0; g < num_graphs; ++g) {
      spaces[i].push_back(component_space(family.members[g], decisions[i]));
    }
  }

  const auto& scenario = mode == CbgMode::kPerGraph ? beliefs.second_order
                                                    : beliefs.first_order;
  std::vector<std::vector<bool>> anchored(num_agents,
                                          std::vector<bool>(num_graphs, false));
  std::vector<bool> has_anchor(num_agents, false);
  for (int i = 0; i < num_agents; ++i) {
    for (int g = 0; g < num_graphs; ++g) {
      anchored[i][g] = scenario[i][g] > 0.0;
      if (anchored[i][g]) has_anchor[i] = true;
    }
  }
  // A component is a wildcard when no check constrains it and no agent's
  // first-order value ever reads it.
  std::vector<std::vector<bool>> wildcard(num_agents,
                                          std::vector<bool>(num_graphs, false));
  for (int i = 0; i < num_agents; ++i) {
    for (int g = 0; g < num_graphs; ++g) {
      if (anchored[i][g]) continue;
      bool referenced = false;
      for (int j = 0; j < num_agents; ++j) {
        if (has_anchor[j] && beliefs.first_order[j][g] > 0.0) referenced = true;
      }
      wildcard[i][g] = !referenced;
    }
  }

  // Flatten the enumerated cells of all non-wildcard components.
  struct Slot {
    int agent, graph, cell;
  };
  std::vector<Slot> slots;
  std::vector<int> slot_sizes;
  std::uint64_t combos = 1;
  for (int i = 0; i < num_agents; ++i) {
    for (int g = 0; g < num_graphs; ++g) {
      if (wildcard[i][g]) continue;
      for (size_t cell = 0; cell < spaces[i][g].cells.size(); ++cell) {
        slots.push_back({i, g, static_cast<int>(cell)});
        slot_sizes.push_back(spaces[i][g].cell_sizes[cell]);
        combos *= spaces[i][g].cell_sizes[cell];
        if (combos > limit) {
          fail(ErrorKind::kEnumerationLimitExceeded,
               "graph-indexed profile count exceeds limit");
        }
      }
    }
  }

  EuCache cache(family, decisions);
  auto value_of = [&](const GraphIndexedProfile& profile, int agent) {
    double total = 0.0;
    for (int g = 0; g < num_graphs; ++g) {
      double w = beliefs.first_order[agent][g];
      if (w > 0.0) total += w * cache.eu(profile, g)[agent];
    }
    return total;
  };

  CbgEquilibriumSet result;
  std::vector<int> assignment(slots.size(), 0);
  while (true) {
    GraphIndexedProfile profile;
    profile.component.resize(num_agents);
    for (int i = 0; i < num_agents; ++i) {
      for (int g = 0; g < num_graphs; ++g) {
        AgentGraphChoice choice = zero_choice(spaces[i][g]);
        choice.wildcard = wildcard[i][g];
        profile.component[i].push_back(std::move(choice));
      }
    }
    for (size_t s = 0; s < slots.size(); ++s) {
      const CellRef& ref = spaces[slots[s].agent][slots[s].graph].cells[slots[s].cell];
      profile.component[slots[s].agent][slots[s].graph]
          .rule[ref.decision][ref.context] = assignment[s];
    }

    bool is_equilibrium = true;
    for (int i = 0; i < num_agents && is_equilibrium; ++i) {
      double current = value_of(profile, i);
      for (int g = 0; g < num_graphs && is_equilibrium; ++g) {
        if (!anchored[i][g]) continue;
        // Candidate rules for graph g, applied to every graph with the same
        // decision-context shape.
        std::vector<int> sizes = spaces[i][g].cell_sizes;
        bool better = false;
        for_each_assignment(sizes, [&](const std::vector<int>& cells) {
          if (better) return;
          GraphIndexedProfile trial = profile;
          for (int g2 = 0; g2 < num_graphs; ++g2) {
            if (spaces[i][g2].signature != spaces[i][g].signature) continue;
            for (size_t c = 0; c < cells.size(); ++c) {
              const CellRef& ref = spaces[i][g].cells[c];
              trial.component[i][g2].rule[ref.decision][ref.context] = cells[c];
            }
          }
          if (value_of(trial, i) > current + kNashTolerance) better = true;
        });
        if (better) is_equilibrium = false;
      }
    }
    if (is_equilibrium) {
      CbgEquilibrium eq;
      for (int i = 0; i < num_agents; ++i) eq.payoffs.push_back(value_of(profile, i));
      eq.profile = std::move(profile);
      result.items.push_back(std::move(eq));
    }

    int pos = static_cast<int>(slots.size()) - 1;
    while (pos >= 0 && ++assignment[pos] == slot_sizes[pos]) {
      assignment[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return result;
}

}  // namespace cgt
