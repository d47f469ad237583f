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

#include "cgt/maid.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace cgt {

std::vector<NodeId> Maid::decision_nodes() const {
  std::vector<NodeId> result;
  for (const GraphNode& node : graph.nodes()) {
    if (node.kind.category == NodeCategory::kDecision) result.push_back(node.id);
  }
  return result;
}

std::vector<NodeId> Maid::decision_nodes(int agent) const {
  std::vector<NodeId> result;
  for (const GraphNode& node : graph.nodes()) {
    if (node.kind.category == NodeCategory::kDecision && node.kind.agent == agent) {
      result.push_back(node.id);
    }
  }
  return result;
}

std::vector<const UtilityNode*> Maid::utilities_of(int agent) const {
  std::vector<const UtilityNode*> result;
  for (const UtilityNode& u : utilities) {
    if (u.agent == agent) result.push_back(&u);
  }
  return result;
}

const UtilityNode& Maid::utility(const NodeId& id) const {
  for (const UtilityNode& u : utilities) {
    if (u.id == id) return u;
  }
  fail(ErrorKind::kUnknownNode, "no utility node named '" + id + "'");
}

namespace {

// Parent configuration count for a decision or utility node.
long long context_count(const Maid& maid, const std::vector<NodeId>& parents) {
  long long n = 1;
  for (const NodeId& p : parents) n *= maid.variables.at(p).cardinality();
  return n;
}

}  // namespace

ValidationReport Maid::validate() const {
  ValidationReport report = graph.validate(num_agents());
  if (agents.empty()) report.violation("diagram has no agents");
  for (const GraphNode& node : graph.nodes()) {
    switch (node.kind.category) {
      case NodeCategory::kUtility: {
        if (!graph.children(node.id).empty()) {
          report.violation("utility node '" + node.id + "' has children");
        }
        bool found = false;
        for (const UtilityNode& u : utilities) {
          if (u.id == node.id) {
            found = true;
            if (u.parents != graph.parents(node.id)) {
              report.violation("utility table parents of '" + node.id +
                               "' do not match graph parents");
            } else if (static_cast<long long>(u.table.size()) !=
                       context_count(*this, u.parents)) {
              report.violation("utility table of '" + node.id + "' has wrong size");
            }
            if (u.agent != node.kind.agent) {
              report.violation("utility table of '" + node.id +
                               "' is assigned to the wrong agent");
            }
          }
        }
        if (!found) report.violation("utility node '" + node.id + "' has no table");
        break;
      }
      case NodeCategory::kDecision:
        if (!variables.contains(node.id)) {
          report.violation("decision node '" + node.id + "' has no action states");
        }
        for (const NodeId& p : graph.parents(node.id)) {
          if (graph.node(graph.index_of(p)).kind.category == NodeCategory::kUtility) {
            report.violation("decision node '" + node.id + "' has a utility parent");
          }
        }
        break;
      case NodeCategory::kChance: {
        if (!variables.contains(node.id)) {
          report.violation("chance node '" + node.id + "' has no states");
          break;
        }
        bool found = false;
        for (const Cpd& c : chance_cpds) {
          if (c.child == node.id) found = true;
        }
        if (!found) report.violation("chance node '" + node.id + "' has no CPD");
        break;
      }
    }
  }
  // Chance CPDs must be valid over the utility-free part of the graph.
  for (const Cpd& c : chance_cpds) {
    if (!graph.contains(c.child)) {
      report.violation("CPD for unknown node '" + c.child + "'");
      continue;
    }
    if (c.parents != graph.parents(c.child)) {
      report.violation("CPD parents of '" + c.child + "' do not match graph parents");
      continue;
    }
    long long rows = context_count(*this, c.parents);
    int card = variables.contains(c.child) ? variables.at(c.child).cardinality() : 0;
    if (card <= 0 ||
        static_cast<long long>(c.table.size()) != rows * card) {
      report.violation("CPD table of '" + c.child + "' has wrong size");
      continue;
    }
    for (long long r = 0; r < rows; ++r) {
      double sum = 0.0;
      for (int s = 0; s < card; ++s) sum += c.table[r * card + s];
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        report.violation("CPD row of '" + c.child + "' does not sum to 1");
      }
    }
  }
  return report;
}

MaidProfile PureMaidProfile::to_rules(const Maid& maid) const {
  MaidProfile profile;
  std::vector<NodeId> decisions = maid.decision_nodes();
  if (choice.size() != decisions.size()) {
    fail(ErrorKind::kIncompleteProfile, "profile must cover every decision node");
  }
  for (size_t d = 0; d < decisions.size(); ++d) {
    const DiscreteVariable& var = maid.variables.at(decisions[d]);
    long long contexts = context_count(maid, maid.graph.parents(decisions[d]));
    if (static_cast<long long>(choice[d].size()) != contexts) {
      fail(ErrorKind::kIncompleteProfile,
           "rule for '" + decisions[d] + "' must cover every parent configuration");
    }
    DecisionRule rule;
    rule.decision = decisions[d];
    rule.table.assign(contexts * var.cardinality(), 0.0);
    for (long long ctx = 0; ctx < contexts; ++ctx) {
      rule.table[ctx * var.cardinality() + choice[d][ctx]] = 1.0;
    }
    profile.rules.push_back(std::move(rule));
  }
  return profile;
}

BayesNet induce_bn(const Maid& maid, const MaidProfile& profile) {
  Admg graph;
  for (const GraphNode& node : maid.graph.nodes()) {
    if (node.kind.category != NodeCategory::kUtility) {
      graph.add_node(node.id, node.kind);
    }
  }
  for (const auto& [a, b] : maid.graph.directed_edges()) {
    const GraphNode& from = maid.graph.node(a);
    const GraphNode& to = maid.graph.node(b);
    if (from.kind.category != NodeCategory::kUtility &&
        to.kind.category != NodeCategory::kUtility) {
      graph.add_edge(from.id, to.id);
    }
  }
  std::vector<Cpd> cpds;
  for (const GraphNode& node : maid.graph.nodes()) {
    switch (node.kind.category) {
      case NodeCategory::kChance:
        for (const Cpd& c : maid.chance_cpds) {
          if (c.child == node.id) cpds.push_back(c);
        }
        break;
      case NodeCategory::kDecision: {
        const DecisionRule* rule = nullptr;
        for (const DecisionRule& r : profile.rules) {
          if (r.decision == node.id) rule = &r;
        }
        if (rule == nullptr) {
          fail(ErrorKind::kIncompleteProfile,
               "no decision rule for '" + node.id + "'");
        }
        cpds.push_back(Cpd{node.id, maid.graph.parents(node.id), rule->table});
        break;
      }
      case NodeCategory::kUtility:
        break;
    }
  }
  return BayesNet(std::move(graph), maid.variables, std::move(cpds));
}

namespace {

double utility_expectation(const BayesNet& bn, const UtilityNode& u,
                           const Assignment& evidence) {
  Factor dist = bn.variable_elimination(u.parents, evidence);
  Factor canonical = dist.reordered(u.parents);  // table order, not declaration
  double total = 0.0;
  for (int i = 0; i < canonical.size(); ++i) {
    total += canonical.table[i] * u.table[i];
  }
  return total;
}

}  // namespace

double agent_expected_utility(const Maid& maid, const MaidProfile& profile,
                              int agent) {
  BayesNet bn = induce_bn(maid, profile);
  double total = 0.0;
  for (const UtilityNode* u : maid.utilities_of(agent)) {
    total += utility_expectation(bn, *u, {});
  }
  return total;
}

double conditional_eu(const Maid& maid, const MaidProfile& profile, int agent,
                      const Assignment& evidence) {
  BayesNet bn = induce_bn(maid, profile);
  double total = 0.0;
  for (const UtilityNode* u : maid.utilities_of(agent)) {
    total += utility_expectation(bn, *u, evidence);
  }
  return total;
}

double interventional_eu(const Maid& maid, const MaidProfile& profile,
                         int agent, const Intervention& itv) {
  for (const auto& [id, state] : itv.assignments) {
    (void)state;
    int index = maid.graph.index_of(id);
    if (maid.graph.node(index).kind.category != NodeCategory::kDecision) {
      fail(ErrorKind::kSchemaViolation,
           "post-policy intervention target '" + id + "' is not a decision node");
    }
  }
  BayesNet bn = apply_surgery(induce_bn(maid, profile), itv);
  double total = 0.0;
  for (const UtilityNode* u : maid.utilities_of(agent)) {
    total += utility_expectation(bn, *u, {});
  }
  return total;
}

namespace {

template <typename Fn>
void for_each_combo(const std::vector<int>& sizes, Fn&& fn) {
  std::vector<int> combo(sizes.size(), 0);
  while (true) {
    fn(combo);
    int pos = static_cast<int>(sizes.size()) - 1;
    while (pos >= 0 && ++combo[pos] == sizes[pos]) {
      combo[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

struct RuleSpace {
  std::vector<NodeId> decisions;           // declaration order
  std::vector<long long> contexts;         // per decision
  std::vector<int> cards;                  // per decision
  std::vector<int> owner;                  // per decision
  std::vector<std::vector<int>> slot_size; // [decision] = per-context card
};

RuleSpace rule_space(const Maid& maid) {
  RuleSpace space;
  space.decisions = maid.decision_nodes();
  for (const NodeId& d : space.decisions) {
    space.contexts.push_back(context_count(maid, maid.graph.parents(d)));
    space.cards.push_back(maid.variables.at(d).cardinality());
    space.owner.push_back(maid.graph.node(maid.graph.index_of(d)).kind.agent);
  }
  return space;
}

// Flattened slots: one per (decision, context). Used to enumerate pure
// profiles and per-agent deviation bundles alike.
std::vector<int> agent_slots(const RuleSpace& space, int agent) {
  std::vector<int> slots;
  int slot = 0;
  for (size_t d = 0; d < space.decisions.size(); ++d) {
    for (long long c = 0; c < space.contexts[d]; ++c, ++slot) {
      if (space.owner[d] == agent) slots.push_back(slot);
    }
  }
  return slots;
}

PureMaidProfile slots_to_profile(const RuleSpace& space,
                                 const std::vector<int>& slots) {
  PureMaidProfile profile;
  int slot = 0;
  for (size_t d = 0; d < space.decisions.size(); ++d) {
    std::vector<int> rule;
    for (long long c = 0; c < space.contexts[d]; ++c, ++slot) {
      rule.push_back(slots[slot]);
    }
    profile.choice.push_back(std::move(rule));
  }
  return profile;
}

}  // namespace

MaidEquilibriumSet maid_pure_nash(const Maid& maid, std::uint64_t limit) {
  RuleSpace space = rule_space(maid);
  std::vector<int> slot_sizes;
  std::uint64_t combos = 1;
  for (size_t d = 0; d < space.decisions.size(); ++d) {
    for (long long c = 0; c < space.contexts[d]; ++c) {
      slot_sizes.push_back(space.cards[d]);
      combos *= space.cards[d];
      if (combos > limit) {
        fail(ErrorKind::kEnumerationLimitExceeded,
             "pure rule profile count exceeds limit");
      }
    }
  }
  MaidEquilibriumSet result;
  for_each_combo(slot_sizes, [&](const std::vector<int>& slots) {
    PureMaidProfile pure = slots_to_profile(space, slots);
    MaidProfile profile = pure.to_rules(maid);
    for (int agent = 0; agent < maid.num_agents(); ++agent) {
      double current = agent_expected_utility(maid, profile, agent);
      // Unilateral deviation rewrites all of the agent's rules at once.
      std::vector<int> own = agent_slots(space, agent);
      std::vector<int> own_sizes;
      for (int s : own) own_sizes.push_back(slot_sizes[s]);
      bool better = false;
      for_each_combo(own_sizes, [&](const std::vector<int>& own_combo) {
        if (better) return;
        std::vector<int> trial = slots;
        for (size_t i = 0; i < own.size(); ++i) trial[own[i]] = own_combo[i];
        if (trial == slots) return;
        double value = agent_expected_utility(
            maid, slots_to_profile(space, trial).to_rules(maid), agent);
        if (value > current + kNashTolerance) better = true;
      });
      if (better) return;
    }
    MaidEquilibrium eq;
    for (int agent = 0; agent < maid.num_agents(); ++agent) {
      eq.payoffs.push_back(agent_expected_utility(maid, profile, agent));
    }
    eq.profile = std::move(pure);
    result.items.push_back(std::move(eq));
  });
  return result;
}

std::optional<MaidEquilibrium> best_response_iteration(const Maid& maid,
                                                       int max_rounds) {
  RuleSpace space = rule_space(maid);
  std::vector<int> slot_sizes;
  for (size_t d = 0; d < space.decisions.size(); ++d) {
    for (long long c = 0; c < space.contexts[d]; ++c) {
      slot_sizes.push_back(space.cards[d]);
    }
  }
  std::vector<int> slots(slot_sizes.size(), 0);
  for (int round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (int agent = 0; agent < maid.num_agents(); ++agent) {
      std::vector<int> own = agent_slots(space, agent);
      std::vector<int> own_sizes;
      for (int s : own) own_sizes.push_back(slot_sizes[s]);
      double best = -std::numeric_limits<double>::infinity();
      std::vector<int> best_slots = slots;
      for_each_combo(own_sizes, [&](const std::vector<int>& own_combo) {
        std::vector<int> trial = slots;
        for (size_t i = 0; i < own.size(); ++i) trial[own[i]] = own_combo[i];
        double value = agent_expected_utility(
            maid, slots_to_profile(space, trial).to_rules(maid), agent);
        if (value > best + kNashTolerance) {  // first maximizer wins ties
          best = value;
          best_slots = trial;
        }
      });
      if (best_slots != slots) {
        slots = best_slots;
        changed = true;
      }
    }
    if (!changed) {
      MaidEquilibrium eq;
      eq.profile = slots_to_profile(space, slots);
      MaidProfile profile = eq.profile.to_rules(maid);
      for (int agent = 0; agent < maid.num_agents(); ++agent) {
        eq.payoffs.push_back(agent_expected_utility(maid, profile, agent));
      }
      return eq;
    }
  }
  return std::nullopt;
}

}  // namespace cgt
