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

#include "cgt/extensive_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

namespace cgt {

int GameTree::add_terminal(const std::string& id, std::vector<double> utilities) {
  TreeNode node;
  node.id = id;
  node.kind = TreeNode::Kind::kTerminal;
  node.utilities = std::move(utilities);
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

int GameTree::add_decision(const std::string& id, int agent,
                           std::vector<std::string> actions,
                           std::vector<int> children) {
  TreeNode node;
  node.id = id;
  node.kind = TreeNode::Kind::kDecision;
  node.agent = agent;
  node.labels = std::move(actions);
  node.children = std::move(children);
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

int GameTree::add_chance(const std::string& id, std::vector<std::string> outcomes,
                         std::vector<double> probs, std::vector<int> children) {
  TreeNode node;
  node.id = id;
  node.kind = TreeNode::Kind::kChance;
  node.labels = std::move(outcomes);
  node.chance_probs = std::move(probs);
  node.children = std::move(children);
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

int GameTree::node_index(const std::string& id) const {
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
    if (nodes_[i].id == id) return i;
  }
  fail(ErrorKind::kUnknownNode, "no tree node named '" + id + "'");
}

void GameTree::add_information_set(const std::string& id,
                                   std::vector<std::string> members) {
  InformationSet set;
  set.id = id;
  for (const std::string& member : members) {
    set.members.push_back(node_index(member));
  }
  if (!set.members.empty()) {
    const TreeNode& first = nodes_[set.members.front()];
    set.agent = first.agent;
    set.actions = first.labels;
  }
  info_sets_.push_back(std::move(set));
}

void GameTree::finalize() {
  set_of_node_.assign(nodes_.size(), -1);
  for (int s = 0; s < static_cast<int>(info_sets_.size()); ++s) {
    for (int member : info_sets_[s].members) {
      if (set_of_node_[member] >= 0) {
        doubly_assigned_.push_back(nodes_[member].id);
      }
      set_of_node_[member] = s;
    }
  }
  // Singleton sets for decision nodes not covered explicitly.
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
    if (nodes_[i].kind == TreeNode::Kind::kDecision && set_of_node_[i] < 0) {
      InformationSet set;
      set.id = nodes_[i].id;
      set.agent = nodes_[i].agent;
      set.members = {i};
      set.actions = nodes_[i].labels;
      set_of_node_[i] = static_cast<int>(info_sets_.size());
      info_sets_.push_back(std::move(set));
    }
  }
  // Canonical set order: by first member in node declaration order.
  std::vector<int> order(info_sets_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return *std::min_element(info_sets_[a].members.begin(),
                             info_sets_[a].members.end()) <
           *std::min_element(info_sets_[b].members.begin(),
                             info_sets_[b].members.end());
  });
  std::vector<InformationSet> sorted;
  sorted.reserve(info_sets_.size());
  for (int s : order) sorted.push_back(std::move(info_sets_[s]));
  info_sets_ = std::move(sorted);
  for (int s = 0; s < static_cast<int>(info_sets_.size()); ++s) {
    for (int member : info_sets_[s].members) set_of_node_[member] = s;
  }
  // The root is the unique node that is nobody's child.
  std::vector<bool> is_child(nodes_.size(), false);
  for (TreeNode& node : nodes_) {
    for (int child : node.children) {
      if (child >= 0 && child < static_cast<int>(nodes_.size())) {
        is_child[child] = true;
      }
    }
  }
  root_ = -1;
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
    nodes_[i].parent = -1;
    if (!is_child[i] && root_ < 0) root_ = i;
  }
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
    for (int child : nodes_[i].children) {
      if (child >= 0 && child < static_cast<int>(nodes_.size())) {
        nodes_[child].parent = i;
      }
    }
  }
  finalized_ = true;
}

namespace {

// Own-agent observation history on the path to `node`: the (information set,
// action index) pairs at the owner's earlier moves. Used for the perfect
// recall warning.
std::vector<std::pair<int, int>> own_history(const GameTree& tree, int node,
                                             int agent) {
  std::vector<std::pair<int, int>> history;
  int current = node;
  while (true) {
    int parent = tree.nodes()[current].parent;
    if (parent < 0) break;
    const TreeNode& p = tree.nodes()[parent];
    if (p.kind == TreeNode::Kind::kDecision && p.agent == agent) {
      int branch = -1;
      for (int i = 0; i < static_cast<int>(p.children.size()); ++i) {
        if (p.children[i] == current) branch = i;
      }
      history.emplace_back(tree.info_set_of(parent), branch);
    }
    current = parent;
  }
  std::reverse(history.begin(), history.end());
  return history;
}

std::vector<int> subtree_nodes(const GameTree& tree, int start) {
  std::vector<int> result;
  std::vector<int> stack = {start};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    result.push_back(v);
    for (int child : tree.nodes()[v].children) stack.push_back(child);
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

ValidationReport GameTree::validate() const {
  ValidationReport report;
  if (!finalized_) {
    report.violation("tree was not finalized");
    return report;
  }
  if (nodes_.empty()) {
    report.violation("tree has no nodes");
    return report;
  }
  int root_count = 0;
  std::vector<int> parent_count(nodes_.size(), 0);
  for (const TreeNode& node : nodes_) {
    for (int child : node.children) {
      if (child < 0 || child >= static_cast<int>(nodes_.size())) {
        report.violation("node '" + node.id + "' has an out-of-range child");
        return report;
      }
      ++parent_count[child];
    }
  }
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
    if (parent_count[i] == 0) ++root_count;
    if (parent_count[i] > 1) {
      report.violation("node '" + nodes_[i].id + "' has several parents");
    }
  }
  if (root_count != 1) {
    report.violation("tree must have exactly one root");
  }
  for (const TreeNode& node : nodes_) {
    switch (node.kind) {
      case TreeNode::Kind::kTerminal:
        if (!node.children.empty()) {
          report.violation("terminal '" + node.id + "' has children");
        }
        if (static_cast<int>(node.utilities.size()) != num_agents()) {
          report.violation("terminal '" + node.id +
                           "' must list one utility per agent");
        }
        for (double u : node.utilities) {
          if (!std::isfinite(u)) {
            report.violation("non-finite utility at terminal '" + node.id + "'");
          }
        }
        break;
      case TreeNode::Kind::kDecision: {
        if (node.agent < 0 || node.agent >= num_agents()) {
          report.violation("decision '" + node.id + "' has invalid agent");
        }
        if (node.labels.empty() || node.labels.size() != node.children.size()) {
          report.violation("decision '" + node.id +
                           "' needs one child per action");
        }
        std::unordered_set<std::string> distinct(node.labels.begin(),
                                                 node.labels.end());
        if (distinct.size() != node.labels.size()) {
          report.violation("duplicate action labels at '" + node.id + "'");
        }
        break;
      }
      case TreeNode::Kind::kChance: {
        if (node.labels.empty() || node.labels.size() != node.children.size() ||
            node.chance_probs.size() != node.children.size()) {
          report.violation("chance '" + node.id +
                           "' needs aligned outcomes, children and weights");
          break;
        }
        double sum = 0.0;
        for (double p : node.chance_probs) {
          if (p < 0.0) report.violation("negative weight at chance '" + node.id + "'");
          sum += p;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
          report.violation("chance weights at '" + node.id + "' do not sum to 1");
        }
        break;
      }
    }
  }
  for (const std::string& id : doubly_assigned_) {
    report.violation("decision node '" + id + "' is in several information sets");
  }
  for (const InformationSet& set : info_sets_) {
    for (int member : set.members) {
      const TreeNode& node = nodes_[member];
      if (node.kind != TreeNode::Kind::kDecision) {
        report.violation("information set '" + set.id +
                         "' contains non-decision node '" + node.id + "'");
        continue;
      }
      if (node.agent != set.agent) {
        report.violation("information set '" + set.id + "' mixes agents");
      }
      if (node.labels != set.actions) {
        report.violation("information set '" + set.id +
                         "' members have different action sets");
      }
    }
  }
  if (!report.ok()) return report;

  // Warnings below need a structurally sound tree.
  for (const InformationSet& set : info_sets_) {
    for (int a : set.members) {
      std::vector<int> seen = subtree_nodes(*this, a);
      for (int b : set.members) {
        if (a != b && std::binary_search(seen.begin(), seen.end(), b)) {
          report.warning("information set '" + set.id +
                         "' contains a node and its descendant");
        }
      }
    }
    for (size_t i = 1; i < set.members.size(); ++i) {
      if (own_history(*this, set.members[i], set.agent) !=
          own_history(*this, set.members[0], set.agent)) {
        report.warning("information set '" + set.id +
                       "' violates perfect recall");
        break;
      }
    }
  }
  return report;
}

std::string GameTree::to_dot() const {
  std::ostringstream out;
  out << "digraph G {\n";
  for (const TreeNode& node : nodes_) {
    const char* shape = "ellipse";
    if (node.kind == TreeNode::Kind::kDecision) shape = "box";
    if (node.kind == TreeNode::Kind::kTerminal) shape = "plaintext";
    out << "  \"" << node.id << "\" [shape=" << shape << "];\n";
  }
  for (const TreeNode& node : nodes_) {
    for (size_t i = 0; i < node.children.size(); ++i) {
      out << "  \"" << node.id << "\" -> \"" << nodes_[node.children[i]].id
          << "\" [label=\"" << node.labels[i] << "\"];\n";
    }
  }
  for (const InformationSet& set : info_sets_) {
    for (size_t i = 1; i < set.members.size(); ++i) {
      out << "  \"" << nodes_[set.members[i - 1]].id << "\" -> \""
          << nodes_[set.members[i]].id
          << "\" [dir=none, style=dashed, constraint=false];\n";
    }
  }
  out << "}\n";
  return out.str();
}

BehavioralProfile to_behavioral(const GameTree& tree, const PureStrategyEfg& s) {
  BehavioralProfile profile;
  for (size_t i = 0; i < tree.information_sets().size(); ++i) {
    std::vector<double> dist(tree.information_sets()[i].actions.size(), 0.0);
    dist[s.choices[i]] = 1.0;
    profile.dist.push_back(std::move(dist));
  }
  return profile;
}

namespace {

std::vector<double> eu_walk(const GameTree& tree, int node,
                            const BehavioralProfile& profile) {
  const TreeNode& n = tree.nodes()[node];
  std::vector<double> total(tree.num_agents(), 0.0);
  switch (n.kind) {
    case TreeNode::Kind::kTerminal:
      return n.utilities;
    case TreeNode::Kind::kChance:
      for (size_t i = 0; i < n.children.size(); ++i) {
        if (n.chance_probs[i] == 0.0) continue;
        std::vector<double> child = eu_walk(tree, n.children[i], profile);
        for (int a = 0; a < tree.num_agents(); ++a) {
          total[a] += n.chance_probs[i] * child[a];
        }
      }
      return total;
    case TreeNode::Kind::kDecision: {
      const std::vector<double>& dist = profile.dist[tree.info_set_of(node)];
      for (size_t i = 0; i < n.children.size(); ++i) {
        if (dist[i] == 0.0) continue;
        std::vector<double> child = eu_walk(tree, n.children[i], profile);
        for (int a = 0; a < tree.num_agents(); ++a) {
          total[a] += dist[i] * child[a];
        }
      }
      return total;
    }
  }
  return total;
}

void check_profile(const GameTree& tree, const BehavioralProfile& profile) {
  if (profile.dist.size() != tree.information_sets().size()) {
    fail(ErrorKind::kIncompleteProfile,
         "profile must cover every information set");
  }
  for (size_t i = 0; i < profile.dist.size(); ++i) {
    if (profile.dist[i].size() != tree.information_sets()[i].actions.size()) {
      fail(ErrorKind::kIncompleteProfile,
           "profile at information set '" + tree.information_sets()[i].id +
               "' has wrong length");
    }
  }
}

}  // namespace

std::vector<double> expected_utilities_from(const GameTree& tree, int start,
                                            const BehavioralProfile& profile) {
  check_profile(tree, profile);
  return eu_walk(tree, start, profile);
}

std::vector<double> expected_utilities(const GameTree& tree,
                                       const BehavioralProfile& profile) {
  return expected_utilities_from(tree, tree.root(), profile);
}

std::vector<std::vector<int>> agent_information_sets(const GameTree& tree) {
  std::vector<std::vector<int>> result(tree.num_agents());
  for (int s = 0; s < static_cast<int>(tree.information_sets().size()); ++s) {
    result[tree.information_sets()[s].agent].push_back(s);
  }
  return result;
}

namespace {

// Enumerates assignments over the listed information sets (first varies
// slowest); writes into `choices` and calls fn after each update.
template <typename Fn>
void for_each_bundle(const GameTree& tree, const std::vector<int>& sets,
                     std::vector<int>* choices, Fn&& fn) {
  std::vector<int> local(sets.size(), 0);
  while (true) {
    for (size_t i = 0; i < sets.size(); ++i) (*choices)[sets[i]] = local[i];
    fn();
    int pos = static_cast<int>(sets.size()) - 1;
    while (pos >= 0 &&
           ++local[pos] ==
               static_cast<int>(tree.information_sets()[sets[pos]].actions.size())) {
      local[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

std::uint64_t bundle_count(const GameTree& tree, const std::vector<int>& sets) {
  std::uint64_t n = 1;
  for (int s : sets) n *= tree.information_sets()[s].actions.size();
  return n;
}

std::vector<int> all_sets(const GameTree& tree) {
  std::vector<int> sets(tree.information_sets().size());
  for (size_t i = 0; i < sets.size(); ++i) sets[i] = static_cast<int>(i);
  return sets;
}

}  // namespace

NormalFormGame to_strategic_form(const GameTree& tree, std::uint64_t limit) {
  if (bundle_count(tree, all_sets(tree)) > limit) {
    fail(ErrorKind::kEnumerationLimitExceeded,
         "pure strategy count exceeds limit");
  }
  std::vector<std::vector<int>> per_agent = agent_information_sets(tree);
  NormalFormGame game;
  game.agents = tree.agents();
  game.actions.resize(tree.num_agents());
  for (int agent = 0; agent < tree.num_agents(); ++agent) {
    std::vector<int> choices(tree.information_sets().size(), 0);
    for_each_bundle(tree, per_agent[agent], &choices, [&] {
      std::string label;
      for (int s : per_agent[agent]) {
        if (!label.empty()) label += "/";
        label += tree.information_sets()[s].actions[choices[s]];
      }
      game.actions[agent].push_back(label.empty() ? "-" : label);
    });
  }
  game.payoffs.assign(tree.num_agents(), {});
  std::vector<int> choices(tree.information_sets().size(), 0);
  // Joint enumeration in agent-major order matches the NFG flat layout.
  std::vector<int> joint_sets;
  for (int agent = 0; agent < tree.num_agents(); ++agent) {
    joint_sets.insert(joint_sets.end(), per_agent[agent].begin(),
                      per_agent[agent].end());
  }
  for_each_bundle(tree, joint_sets, &choices, [&] {
    std::vector<double> eu =
        expected_utilities(tree, to_behavioral(tree, PureStrategyEfg{choices}));
    for (int agent = 0; agent < tree.num_agents(); ++agent) {
      game.payoffs[agent].push_back(eu[agent]);
    }
  });
  return game;
}

int strategic_action_index(const GameTree& tree, int agent,
                           const PureStrategyEfg& s) {
  std::vector<std::vector<int>> per_agent = agent_information_sets(tree);
  int index = 0;
  for (int set : per_agent[agent]) {
    index = index * static_cast<int>(tree.information_sets()[set].actions.size()) +
            s.choices[set];
  }
  return index;
}

std::vector<int> subgame_roots(const GameTree& tree) {
  std::vector<int> roots;
  for (int v = 0; v < static_cast<int>(tree.nodes().size()); ++v) {
    if (tree.nodes()[v].kind == TreeNode::Kind::kTerminal) continue;
    std::vector<int> inside = subtree_nodes(tree, v);
    bool ok = true;
    for (const InformationSet& set : tree.information_sets()) {
      size_t contained = 0;
      for (int member : set.members) {
        if (std::binary_search(inside.begin(), inside.end(), member)) ++contained;
      }
      if (contained != 0 && contained != set.members.size()) {
        ok = false;
        break;
      }
    }
    if (ok) roots.push_back(v);
  }
  return roots;
}

namespace {

EfgEquilibrium make_equilibrium(const GameTree& tree,
                                const std::vector<int>& choices) {
  EfgEquilibrium eq;
  eq.strategy.choices = choices;
  eq.payoffs =
      expected_utilities(tree, to_behavioral(tree, PureStrategyEfg{choices}));
  return eq;
}

// No agent can gain more than the tolerance by rewriting its own choices at
// the information sets contained in the subtree rooted at `start`.
bool restriction_is_nash(const GameTree& tree, const std::vector<int>& choices,
                         int start) {
  std::vector<int> inside = subtree_nodes(tree, start);
  std::vector<std::vector<int>> own_sets(tree.num_agents());
  for (int s = 0; s < static_cast<int>(tree.information_sets().size()); ++s) {
    const InformationSet& set = tree.information_sets()[s];
    if (std::binary_search(inside.begin(), inside.end(), set.members[0])) {
      own_sets[set.agent].push_back(s);
    }
  }
  for (int agent = 0; agent < tree.num_agents(); ++agent) {
    if (own_sets[agent].empty()) continue;
    double current = expected_utilities_from(
        tree, start, to_behavioral(tree, PureStrategyEfg{choices}))[agent];
    std::vector<int> trial = choices;
    bool better = false;
    for_each_bundle(tree, own_sets[agent], &trial, [&] {
      if (better) return;
      double value = expected_utilities_from(
          tree, start, to_behavioral(tree, PureStrategyEfg{trial}))[agent];
      if (value > current + kNashTolerance) better = true;
    });
    if (better) return false;
  }
  return true;
}

}  // namespace

EfgEquilibriumSet efg_pure_nash(const GameTree& tree, std::uint64_t limit) {
  if (bundle_count(tree, all_sets(tree)) > limit) {
    fail(ErrorKind::kEnumerationLimitExceeded,
         "pure strategy count exceeds limit");
  }
  EfgEquilibriumSet result;
  std::vector<int> choices(tree.information_sets().size(), 0);
  for_each_bundle(tree, all_sets(tree), &choices, [&] {
    if (restriction_is_nash(tree, choices, tree.root())) {
      result.items.push_back(make_equilibrium(tree, choices));
    }
  });
  return result;
}

EfgEquilibriumSet subgame_perfect(const GameTree& tree, std::uint64_t limit) {
  if (bundle_count(tree, all_sets(tree)) > limit) {
    fail(ErrorKind::kEnumerationLimitExceeded,
         "pure strategy count exceeds limit");
  }
  std::vector<int> roots = subgame_roots(tree);
  EfgEquilibriumSet result;
  std::vector<int> choices(tree.information_sets().size(), 0);
  for_each_bundle(tree, all_sets(tree), &choices, [&] {
    for (int r : roots) {
      if (!restriction_is_nash(tree, choices, r)) return;
    }
    result.items.push_back(make_equilibrium(tree, choices));
  });
  return result;
}

namespace {

struct BiEntry {
  std::vector<int> choices;  // -1 where the subtree does not decide
  std::vector<double> value;
};

std::vector<BiEntry> bi_walk(const GameTree& tree, int node) {
  const TreeNode& n = tree.nodes()[node];
  int num_sets = static_cast<int>(tree.information_sets().size());
  if (n.kind == TreeNode::Kind::kTerminal) {
    return {BiEntry{std::vector<int>(num_sets, -1), n.utilities}};
  }
  // Cartesian product over the children's solution sets; every combination is
  // a complete plan for the subtree, including branches that are not taken.
  std::vector<std::vector<BiEntry>> child_entries;
  child_entries.reserve(n.children.size());
  for (int child : n.children) child_entries.push_back(bi_walk(tree, child));
  std::vector<BiEntry> result;
  std::vector<int> pick(n.children.size(), 0);
  while (true) {
    std::vector<int> merged(num_sets, -1);
    for (size_t i = 0; i < n.children.size(); ++i) {
      const BiEntry& entry = child_entries[i][pick[i]];
      for (int s = 0; s < num_sets; ++s) {
        if (entry.choices[s] >= 0) merged[s] = entry.choices[s];
      }
    }
    if (n.kind == TreeNode::Kind::kChance) {
      std::vector<double> value(tree.num_agents(), 0.0);
      for (size_t i = 0; i < n.children.size(); ++i) {
        const BiEntry& entry = child_entries[i][pick[i]];
        for (int a = 0; a < tree.num_agents(); ++a) {
          value[a] += n.chance_probs[i] * entry.value[a];
        }
      }
      result.push_back(BiEntry{merged, std::move(value)});
    } else {
      double best = -std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < n.children.size(); ++i) {
        best = std::max(best, child_entries[i][pick[i]].value[n.agent]);
      }
      for (size_t i = 0; i < n.children.size(); ++i) {
        const BiEntry& entry = child_entries[i][pick[i]];
        if (entry.value[n.agent] < best - kNashTolerance) continue;
        std::vector<int> choices = merged;
        choices[tree.info_set_of(node)] = static_cast<int>(i);
        result.push_back(BiEntry{std::move(choices), entry.value});
      }
    }
    int pos = static_cast<int>(n.children.size()) - 1;
    while (pos >= 0 && ++pick[pos] == static_cast<int>(child_entries[pos].size())) {
      pick[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return result;
}

}  // namespace

EfgEquilibriumSet backward_induction(const GameTree& tree) {
  for (const InformationSet& set : tree.information_sets()) {
    if (set.members.size() > 1) {
      fail(ErrorKind::kImperfectInformation,
           "backward induction needs singleton information sets");
    }
  }
  EfgEquilibriumSet result;
  for (const BiEntry& entry : bi_walk(tree, tree.root())) {
    EfgEquilibrium eq;
    eq.strategy.choices = entry.choices;
    eq.payoffs = entry.value;
    result.items.push_back(std::move(eq));
  }
  std::sort(result.items.begin(), result.items.end(),
            [](const EfgEquilibrium& a, const EfgEquilibrium& b) {
              return a.strategy.choices < b.strategy.choices;
            });
  result.items.erase(
      std::unique(result.items.begin(), result.items.end(),
                  [](const EfgEquilibrium& a, const EfgEquilibrium& b) {
                    return a.strategy.choices == b.strategy.choices;
                  }),
      result.items.end());
  return result;
}

}  // namespace cgt
