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

#ifndef CGT_EXTENSIVE_FORM_HPP_
#define CGT_EXTENSIVE_FORM_HPP_

#include <string>
#include <vector>

#include "cgt/normal_form.hpp"

namespace cgt {

struct TreeNode {
  enum class Kind { kChance, kDecision, kTerminal };

  std::string id;
  Kind kind = Kind::kTerminal;
  int agent = -1;                     // decision nodes, 0-based
  std::vector<std::string> labels;    // out-edge labels: actions or outcomes
  std::vector<double> chance_probs;   // chance nodes, aligned with labels
  std::vector<int> children;          // aligned with labels
  std::vector<double> utilities;      // terminal nodes, one entry per agent
  int parent = -1;                    // filled by finalize()
};

struct InformationSet {
  std::string id;
  int agent = -1;
  std::vector<int> members;           // node indices
  std::vector<std::string> actions;   // shared action list of the members
};

// Rooted game tree with chance nodes and information sets. Nodes are added
// children-first; finalize() locates the root, wraps any decision node that
// is not covered by an explicit information set into a singleton set, and
// fixes the canonical information-set order (by first member).
class GameTree {
 public:
  GameTree() = default;
  explicit GameTree(std::vector<std::string> agents) : agents_(std::move(agents)) {}

  int add_terminal(const std::string& id, std::vector<double> utilities);
  int add_decision(const std::string& id, int agent,
                   std::vector<std::string> actions, std::vector<int> children);
  int add_chance(const std::string& id, std::vector<std::string> outcomes,
                 std::vector<double> probs, std::vector<int> children);
  void add_information_set(const std::string& id, std::vector<std::string> members);
  void finalize();

  int num_agents() const { return static_cast<int>(agents_.size()); }
  const std::vector<std::string>& agents() const { return agents_; }
  int root() const { return root_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const std::vector<InformationSet>& information_sets() const { return info_sets_; }
  int info_set_of(int node) const { return set_of_node_[node]; }
  int node_index(const std::string& id) const;  // throws kUnknownNode

  ValidationReport validate() const;
  std::string to_dot() const;

 private:
  std::vector<std::string> agents_;
  std::vector<TreeNode> nodes_;
  std::vector<InformationSet> info_sets_;
  std::vector<int> set_of_node_;
  std::vector<std::string> doubly_assigned_;
  int root_ = -1;
  bool finalized_ = false;
};

// One distribution per information set, in the tree's canonical set order.
struct BehavioralProfile {
  std::vector<std::vector<double>> dist;
};

// One action index per information set (a complete plan of action).
struct PureStrategyEfg {
  std::vector<int> choices;
};

BehavioralProfile to_behavioral(const GameTree& tree, const PureStrategyEfg& s);

std::vector<double> expected_utilities(const GameTree& tree,
                                       const BehavioralProfile& profile);
std::vector<double> expected_utilities_from(const GameTree& tree, int start,
                                            const BehavioralProfile& profile);

// Per agent, the indices of its information sets in canonical order.
std::vector<std::vector<int>> agent_information_sets(const GameTree& tree);

// The induced one-shot game: one action per pure strategy, payoffs are
// chance-averaged expected utilities. Composite strategies are labelled by
// joining the per-set actions with '/'.
NormalFormGame to_strategic_form(const GameTree& tree,
                                 std::uint64_t limit = kDefaultEnumerationLimit);
int strategic_action_index(const GameTree& tree, int agent,
                           const PureStrategyEfg& s);

// Non-terminal nodes whose subtree contains every information set either
// entirely or not at all. The root always qualifies.
std::vector<int> subgame_roots(const GameTree& tree);

struct EfgEquilibrium {
  PureStrategyEfg strategy;
  std::vector<double> payoffs;
};

struct EfgEquilibriumSet {
  std::vector<EfgEquilibrium> items;
};

EfgEquilibriumSet efg_pure_nash(const GameTree& tree,
                                std::uint64_t limit = kDefaultEnumerationLimit);

// Pure Nash equilibria whose restriction to every subgame is a Nash
// equilibrium of that subgame.
EfgEquilibriumSet subgame_perfect(const GameTree& tree,
                                  std::uint64_t limit = kDefaultEnumerationLimit);

// Bottom-up argmax for perfect-information trees; ties branch exhaustively.
// Throws kImperfectInformation when an information set has several members.
EfgEquilibriumSet backward_induction(const GameTree& tree);

}  // namespace cgt

#endif  // CGT_EXTENSIVE_FORM_HPP_
