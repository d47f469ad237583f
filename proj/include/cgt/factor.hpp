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

#ifndef CGT_FACTOR_HPP_
#define CGT_FACTOR_HPP_

#include <string>
#include <utility>
#include <vector>

#include "cgt/error.hpp"
#include "cgt/graph.hpp"

namespace cgt {

struct DiscreteVariable {
  NodeId id;
  std::vector<std::string> states;

  int cardinality() const { return static_cast<int>(states.size()); }
  int state_index(const std::string& state) const;  // throws kUnknownState
};

// Ordered registry of variables; declaration order is canonical.
class VariableTable {
 public:
  void add(DiscreteVariable variable);
  bool contains(const NodeId& id) const;
  const DiscreteVariable& at(const NodeId& id) const;  // throws kUnknownNode
  const std::vector<DiscreteVariable>& all() const { return variables_; }
  int declaration_index(const NodeId& id) const;

 private:
  std::vector<DiscreteVariable> variables_;
};

// (variable, state label) pairs; used for evidence and full assignments.
using Assignment = std::vector<std::pair<NodeId, std::string>>;

// Unnormalized table over the joint state space of its scope. Layout is
// row-major with the first scope variable varying slowest, which is the one
// canonical layout shared by CPD rows, utility tables and the file format.
struct Factor {
  std::vector<NodeId> scope;
  std::vector<int> cards;
  std::vector<double> table;

  static Factor unit() { return Factor{{}, {}, {1.0}}; }

  int size() const { return static_cast<int>(table.size()); }
  int position_of(const NodeId& id) const;  // -1 if absent

  double value_at(const std::vector<int>& states) const;

  Factor product(const Factor& other) const;       // throws kStateSpaceMismatch
  Factor marginalize(const std::vector<NodeId>& vars) const;  // sums vars out
  Factor reduce(const std::vector<std::pair<NodeId, int>>& evidence) const;
  Factor reordered(const std::vector<NodeId>& new_scope) const;
  Factor normalized() const;  // throws kZeroProbabilityEvidence on zero mass

  double total() const;
};

// Conditional probability table of `child` given `parents`. Each row (one
// parent configuration, first parent slowest) lists the child distribution.
struct Cpd {
  NodeId child;
  std::vector<NodeId> parents;
  std::vector<double> table;

  Factor as_factor(const VariableTable& vars) const;
};

// Discrete Bayesian network: acyclic directed graph, one variable and one CPD
// per node. The joint distribution is the product of the per-node CPDs.
class BayesNet {
 public:
  BayesNet() = default;
  BayesNet(Admg graph, VariableTable variables, std::vector<Cpd> cpds);

  const Admg& graph() const { return graph_; }
  const VariableTable& variables() const { return variables_; }
  const std::vector<Cpd>& cpds() const { return cpds_; }
  const Cpd& cpd(const NodeId& node) const;

  ValidationReport validate() const;

  // Product of CPD entries for a full assignment of every node.
  double joint_probability(const Assignment& assignment) const;

  // Unnormalized factor over `query` with `evidence` clamped; its total is
  // P(query, evidence). Elimination order is reverse topological among the
  // remaining nodes, which makes results bit-reproducible.
  Factor joint_factor(const std::vector<NodeId>& query,
                      const Assignment& evidence) const;

  // P(query | evidence), normalized over the query variables in declaration
  // order. Throws kZeroProbabilityEvidence when the evidence has no mass.
  Factor variable_elimination(const std::vector<NodeId>& query,
                              const Assignment& evidence) const;

  double evidence_probability(const Assignment& evidence) const;

 private:
  Admg graph_;
  VariableTable variables_;
  std::vector<Cpd> cpds_;
};

// Canonical mixed-radix walk over a state space (first variable slowest).
// Calls fn with the current per-variable state indices for every cell.
template <typename Fn>
void for_each_assignment(const std::vector<int>& cards, Fn&& fn) {
  std::vector<int> states(cards.size(), 0);
  while (true) {
    fn(states);
    int pos = static_cast<int>(cards.size()) - 1;
    while (pos >= 0 && ++states[pos] == cards[pos]) {
      states[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

}  // namespace cgt

#endif  // CGT_FACTOR_HPP_
