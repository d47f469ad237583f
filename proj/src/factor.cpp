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

#include "cgt/factor.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace cgt {

int DiscreteVariable::state_index(const std::string& state) const {
  for (int i = 0; i < cardinality(); ++i) {
    if (states[i] == state) return i;
  }
  fail(ErrorKind::kUnknownState,
       "variable '" + id + "' has no state '" + state + "'");
}

void VariableTable::add(DiscreteVariable variable) {
  if (contains(variable.id)) {
    fail(ErrorKind::kSchemaViolation, "duplicate variable '" + variable.id + "'");
  }
  variables_.push_back(std::move(variable));
}

bool VariableTable::contains(const NodeId& id) const {
  return std::any_of(variables_.begin(), variables_.end(),
                     [&](const DiscreteVariable& v) { return v.id == id; });
}

const DiscreteVariable& VariableTable::at(const NodeId& id) const {
  for (const DiscreteVariable& v : variables_) {
    if (v.id == id) return v;
  }
  fail(ErrorKind::kUnknownNode, "no variable named '" + id + "'");
}

int VariableTable::declaration_index(const NodeId& id) const {
  for (int i = 0; i < static_cast<int>(variables_.size()); ++i) {
    if (variables_[i].id == id) return i;
  }
  fail(ErrorKind::kUnknownNode, "no variable named '" + id + "'");
}

int Factor::position_of(const NodeId& id) const {
  for (int i = 0; i < static_cast<int>(scope.size()); ++i) {
    if (scope[i] == id) return i;
  }
  return -1;
}

double Factor::value_at(const std::vector<int>& states) const {
  int index = 0;
  for (size_t i = 0; i < scope.size(); ++i) {
    index = index * cards[i] + states[i];
  }
  return table[index];
}

Factor Factor::product(const Factor& other) const {
  // Merged scope: this factor's variables, then the new ones from `other`.
  Factor result;
  result.scope = scope;
  result.cards = cards;
  for (size_t i = 0; i < other.scope.size(); ++i) {
    int pos = position_of(other.scope[i]);
    if (pos < 0) {
      result.scope.push_back(other.scope[i]);
      result.cards.push_back(other.cards[i]);
    } else if (cards[pos] != other.cards[i]) {
      fail(ErrorKind::kStateSpaceMismatch,
           "variable '" + other.scope[i] + "' has mismatched state spaces");
    }
  }
  std::vector<int> a_pos(scope.size()), b_pos(other.scope.size());
  for (size_t i = 0; i < scope.size(); ++i) a_pos[i] = i;
  for (size_t i = 0; i < other.scope.size(); ++i) {
    b_pos[i] = result.position_of(other.scope[i]);
  }
  result.table.resize([&] {
    long long n = 1;
    for (int c : result.cards) n *= c;
    return n;
  }());
  std::vector<int> a_states(scope.size()), b_states(other.scope.size());
  long long cell = 0;
  for_each_assignment(result.cards, [&](const std::vector<int>& states) {
    for (size_t i = 0; i < a_pos.size(); ++i) a_states[i] = states[a_pos[i]];
    for (size_t i = 0; i < b_pos.size(); ++i) b_states[i] = states[b_pos[i]];
    result.table[cell++] = value_at(a_states) * other.value_at(b_states);
  });
  return result;
}

Factor Factor::marginalize(const std::vector<NodeId>& vars) const {
  std::unordered_set<std::string> drop(vars.begin(), vars.end());
  Factor result;
  std::vector<int> keep_pos;
  for (size_t i = 0; i < scope.size(); ++i) {
    if (!drop.count(scope[i])) {
      result.scope.push_back(scope[i]);
      result.cards.push_back(cards[i]);
      keep_pos.push_back(static_cast<int>(i));
    }
  }
  result.table.assign(
      [&] {
        long long n = 1;
        for (int c : result.cards) n *= c;
        return n;
      }(),
      0.0);
  long long cell = 0;
  for_each_assignment(cards, [&](const std::vector<int>& states) {
    long long out = 0;
    for (size_t i = 0; i < keep_pos.size(); ++i) {
      out = out * result.cards[i] + states[keep_pos[i]];
    }
    result.table[out] += table[cell++];
  });
  return result;
}

Factor Factor::reduce(const std::vector<std::pair<NodeId, int>>& evidence) const {
  std::unordered_map<std::string, int> clamp;
  for (const auto& [id, state] : evidence) clamp[id] = state;
  Factor result;
  std::vector<int> keep_pos;
  for (size_t i = 0; i < scope.size(); ++i) {
    if (!clamp.count(scope[i])) {
      result.scope.push_back(scope[i]);
      result.cards.push_back(cards[i]);
      keep_pos.push_back(static_cast<int>(i));
    }
  }
  result.table.resize([&] {
    long long n = 1;
    for (int c : result.cards) n *= c;
    return n;
  }());
  std::vector<int> full(scope.size());
  for (size_t i = 0; i < scope.size(); ++i) {
    auto it = clamp.find(scope[i]);
    if (it != clamp.end()) full[i] = it->second;
  }
  long long cell = 0;
  for_each_assignment(result.cards, [&](const std::vector<int>& states) {
    for (size_t i = 0; i < keep_pos.size(); ++i) full[keep_pos[i]] = states[i];
    result.table[cell++] = value_at(full);
  });
  return result;
}

Factor Factor::reordered(const std::vector<NodeId>& new_scope) const {
  Factor result;
  result.scope = new_scope;
  std::vector<int> src_pos;
  for (const NodeId& id : new_scope) {
    int pos = position_of(id);
    if (pos < 0) fail(ErrorKind::kUnknownNode, "'" + id + "' not in factor scope");
    result.cards.push_back(cards[pos]);
    src_pos.push_back(pos);
  }
  if (new_scope.size() != scope.size()) {
    fail(ErrorKind::kDimensionMismatch, "scope reorder must be a permutation");
  }
  result.table.resize(table.size());
  std::vector<int> src_states(scope.size());
  long long cell = 0;
  for_each_assignment(result.cards, [&](const std::vector<int>& states) {
    for (size_t i = 0; i < src_pos.size(); ++i) src_states[src_pos[i]] = states[i];
    result.table[cell++] = value_at(src_states);
  });
  return result;
}

double Factor::total() const {
  double sum = 0.0;
  for (double v : table) sum += v;
  return sum;
}

Factor Factor::normalized() const {
  double mass = total();
  if (!(mass > 0.0)) {
    fail(ErrorKind::kZeroProbabilityEvidence, "distribution has zero mass");
  }
  Factor result = *this;
  for (double& v : result.table) v /= mass;
  return result;
}

Factor Cpd::as_factor(const VariableTable& vars) const {
  Factor f;
  for (const NodeId& p : parents) {
    f.scope.push_back(p);
    f.cards.push_back(vars.at(p).cardinality());
  }
  f.scope.push_back(child);
  f.cards.push_back(vars.at(child).cardinality());
  f.table = table;  // same layout: parent configuration slow, child fast
  return f;
}

BayesNet::BayesNet(Admg graph, VariableTable variables, std::vector<Cpd> cpds)
    : graph_(std::move(graph)),
      variables_(std::move(variables)),
      cpds_(std::move(cpds)) {}

const Cpd& BayesNet::cpd(const NodeId& node) const {
  for (const Cpd& c : cpds_) {
    if (c.child == node) return c;
  }
  fail(ErrorKind::kUnknownNode, "no CPD for node '" + node + "'");
}

ValidationReport BayesNet::validate() const {
  ValidationReport report = graph_.validate();
  if (!graph_.bidirected_edges().empty()) {
    report.violation("bidirected edges are not allowed in a Bayesian network");
  }
  for (const GraphNode& node : graph_.nodes()) {
    if (!variables_.contains(node.id)) {
      report.violation("node '" + node.id + "' has no variable declaration");
      continue;
    }
    const DiscreteVariable& v = variables_.at(node.id);
    if (v.states.empty()) report.violation("variable '" + node.id + "' has no states");
    std::unordered_set<std::string> labels(v.states.begin(), v.states.end());
    if (labels.size() != v.states.size()) {
      report.violation("variable '" + node.id + "' has duplicate state labels");
    }
    const Cpd* cpd = nullptr;
    for (const Cpd& c : cpds_) {
      if (c.child == node.id) {
        if (cpd) report.violation("multiple CPDs for node '" + node.id + "'");
        cpd = &c;
      }
    }
    if (!cpd) {
      report.violation("node '" + node.id + "' has no CPD");
      continue;
    }
    if (cpd->parents != graph_.parents(node.id)) {
      report.violation("CPD parents of '" + node.id +
                       "' do not match graph parents in declaration order");
      continue;
    }
    long long rows = 1;
    for (const NodeId& p : cpd->parents) rows *= variables_.at(p).cardinality();
    long long expected = rows * v.cardinality();
    if (static_cast<long long>(cpd->table.size()) != expected) {
      report.violation("CPD table of '" + node.id + "' has wrong size");
      continue;
    }
    for (long long r = 0; r < rows; ++r) {
      double sum = 0.0;
      for (int s = 0; s < v.cardinality(); ++s) {
        double p = cpd->table[r * v.cardinality() + s];
        if (p < 0.0 || p > 1.0) {
          report.violation("CPD entry of '" + node.id + "' outside [0,1]");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        report.violation("CPD row of '" + node.id + "' does not sum to 1");
      }
    }
  }
  return report;
}

double BayesNet::joint_probability(const Assignment& assignment) const {
  std::unordered_map<std::string, int> state;
  for (const auto& [id, label] : assignment) {
    state[id] = variables_.at(id).state_index(label);
  }
  double product = 1.0;
  for (const GraphNode& node : graph_.nodes()) {
    if (!state.count(node.id)) {
      fail(ErrorKind::kIncompleteAssignment,
           "assignment is missing node '" + node.id + "'");
    }
    const Cpd& c = cpd(node.id);
    long long index = 0;
    for (const NodeId& p : c.parents) index = index * variables_.at(p).cardinality() + state[p];
    index = index * variables_.at(node.id).cardinality() + state[node.id];
    product *= c.table[index];
  }
  return product;
}

Factor BayesNet::joint_factor(const std::vector<NodeId>& query,
                              const Assignment& evidence) const {
  std::unordered_set<std::string> query_set(query.begin(), query.end());
  std::vector<std::pair<NodeId, int>> clamped;
  std::unordered_set<std::string> evidence_set;
  for (const auto& [id, label] : evidence) {
    if (query_set.count(id)) {
      fail(ErrorKind::kOverlappingSets,
           "'" + id + "' appears in both query and evidence");
    }
    clamped.emplace_back(id, variables_.at(id).state_index(label));
    evidence_set.insert(id);
  }
  for (const NodeId& q : query) graph_.index_of(q);  // throws on unknown names

  std::vector<Factor> factors;
  factors.reserve(cpds_.size());
  for (const Cpd& c : cpds_) factors.push_back(c.as_factor(variables_).reduce(clamped));

  std::vector<NodeId> order = graph_.topological_order();
  std::reverse(order.begin(), order.end());
  for (const NodeId& node : order) {
    if (query_set.count(node) || evidence_set.count(node)) continue;
    Factor combined = Factor::unit();
    std::vector<Factor> rest;
    for (Factor& f : factors) {
      if (f.position_of(node) >= 0) {
        combined = combined.product(f);
      } else {
        rest.push_back(std::move(f));
      }
    }
    rest.push_back(combined.marginalize({node}));
    factors = std::move(rest);
  }
  Factor result = Factor::unit();
  for (const Factor& f : factors) result = result.product(f);

  // Canonical scope: query variables in declaration order.
  std::vector<NodeId> scope = result.scope;
  std::sort(scope.begin(), scope.end(), [&](const NodeId& a, const NodeId& b) {
    return variables_.declaration_index(a) < variables_.declaration_index(b);
  });
  return result.reordered(scope);
}

Factor BayesNet::variable_elimination(const std::vector<NodeId>& query,
                                      const Assignment& evidence) const {
  return joint_factor(query, evidence).normalized();
}

double BayesNet::evidence_probability(const Assignment& evidence) const {
  return joint_factor({}, evidence).total();
}

}  // namespace cgt
