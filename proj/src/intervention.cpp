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

#include "cgt/intervention.hpp"

#include <algorithm>
#include <unordered_set>

namespace cgt {

namespace {

void check_disjoint(const std::vector<NodeId>& targets, const Intervention& itv) {
  std::unordered_set<std::string> keys;
  for (const auto& [id, state] : itv.assignments) {
    if (!keys.insert(id).second) {
      fail(ErrorKind::kOverlappingSets, "node '" + id + "' intervened twice");
    }
  }
  for (const NodeId& t : targets) {
    if (keys.count(t)) {
      fail(ErrorKind::kOverlappingSets,
           "'" + t + "' appears in both targets and intervention");
    }
  }
}

}  // namespace

Factor truncated_query(const BayesNet& bn, const std::vector<NodeId>& targets,
                       const Intervention& itv) {
  check_disjoint(targets, itv);
  std::vector<std::pair<NodeId, int>> clamped;
  std::unordered_set<std::string> intervened;
  for (const auto& [id, label] : itv.assignments) {
    clamped.emplace_back(id, bn.variables().at(id).state_index(label));
    intervened.insert(id);
    bn.graph().index_of(id);
  }
  std::unordered_set<std::string> target_set;
  for (const NodeId& t : targets) {
    bn.graph().index_of(t);
    target_set.insert(t);
  }

  // Drop the intervened nodes' factors, clamp their values everywhere else.
  std::vector<Factor> factors;
  for (const Cpd& c : bn.cpds()) {
    if (intervened.count(c.child)) continue;
    factors.push_back(c.as_factor(bn.variables()).reduce(clamped));
  }

  // Sum out every remaining non-target node, deepest first.
  std::vector<NodeId> order = bn.graph().topological_order();
  std::reverse(order.begin(), order.end());
  for (const NodeId& node : order) {
    if (target_set.count(node) || intervened.count(node)) continue;
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

  std::vector<NodeId> scope = result.scope;
  std::sort(scope.begin(), scope.end(), [&](const NodeId& a, const NodeId& b) {
    return bn.variables().declaration_index(a) < bn.variables().declaration_index(b);
  });
  return result.reordered(scope);
}

BayesNet apply_surgery(const BayesNet& bn, const Intervention& itv) {
  std::vector<NodeId> cut;
  std::unordered_set<std::string> intervened;
  for (const auto& [id, state] : itv.assignments) {
    cut.push_back(id);
    intervened.insert(id);
  }
  Admg mutilated = bn.graph().mutilate(cut);
  std::vector<Cpd> cpds;
  cpds.reserve(bn.cpds().size());
  for (const Cpd& c : bn.cpds()) {
    if (!intervened.count(c.child)) {
      cpds.push_back(c);
      continue;
    }
    const DiscreteVariable& v = bn.variables().at(c.child);
    std::string label;
    for (const auto& [id, state] : itv.assignments) {
      if (id == c.child) label = state;
    }
    std::vector<double> point(v.cardinality(), 0.0);
    point[v.state_index(label)] = 1.0;
    cpds.push_back(Cpd{c.child, {}, std::move(point)});
  }
  return BayesNet(std::move(mutilated), bn.variables(), std::move(cpds));
}

Factor surgery_query(const BayesNet& bn, const std::vector<NodeId>& targets,
                     const Intervention& itv, const Assignment& evidence) {
  check_disjoint(targets, itv);
  for (const auto& [id, state] : evidence) {
    (void)state;
    for (const auto& [k, v] : itv.assignments) {
      (void)v;
      if (id == k) {
        fail(ErrorKind::kOverlappingSets,
             "'" + id + "' appears in both evidence and intervention");
      }
    }
  }
  return apply_surgery(bn, itv).variable_elimination(targets, evidence);
}

Factor surgery_query(const BayesNet& bn, const std::vector<NodeId>& targets,
                     const Intervention& itv) {
  return surgery_query(bn, targets, itv, {});
}

}  // namespace cgt
