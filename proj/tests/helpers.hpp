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

#ifndef CGT_TESTS_HELPERS_HPP_
#define CGT_TESTS_HELPERS_HPP_

#include <map>
#include <random>
#include <string>
#include <vector>

#include "cgt/model_io.hpp"

namespace cgt_test {

inline std::string corpus_path(const std::string& name) {
  return std::string(CGT_CORPUS_DIR) + "/" + name + ".json";
}

inline cgt::ModelDocument load_corpus(const std::string& name) {
  return cgt::parse_model(cgt::read_file(corpus_path(name)));
}

// Random binary-node Bayesian network with 2..max_nodes nodes. Edges i->j for
// i<j with probability 0.4, CPD rows drawn uniformly and normalized.
inline cgt::BayesNet random_binary_bn(std::mt19937_64& rng, int max_nodes = 6) {
  std::uniform_int_distribution<int> node_count(2, max_nodes);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  std::bernoulli_distribution edge(0.4);
  int n = node_count(rng);
  cgt::Admg graph;
  cgt::VariableTable vars;
  for (int i = 0; i < n; ++i) {
    std::string name = "N" + std::to_string(i);
    graph.add_node(name);
    vars.add({name, {"0", "1"}});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (edge(rng)) graph.add_edge("N" + std::to_string(i), "N" + std::to_string(j));
    }
  }
  std::vector<cgt::Cpd> cpds;
  for (int i = 0; i < n; ++i) {
    std::string name = "N" + std::to_string(i);
    std::vector<cgt::NodeId> parents = graph.parents(name);
    long long rows = 1;
    for (size_t p = 0; p < parents.size(); ++p) rows *= 2;
    std::vector<double> table(rows * 2);
    for (long long r = 0; r < rows; ++r) {
      double a = unit(rng), b = unit(rng);
      table[r * 2] = a / (a + b);
      table[r * 2 + 1] = b / (a + b);
    }
    cpds.push_back({name, parents, table});
  }
  return cgt::BayesNet(std::move(graph), std::move(vars), std::move(cpds));
}

// Joint probability of a full assignment (states indexed by declaration
// order), computed by direct table lookups independent of the factor code.
inline double oracle_joint(const cgt::BayesNet& bn, const std::vector<int>& states) {
  double product = 1.0;
  for (const cgt::Cpd& cpd : bn.cpds()) {
    long long index = 0;
    for (const cgt::NodeId& p : cpd.parents) {
      index = index * bn.variables().at(p).cardinality() +
              states[bn.variables().declaration_index(p)];
    }
    int card = bn.variables().at(cpd.child).cardinality();
    index = index * card + states[bn.variables().declaration_index(cpd.child)];
    product *= cpd.table[index];
  }
  return product;
}

// Enumerates the full joint to produce P(query | evidence). Query variables
// are bucketed in declaration order (first varying slowest), matching the
// scope convention of variable_elimination. Returns the distribution and the
// evidence mass.
struct OracleResult {
  std::vector<double> dist;
  double mass = 0.0;
};

inline OracleResult oracle_conditional(const cgt::BayesNet& bn,
                                       const std::vector<int>& query,
                                       const std::map<int, int>& evidence) {
  int n = static_cast<int>(bn.variables().all().size());
  std::vector<int> cards;
  for (const cgt::DiscreteVariable& v : bn.variables().all()) {
    cards.push_back(v.cardinality());
  }
  long long buckets = 1;
  for (int q : query) buckets *= cards[q];
  OracleResult result;
  result.dist.assign(buckets, 0.0);
  std::vector<int> states(n, 0);
  while (true) {
    bool matches = true;
    for (const auto& [node, value] : evidence) {
      if (states[node] != value) matches = false;
    }
    if (matches) {
      double p = oracle_joint(bn, states);
      long long bucket = 0;
      for (int q : query) bucket = bucket * cards[q] + states[q];
      result.dist[bucket] += p;
      result.mass += p;
    }
    int pos = n - 1;
    while (pos >= 0 && ++states[pos] == cards[pos]) {
      states[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  if (result.mass > 0.0) {
    for (double& p : result.dist) p /= result.mass;
  }
  return result;
}

// P(targets | do(itv)) by summing the truncated product over all assignments
// consistent with the intervention; independent of the factor machinery.
inline std::vector<double> oracle_truncated(const cgt::BayesNet& bn,
                                            const std::vector<int>& targets,
                                            const std::map<int, int>& itv) {
  int n = static_cast<int>(bn.variables().all().size());
  std::vector<int> cards;
  for (const cgt::DiscreteVariable& v : bn.variables().all()) {
    cards.push_back(v.cardinality());
  }
  long long buckets = 1;
  for (int t : targets) buckets *= cards[t];
  std::vector<double> dist(buckets, 0.0);
  std::vector<int> states(n, 0);
  while (true) {
    bool matches = true;
    for (const auto& [node, value] : itv) {
      if (states[node] != value) matches = false;
    }
    if (matches) {
      double product = 1.0;
      for (const cgt::Cpd& cpd : bn.cpds()) {
        int child = bn.variables().declaration_index(cpd.child);
        if (itv.count(child)) continue;  // dropped factor
        long long index = 0;
        for (const cgt::NodeId& p : cpd.parents) {
          index = index * bn.variables().at(p).cardinality() +
                  states[bn.variables().declaration_index(p)];
        }
        index = index * cards[child] + states[child];
        product *= cpd.table[index];
      }
      long long bucket = 0;
      for (int t : targets) bucket = bucket * cards[t] + states[t];
      dist[bucket] += product;
    }
    int pos = n - 1;
    while (pos >= 0 && ++states[pos] == cards[pos]) {
      states[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return dist;
}

}  // namespace cgt_test

#endif  // CGT_TESTS_HELPERS_HPP_
