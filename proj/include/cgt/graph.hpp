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

#ifndef CGT_GRAPH_HPP_
#define CGT_GRAPH_HPP_

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cgt/error.hpp"

namespace cgt {

// Node names are the identity used throughout; declaration order is the
// canonical tie-break for every deterministic ordering in the engine.
using NodeId = std::string;

enum class NodeCategory { kChance, kDecision, kUtility };

struct NodeKind {
  NodeCategory category = NodeCategory::kChance;
  int agent = -1;  // 0-based owner for decision/utility nodes

  static NodeKind chance() { return {NodeCategory::kChance, -1}; }
  static NodeKind decision(int agent) { return {NodeCategory::kDecision, agent}; }
  static NodeKind utility(int agent) { return {NodeCategory::kUtility, agent}; }

  bool operator==(const NodeKind&) const = default;
};

struct GraphNode {
  NodeId id;
  NodeKind kind;
};

// Acyclic directed mixed graph: directed edges plus bidirected edges over a
// node set partitioned into chance/decision/utility. Bidirected edges are
// stored and validated but carry no inference semantics. Instances are cheap
// to copy and meant to be immutable once validated.
class Admg {
 public:
  Admg() = default;

  int add_node(const NodeId& id, NodeKind kind = NodeKind::chance());
  void add_edge(const NodeId& from, const NodeId& to);
  void add_bidirected(const NodeId& a, const NodeId& b);

  bool contains(const NodeId& id) const { return index_.count(id) > 0; }
  int index_of(const NodeId& id) const;  // throws kUnknownNode
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const GraphNode& node(int index) const { return nodes_[index]; }

  const std::set<std::pair<int, int>>& directed_edges() const { return directed_; }
  const std::set<std::pair<int, int>>& bidirected_edges() const { return bidirected_; }
  bool has_edge(const NodeId& from, const NodeId& to) const;

  // Graph relations over directed edges only, in declaration order.
  std::vector<NodeId> parents(const NodeId& v) const;
  std::vector<NodeId> children(const NodeId& v) const;
  std::vector<NodeId> ancestors(const NodeId& v) const;
  std::vector<NodeId> descendants(const NodeId& v) const;

  // Zero violations iff acyclic, no self-loops, non-empty unique names, and
  // bidirected edges connect distinct chance nodes. `num_agents` < 0 skips
  // the agent-range check.
  ValidationReport validate(int num_agents = -1) const;

  // Deterministic Kahn order; ties broken by declaration order.
  std::vector<NodeId> topological_order() const;  // throws kCyclicGraph

  // do-surgery on the graph: removes every directed edge into a target.
  Admg mutilate(const std::vector<NodeId>& targets) const;

  std::string to_dot() const;

 private:
  std::vector<GraphNode> nodes_;
  std::unordered_map<NodeId, int> index_;
  std::set<std::pair<int, int>> directed_;
  std::set<std::pair<int, int>> bidirected_;  // stored with first <= second
};

}  // namespace cgt

#endif  // CGT_GRAPH_HPP_
