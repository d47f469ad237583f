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

#include "cgt/graph.hpp"

#include <algorithm>
#include <sstream>

namespace cgt {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCyclicGraph: return "CyclicGraph";
    case ErrorKind::kUnknownNode: return "UnknownNode";
    case ErrorKind::kUnknownState: return "UnknownState";
    case ErrorKind::kUnknownGraph: return "UnknownGraph";
    case ErrorKind::kIncompleteAssignment: return "IncompleteAssignment";
    case ErrorKind::kIncompleteProfile: return "IncompleteProfile";
    case ErrorKind::kStateSpaceMismatch: return "StateSpaceMismatch";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kOverlappingSets: return "OverlappingSets";
    case ErrorKind::kZeroProbabilityEvidence: return "ZeroProbabilityEvidence";
    case ErrorKind::kZeroProbabilityType: return "ZeroProbabilityType";
    case ErrorKind::kEnumerationLimitExceeded: return "EnumerationLimitExceeded";
    case ErrorKind::kImperfectInformation: return "ImperfectInformation";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kUnresolvedReference: return "UnresolvedReference";
    case ErrorKind::kSchemaViolation: return "SchemaViolation";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Error";
}

int Admg::add_node(const NodeId& id, NodeKind kind) {
  if (index_.count(id) > 0) {
    fail(ErrorKind::kSchemaViolation, "duplicate node '" + id + "'");
  }
  int index = static_cast<int>(nodes_.size());
  nodes_.push_back({id, kind});
  index_[id] = index;
  return index;
}

int Admg::index_of(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    fail(ErrorKind::kUnknownNode, "node '" + id + "' not in graph");
  }
  return it->second;
}

void Admg::add_edge(const NodeId& from, const NodeId& to) {
  directed_.insert({index_of(from), index_of(to)});
}

void Admg::add_bidirected(const NodeId& a, const NodeId& b) {
  int i = index_of(a);
  int j = index_of(b);
  bidirected_.insert({std::min(i, j), std::max(i, j)});
}

bool Admg::has_edge(const NodeId& from, const NodeId& to) const {
  return directed_.count({index_of(from), index_of(to)}) > 0;
}

std::vector<NodeId> Admg::parents(const NodeId& v) const {
  int target = index_of(v);
  std::vector<NodeId> result;
  for (int i = 0; i < num_nodes(); ++i) {
    if (directed_.count({i, target})) result.push_back(nodes_[i].id);
  }
  return result;
}

std::vector<NodeId> Admg::children(const NodeId& v) const {
  int source = index_of(v);
  std::vector<NodeId> result;
  for (int i = 0; i < num_nodes(); ++i) {
    if (directed_.count({source, i})) result.push_back(nodes_[i].id);
  }
  return result;
}

namespace {

// Transitive closure in one direction; returns indices in declaration order.
std::vector<int> reach(const std::set<std::pair<int, int>>& edges, int start,
                       int n, bool forward) {
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {start};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [a, b] : edges) {
      int from = forward ? a : b;
      int to = forward ? b : a;
      if (from == v && !seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
    }
  }
  seen[start] = false;  // a node is not its own ancestor/descendant
  std::vector<int> result;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) result.push_back(i);
  }
  return result;
}

}  // namespace

std::vector<NodeId> Admg::ancestors(const NodeId& v) const {
  std::vector<NodeId> result;
  for (int i : reach(directed_, index_of(v), num_nodes(), /*forward=*/false)) {
    result.push_back(nodes_[i].id);
  }
  return result;
}

std::vector<NodeId> Admg::descendants(const NodeId& v) const {
  std::vector<NodeId> result;
  for (int i : reach(directed_, index_of(v), num_nodes(), /*forward=*/true)) {
    result.push_back(nodes_[i].id);
  }
  return result;
}

ValidationReport Admg::validate(int num_agents) const {
  ValidationReport report;
  for (const GraphNode& node : nodes_) {
    if (node.id.empty()) report.violation("empty node name");
    if (node.kind.category != NodeCategory::kChance) {
      if (node.kind.agent < 0 ||
          (num_agents >= 0 && node.kind.agent >= num_agents)) {
        report.violation("node '" + node.id + "' has invalid agent index");
      }
    }
  }
  for (const auto& [a, b] : directed_) {
    if (a == b) report.violation("self-loop on '" + nodes_[a].id + "'");
  }
  for (const auto& [a, b] : bidirected_) {
    if (a == b) {
      report.violation("self-bidirected edge on '" + nodes_[a].id + "'");
      continue;
    }
    if (nodes_[a].kind.category != NodeCategory::kChance ||
        nodes_[b].kind.category != NodeCategory::kChance) {
      report.violation("bidirected edge " + nodes_[a].id + " <-> " +
                       nodes_[b].id + " must connect chance nodes");
    }
  }
  // Cycle check over the directed part, ignoring self-loops reported above.
  try {
    topological_order();
  } catch (const Error&) {
    report.violation("directed part has a cycle");
  }
  return report;
}

std::vector<NodeId> Admg::topological_order() const {
  int n = num_nodes();
  std::vector<int> indegree(n, 0);
  for (const auto& [a, b] : directed_) {
    if (a == b) {
      fail(ErrorKind::kCyclicGraph, "self-loop on '" + nodes_[a].id + "'");
    }
    ++indegree[b];
  }
  std::vector<bool> emitted(n, false);
  std::vector<NodeId> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int next = -1;
    for (int i = 0; i < n; ++i) {
      if (!emitted[i] && indegree[i] == 0) {
        next = i;
        break;
      }
    }
    if (next < 0) {
      fail(ErrorKind::kCyclicGraph, "directed part has a cycle");
    }
    emitted[next] = true;
    order.push_back(nodes_[next].id);
    for (const auto& [a, b] : directed_) {
      if (a == next) --indegree[b];
    }
  }
  return order;
}

Admg Admg::mutilate(const std::vector<NodeId>& targets) const {
  std::set<int> cut;
  for (const NodeId& t : targets) cut.insert(index_of(t));
  Admg result;
  result.nodes_ = nodes_;
  result.index_ = index_;
  result.bidirected_ = bidirected_;
  for (const auto& edge : directed_) {
    if (!cut.count(edge.second)) result.directed_.insert(edge);
  }
  return result;
}

std::string Admg::to_dot() const {
  std::ostringstream out;
  out << "digraph G {\n";
  for (const GraphNode& node : nodes_) {
    const char* shape = "ellipse";
    if (node.kind.category == NodeCategory::kDecision) shape = "box";
    if (node.kind.category == NodeCategory::kUtility) shape = "diamond";
    out << "  \"" << node.id << "\" [shape=" << shape << "];\n";
  }
  for (const auto& [a, b] : directed_) {
    out << "  \"" << nodes_[a].id << "\" -> \"" << nodes_[b].id << "\";\n";
  }
  for (const auto& [a, b] : bidirected_) {
    out << "  \"" << nodes_[a].id << "\" -> \"" << nodes_[b].id
        << "\" [dir=both, style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace cgt
