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

#include <random>

#include "cgt/graph.hpp"
#include "doctest.h"

using namespace cgt;

namespace {

Admg deter_graph() {
  Admg g;
  g.add_node("X_C");
  g.add_node("X_D");
  g.add_node("X_A");
  g.add_edge("X_C", "X_D");
  g.add_edge("X_C", "X_A");
  g.add_edge("X_D", "X_A");
  return g;
}

Admg random_dag(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> node_count(1, 7);
  std::bernoulli_distribution edge(0.4);
  int n = node_count(rng);
  Admg g;
  for (int i = 0; i < n; ++i) g.add_node("N" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (edge(rng)) g.add_edge("N" + std::to_string(i), "N" + std::to_string(j));
    }
  }
  return g;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("chain graph validates") {
  CHECK(deter_graph().validate().ok());
}

TEST_CASE("two-cycle is a violation") {
  Admg g;
  g.add_node("A");
  g.add_node("B");
  g.add_edge("A", "B");
  g.add_edge("B", "A");
  CHECK_FALSE(g.validate().ok());
  CHECK_THROWS_AS(g.topological_order(), Error);
}

TEST_CASE("a directed self-loop is a cycle") {
  Admg g;
  g.add_node("A");
  g.add_edge("A", "A");
  CHECK_FALSE(g.validate().ok());
  CHECK_THROWS_AS(g.topological_order(), Error);
}

TEST_CASE("self-bidirected edge is a violation") {
  Admg g;
  g.add_node("A");
  g.add_bidirected("A", "A");
  CHECK_FALSE(g.validate().ok());
}

TEST_CASE("bidirected edges must connect chance nodes") {
  Admg g;
  g.add_node("A");
  g.add_node("D", NodeKind::decision(0));
  g.add_bidirected("A", "D");
  CHECK_FALSE(g.validate().ok());
}

TEST_CASE("topological order of the chain") {
  CHECK(deter_graph().topological_order() ==
        std::vector<NodeId>{"X_C", "X_D", "X_A"});
}

TEST_CASE("empty graph has empty order") {
  CHECK(Admg().topological_order().empty());
}

TEST_CASE("isolated nodes keep declaration order") {
  Admg g;
  g.add_node("B");
  g.add_node("A");
  CHECK(g.topological_order() == std::vector<NodeId>{"B", "A"});
}

TEST_CASE("parents children ancestors descendants") {
  Admg g = deter_graph();
  CHECK(g.parents("X_A") == std::vector<NodeId>{"X_C", "X_D"});
  CHECK(g.parents("X_C").empty());
  CHECK(g.children("X_C") == std::vector<NodeId>{"X_D", "X_A"});
  CHECK(g.descendants("X_C") == std::vector<NodeId>{"X_D", "X_A"});
  CHECK(g.ancestors("X_A") == std::vector<NodeId>{"X_C", "X_D"});
  CHECK_THROWS_AS(g.parents("nope"), Error);
}

TEST_CASE("mutilate removes only incoming edges of targets") {
  Admg g = deter_graph();
  Admg cut = g.mutilate({"X_D"});
  CHECK_FALSE(cut.has_edge("X_C", "X_D"));
  CHECK(cut.has_edge("X_C", "X_A"));
  CHECK(cut.has_edge("X_D", "X_A"));
  CHECK_THROWS_AS(g.mutilate({"nope"}), Error);
}

TEST_CASE("mutilating nothing or a root changes nothing") {
  Admg g = deter_graph();
  CHECK(g.mutilate({}).directed_edges() == g.directed_edges());
  CHECK(g.mutilate({"X_C"}).directed_edges() == g.directed_edges());
}

TEST_CASE("mutilate is idempotent and preserves acyclicity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Admg g = random_dag(rng);
    std::vector<NodeId> targets;
    for (const GraphNode& node : g.nodes()) {
      if (node.id.size() % 2 == 0) targets.push_back(node.id);
    }
    Admg once = g.mutilate(targets);
    Admg twice = once.mutilate(targets);
    CHECK(once.directed_edges() == twice.directed_edges());
    CHECK(once.validate().ok());
  }
}

TEST_CASE("ancestor-descendant duality") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Admg g = random_dag(rng);
    for (const GraphNode& u : g.nodes()) {
      for (const NodeId& v : g.descendants(u.id)) {
        std::vector<NodeId> up = g.ancestors(v);
        CHECK(std::find(up.begin(), up.end(), u.id) != up.end());
      }
    }
  }
}

TEST_CASE("topological order is a permutation respecting edges") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    Admg g = random_dag(rng);
    std::vector<NodeId> order = g.topological_order();
    CHECK(order.size() == static_cast<size_t>(g.num_nodes()));
    auto position = [&](const NodeId& id) {
      return std::find(order.begin(), order.end(), id) - order.begin();
    };
    for (const auto& [a, b] : g.directed_edges()) {
      CHECK(position(g.node(a).id) < position(g.node(b).id));
    }
  }
}

TEST_CASE("dot export shapes and edge styles") {
  Admg g;
  g.add_node("X", NodeKind::chance());
  g.add_node("D", NodeKind::decision(0));
  g.add_node("U", NodeKind::utility(0));
  g.add_node("Y", NodeKind::chance());
  g.add_edge("D", "U");
  g.add_bidirected("X", "Y");
  std::string dot = g.to_dot();
  CHECK(dot.find("\"X\" [shape=ellipse];") != std::string::npos);
  CHECK(dot.find("\"D\" [shape=box];") != std::string::npos);
  CHECK(dot.find("\"U\" [shape=diamond];") != std::string::npos);
  CHECK(dot.find("\"D\" -> \"U\";") != std::string::npos);
  CHECK(dot.find("\"X\" -> \"Y\" [dir=both, style=dashed];") != std::string::npos);
}

}  // TEST_SUITE
