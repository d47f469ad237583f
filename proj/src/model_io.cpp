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

#include "cgt/model_io.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace cgt {

using Json = nlohmann::ordered_json;

const char* model_type_name(ModelType type) {
  switch (type) {
    case ModelType::kBn: return "bn";
    case ModelType::kNfg: return "nfg";
    case ModelType::kEfg: return "efg";
    case ModelType::kBayesianGame: return "bayesian_game";
    case ModelType::kMaid: return "maid";
    case ModelType::kCbg: return "cbg";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Schema helpers
// ---------------------------------------------------------------------------

const Json& require(const Json& j, const std::string& ctx, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    fail(ErrorKind::kSchemaViolation, ctx + ": missing field '" + field + "'");
  }
  return j.at(field);
}

std::string require_string(const Json& j, const std::string& ctx,
                           const char* field) {
  const Json& v = require(j, ctx, field);
  if (!v.is_string()) {
    fail(ErrorKind::kSchemaViolation, ctx + ": '" + field + "' must be a string");
  }
  return v.get<std::string>();
}

const Json& require_array(const Json& j, const std::string& ctx,
                          const char* field) {
  const Json& v = require(j, ctx, field);
  if (!v.is_array()) {
    fail(ErrorKind::kSchemaViolation, ctx + ": '" + field + "' must be an array");
  }
  return v;
}

double as_number(const Json& v, const std::string& ctx) {
  if (!v.is_number()) {
    fail(ErrorKind::kSchemaViolation, ctx + ": expected a number");
  }
  return v.get<double>();
}

int require_agent(const Json& j, const std::string& ctx, int num_agents) {
  const Json& v = require(j, ctx, "agent");
  if (!v.is_number_integer()) {
    fail(ErrorKind::kSchemaViolation, ctx + ": 'agent' must be an integer");
  }
  int agent = v.get<int>();
  if (agent < 1 || agent > num_agents) {
    fail(ErrorKind::kUnresolvedReference,
         ctx + ": agent index " + std::to_string(agent) + " is out of range");
  }
  return agent - 1;  // files are 1-based
}

std::vector<std::string> string_list(const Json& v, const std::string& ctx) {
  if (!v.is_array()) {
    fail(ErrorKind::kSchemaViolation, ctx + ": expected an array of strings");
  }
  std::vector<std::string> result;
  for (const Json& item : v) {
    if (!item.is_string()) {
      fail(ErrorKind::kSchemaViolation, ctx + ": expected an array of strings");
    }
    result.push_back(item.get<std::string>());
  }
  return result;
}

std::vector<double> number_list(const Json& v, const std::string& ctx) {
  if (!v.is_array()) {
    fail(ErrorKind::kSchemaViolation, ctx + ": expected an array of numbers");
  }
  std::vector<double> result;
  for (const Json& item : v) result.push_back(as_number(item, ctx));
  return result;
}

// Mixed-radix row index of a labelled configuration, first variable slowest.
long long context_index(const std::vector<NodeId>& parents,
                        const VariableTable& vars,
                        const std::vector<std::string>& labels,
                        const std::string& ctx) {
  if (labels.size() != parents.size()) {
    fail(ErrorKind::kSchemaViolation,
         ctx + ": 'given' must list one state per parent");
  }
  long long index = 0;
  for (size_t i = 0; i < parents.size(); ++i) {
    const DiscreteVariable& var = vars.at(parents[i]);
    int state = -1;
    for (int s = 0; s < var.cardinality(); ++s) {
      if (var.states[s] == labels[i]) state = s;
    }
    if (state < 0) {
      fail(ErrorKind::kUnresolvedReference,
           ctx + ": unknown state '" + labels[i] + "' of '" + parents[i] + "'");
    }
    index = index * var.cardinality() + state;
  }
  return index;
}

std::vector<std::string> context_labels(const std::vector<NodeId>& parents,
                                        const VariableTable& vars,
                                        long long index) {
  std::vector<std::string> labels(parents.size());
  for (int i = static_cast<int>(parents.size()) - 1; i >= 0; --i) {
    const DiscreteVariable& var = vars.at(parents[i]);
    labels[i] = var.states[index % var.cardinality()];
    index /= var.cardinality();
  }
  return labels;
}

// Parses [{"given": [...], "dist": {state: p, ...}}, ...] into the flat
// canonical CPD layout; every context must appear exactly once.
std::vector<double> parse_rows(const Json& rows, const NodeId& child,
                               const std::vector<NodeId>& parents,
                               const VariableTable& vars,
                               const std::string& ctx) {
  const DiscreteVariable& var = vars.at(child);
  long long contexts = 1;
  for (const NodeId& p : parents) contexts *= vars.at(p).cardinality();
  std::vector<double> table(contexts * var.cardinality(), 0.0);
  std::vector<bool> seen(contexts, false);
  if (!rows.is_array()) {
    fail(ErrorKind::kSchemaViolation, ctx + ": 'rows' must be an array");
  }
  for (const Json& row : rows) {
    long long index =
        context_index(parents, vars, string_list(require(row, ctx, "given"), ctx), ctx);
    if (seen[index]) fail(ErrorKind::kSchemaViolation, ctx + ": duplicate row");
    seen[index] = true;
    const Json& dist = require(row, ctx, "dist");
    if (!dist.is_object() ||
        dist.size() != static_cast<size_t>(var.cardinality())) {
      fail(ErrorKind::kSchemaViolation,
           ctx + ": 'dist' must list every state of '" + child + "'");
    }
    for (const auto& [label, p] : dist.items()) {
      int state = -1;
      for (int s = 0; s < var.cardinality(); ++s) {
        if (var.states[s] == label) state = s;
      }
      if (state < 0) {
        fail(ErrorKind::kUnresolvedReference,
             ctx + ": unknown state '" + label + "' of '" + child + "'");
      }
      table[index * var.cardinality() + state] = as_number(p, ctx);
    }
  }
  for (long long c = 0; c < contexts; ++c) {
    if (!seen[c]) fail(ErrorKind::kSchemaViolation, ctx + ": missing row");
  }
  return table;
}

Json rows_to_json(const NodeId& child, const std::vector<NodeId>& parents,
                  const VariableTable& vars, const std::vector<double>& table) {
  const DiscreteVariable& var = vars.at(child);
  long long contexts = 1;
  for (const NodeId& p : parents) contexts *= vars.at(p).cardinality();
  Json rows = Json::array();
  for (long long c = 0; c < contexts; ++c) {
    Json row;
    row["given"] = context_labels(parents, vars, c);
    Json dist;
    for (int s = 0; s < var.cardinality(); ++s) {
      dist[var.states[s]] = table[c * var.cardinality() + s];
    }
    row["dist"] = std::move(dist);
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Bayesian networks
// ---------------------------------------------------------------------------

VariableTable parse_variables(const Json& j, const std::string& ctx) {
  VariableTable vars;
  for (const Json& v : require_array(j, ctx, "variables")) {
    DiscreteVariable var;
    var.id = require_string(v, ctx + "/variables", "name");
    var.states = string_list(require(v, ctx + "/variables", "states"), ctx);
    if (var.states.empty()) {
      fail(ErrorKind::kSchemaViolation,
           ctx + ": variable '" + var.id + "' needs at least one state");
    }
    vars.add(std::move(var));
  }
  return vars;
}

void parse_edges(const Json& j, Admg* graph, const std::string& ctx) {
  if (j.contains("edges")) {
    for (const Json& e : j.at("edges")) {
      std::vector<std::string> pair = string_list(e, ctx + "/edges");
      if (pair.size() != 2) {
        fail(ErrorKind::kSchemaViolation, ctx + ": edges must be [from, to] pairs");
      }
      if (!graph->contains(pair[0]) || !graph->contains(pair[1])) {
        fail(ErrorKind::kUnresolvedReference,
             ctx + ": edge references unknown node");
      }
      graph->add_edge(pair[0], pair[1]);
    }
  }
  if (j.contains("bidirected")) {
    for (const Json& e : j.at("bidirected")) {
      std::vector<std::string> pair = string_list(e, ctx + "/bidirected");
      if (pair.size() != 2 || !graph->contains(pair[0]) ||
          !graph->contains(pair[1])) {
        fail(ErrorKind::kUnresolvedReference,
             ctx + ": bidirected edge references unknown node");
      }
      graph->add_bidirected(pair[0], pair[1]);
    }
  }
}

std::vector<NodeId> parse_parent_list(const Json& spec, const Admg& graph,
                                      const std::string& ctx) {
  std::vector<NodeId> parents;
  for (const std::string& p : string_list(require(spec, ctx, "parents"), ctx)) {
    if (!graph.contains(p)) {
      fail(ErrorKind::kUnresolvedReference, ctx + ": unknown parent '" + p + "'");
    }
    parents.push_back(p);
  }
  return parents;
}

BayesNet parse_bn(const Json& j) {
  const std::string ctx = "bn";
  VariableTable vars = parse_variables(j, ctx);
  Admg graph;
  for (const DiscreteVariable& v : vars.all()) graph.add_node(v.id);
  parse_edges(j, &graph, ctx);
  std::vector<Cpd> cpds;
  for (const Json& spec : require_array(j, ctx, "cpds")) {
    Cpd cpd;
    cpd.child = require_string(spec, ctx + "/cpds", "child");
    if (!graph.contains(cpd.child)) {
      fail(ErrorKind::kUnresolvedReference,
           ctx + ": CPD for unknown node '" + cpd.child + "'");
    }
    cpd.parents = parse_parent_list(spec, graph, ctx + "/cpds");
    cpd.table = parse_rows(require(spec, ctx + "/cpds", "rows"), cpd.child,
                           cpd.parents, vars, ctx + "/cpds/" + cpd.child);
    cpds.push_back(std::move(cpd));
  }
  return BayesNet(std::move(graph), std::move(vars), std::move(cpds));
}

Json edges_to_json(const Admg& graph) {
  Json edges = Json::array();
  for (const auto& [a, b] : graph.directed_edges()) {
    edges.push_back(Json::array({graph.node(a).id, graph.node(b).id}));
  }
  return edges;
}

Json bn_to_json(const BayesNet& bn) {
  Json j;
  Json variables = Json::array();
  for (const DiscreteVariable& v : bn.variables().all()) {
    variables.push_back({{"name", v.id}, {"states", v.states}});
  }
  j["variables"] = std::move(variables);
  j["edges"] = edges_to_json(bn.graph());
  if (!bn.graph().bidirected_edges().empty()) {
    Json edges = Json::array();
    for (const auto& [a, b] : bn.graph().bidirected_edges()) {
      edges.push_back(Json::array({bn.graph().node(a).id, bn.graph().node(b).id}));
    }
    j["bidirected"] = std::move(edges);
  }
  Json cpds = Json::array();
  for (const GraphNode& node : bn.graph().nodes()) {
    const Cpd& cpd = bn.cpd(node.id);
    cpds.push_back({{"child", cpd.child},
                    {"parents", cpd.parents},
                    {"rows", rows_to_json(cpd.child, cpd.parents, bn.variables(),
                                          cpd.table)}});
  }
  j["cpds"] = std::move(cpds);
  return j;
}

// ---------------------------------------------------------------------------
// Normal-form games
// ---------------------------------------------------------------------------

std::vector<std::string> parse_agents(const Json& j, const std::string& ctx) {
  std::vector<std::string> agents = string_list(require(j, ctx, "agents"), ctx);
  if (agents.empty()) fail(ErrorKind::kSchemaViolation, ctx + ": no agents");
  return agents;
}

// Resolves an array of action labels (one per agent) to indices.
std::vector<int> resolve_profile(const std::vector<std::vector<std::string>>& actions,
                                 const std::vector<std::string>& labels,
                                 const std::string& ctx) {
  if (labels.size() != actions.size()) {
    fail(ErrorKind::kSchemaViolation, ctx + ": profile must list one action per agent");
  }
  std::vector<int> profile(actions.size());
  for (size_t i = 0; i < actions.size(); ++i) {
    int index = -1;
    for (int a = 0; a < static_cast<int>(actions[i].size()); ++a) {
      if (actions[i][a] == labels[i]) index = a;
    }
    if (index < 0) {
      fail(ErrorKind::kUnresolvedReference,
           ctx + ": unknown action '" + labels[i] + "'");
    }
    profile[i] = index;
  }
  return profile;
}

NormalFormGame parse_nfg(const Json& j) {
  const std::string ctx = "nfg";
  NormalFormGame game;
  game.agents = parse_agents(j, ctx);
  for (const Json& a : require_array(j, ctx, "actions")) {
    game.actions.push_back(string_list(a, ctx + "/actions"));
  }
  if (game.actions.size() != game.agents.size()) {
    fail(ErrorKind::kSchemaViolation, ctx + ": one action list per agent required");
  }
  game.payoffs.assign(game.agents.size(),
                      std::vector<double>(game.num_profiles(), 0.0));
  std::vector<bool> seen(game.num_profiles(), false);
  for (const Json& cell : require_array(j, ctx, "payoffs")) {
    std::vector<int> profile = resolve_profile(
        game.actions, string_list(require(cell, ctx, "profile"), ctx), ctx);
    std::uint64_t index = game.flat_index(profile);
    if (seen[index]) fail(ErrorKind::kSchemaViolation, ctx + ": duplicate payoff cell");
    seen[index] = true;
    std::vector<double> values = number_list(require(cell, ctx, "values"), ctx);
    if (values.size() != game.agents.size()) {
      fail(ErrorKind::kSchemaViolation, ctx + ": one payoff per agent required");
    }
    for (size_t i = 0; i < values.size(); ++i) game.payoffs[i][index] = values[i];
  }
  for (bool s : seen) {
    if (!s) fail(ErrorKind::kSchemaViolation, ctx + ": missing payoff cell");
  }
  return game;
}

Json nfg_to_json(const NormalFormGame& game) {
  Json j;
  j["agents"] = game.agents;
  j["actions"] = game.actions;
  Json payoffs = Json::array();
  std::vector<int> profile(game.num_agents(), 0);
  while (true) {
    Json cell;
    Json labels = Json::array();
    for (int i = 0; i < game.num_agents(); ++i) {
      labels.push_back(game.actions[i][profile[i]]);
    }
    cell["profile"] = std::move(labels);
    Json values = Json::array();
    for (int i = 0; i < game.num_agents(); ++i) {
      values.push_back(game.payoff(i, profile));
    }
    cell["values"] = std::move(values);
    payoffs.push_back(std::move(cell));
    int pos = game.num_agents() - 1;
    while (pos >= 0 &&
           ++profile[pos] == static_cast<int>(game.actions[pos].size())) {
      profile[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  j["payoffs"] = std::move(payoffs);
  return j;
}

// ---------------------------------------------------------------------------
// Extensive-form games
// ---------------------------------------------------------------------------

GameTree parse_efg(const Json& j) {
  const std::string ctx = "efg";
  GameTree tree(parse_agents(j, ctx));
  int num_agents = tree.num_agents();

  // First pass assigns document-order indices; children are resolved to the
  // indices their subtrees received.
  struct Temp {
    const Json* node;
    std::vector<int> children;
  };
  std::vector<Temp> temp;
  std::unordered_set<std::string> names;
  std::function<int(const Json&)> walk = [&](const Json& node) -> int {
    int index = static_cast<int>(temp.size());
    temp.push_back({&node, {}});
    std::string name = require_string(node, ctx + "/node", "name");
    if (!names.insert(name).second) {
      fail(ErrorKind::kSchemaViolation, ctx + ": duplicate node name '" + name + "'");
    }
    if (node.contains("children")) {
      std::vector<int> children;
      for (const Json& child : node.at("children")) {
        children.push_back(walk(child));
      }
      temp[index].children = std::move(children);
    }
    return index;
  };
  walk(require(j, ctx, "root"));

  for (const Temp& t : temp) {
    const Json& node = *t.node;
    std::string name = node.at("name").get<std::string>();
    std::string where = ctx + "/node/" + name;
    if (node.contains("utilities")) {
      std::vector<double> utilities = number_list(node.at("utilities"), where);
      if (static_cast<int>(utilities.size()) != num_agents) {
        fail(ErrorKind::kSchemaViolation, where + ": one utility per agent required");
      }
      tree.add_terminal(name, std::move(utilities));
    } else if (node.contains("probs")) {
      std::vector<std::string> outcomes =
          string_list(require(node, where, "outcomes"), where);
      std::vector<double> probs = number_list(node.at("probs"), where);
      if (outcomes.size() != probs.size() || outcomes.size() != t.children.size()) {
        fail(ErrorKind::kSchemaViolation,
             where + ": outcomes, probs and children must align");
      }
      tree.add_chance(name, std::move(outcomes), std::move(probs), t.children);
    } else if (node.contains("agent")) {
      int agent = require_agent(node, where, num_agents);
      std::vector<std::string> actions =
          string_list(require(node, where, "actions"), where);
      if (actions.size() != t.children.size()) {
        fail(ErrorKind::kSchemaViolation, where + ": one child per action required");
      }
      tree.add_decision(name, agent, std::move(actions), t.children);
    } else {
      fail(ErrorKind::kSchemaViolation,
           where + ": node needs 'utilities', 'probs' or 'agent'");
    }
  }
  if (j.contains("information_sets")) {
    for (const Json& set : j.at("information_sets")) {
      std::string name = require_string(set, ctx + "/information_sets", "name");
      std::vector<std::string> members =
          string_list(require(set, ctx + "/information_sets", "members"), ctx);
      for (const std::string& member : members) {
        if (!names.count(member)) {
          fail(ErrorKind::kUnresolvedReference,
               ctx + ": information set '" + name + "' references unknown node '" +
                   member + "'");
        }
      }
      tree.add_information_set(name, members);
    }
  }
  tree.finalize();
  return tree;
}

Json efg_node_to_json(const GameTree& tree, int index) {
  const TreeNode& node = tree.nodes()[index];
  Json j;
  j["name"] = node.id;
  switch (node.kind) {
    case TreeNode::Kind::kTerminal:
      j["utilities"] = node.utilities;
      break;
    case TreeNode::Kind::kChance: {
      j["outcomes"] = node.labels;
      j["probs"] = node.chance_probs;
      Json children = Json::array();
      for (int child : node.children) {
        children.push_back(efg_node_to_json(tree, child));
      }
      j["children"] = std::move(children);
      break;
    }
    case TreeNode::Kind::kDecision: {
      j["agent"] = node.agent + 1;
      j["actions"] = node.labels;
      Json children = Json::array();
      for (int child : node.children) {
        children.push_back(efg_node_to_json(tree, child));
      }
      j["children"] = std::move(children);
      break;
    }
  }
  return j;
}

Json efg_to_json(const GameTree& tree) {
  Json j;
  j["agents"] = tree.agents();
  j["root"] = efg_node_to_json(tree, tree.root());
  Json sets = Json::array();
  for (const InformationSet& set : tree.information_sets()) {
    if (set.members.size() < 2) continue;  // singletons are implicit
    Json members = Json::array();
    for (int member : set.members) members.push_back(tree.nodes()[member].id);
    sets.push_back({{"name", set.id}, {"members", std::move(members)}});
  }
  if (!sets.empty()) j["information_sets"] = std::move(sets);
  return j;
}

// ---------------------------------------------------------------------------
// Bayesian games
// ---------------------------------------------------------------------------

std::vector<int> resolve_types(const BayesianGame& game,
                               const std::vector<std::string>& labels,
                               const std::string& ctx) {
  if (labels.size() != game.types.size()) {
    fail(ErrorKind::kSchemaViolation, ctx + ": one type per agent required");
  }
  std::vector<int> profile(game.types.size());
  for (size_t i = 0; i < game.types.size(); ++i) {
    int index = -1;
    for (int t = 0; t < static_cast<int>(game.types[i].size()); ++t) {
      if (game.types[i][t] == labels[i]) index = t;
    }
    if (index < 0) {
      fail(ErrorKind::kUnresolvedReference, ctx + ": unknown type '" + labels[i] + "'");
    }
    profile[i] = index;
  }
  return profile;
}

BayesianGame parse_bayesian(const Json& j) {
  const std::string ctx = "bayesian_game";
  BayesianGame game;
  game.agents = parse_agents(j, ctx);
  for (const Json& a : require_array(j, ctx, "actions")) {
    game.actions.push_back(string_list(a, ctx + "/actions"));
  }
  for (const Json& t : require_array(j, ctx, "types")) {
    game.types.push_back(string_list(t, ctx + "/types"));
  }
  if (game.actions.size() != game.agents.size() ||
      game.types.size() != game.agents.size()) {
    fail(ErrorKind::kSchemaViolation,
         ctx + ": one action list and one type list per agent required");
  }
  game.prior.assign(game.num_type_profiles(), 0.0);
  std::vector<bool> seen(game.num_type_profiles(), false);
  for (const Json& cell : require_array(j, ctx, "prior")) {
    std::vector<int> types = resolve_types(
        game, string_list(require(cell, ctx + "/prior", "types"), ctx), ctx + "/prior");
    std::uint64_t index = game.type_flat_index(types);
    if (seen[index]) fail(ErrorKind::kSchemaViolation, ctx + ": duplicate prior cell");
    seen[index] = true;
    game.prior[index] = as_number(require(cell, ctx + "/prior", "p"), ctx + "/prior");
  }
  for (bool s : seen) {
    if (!s) fail(ErrorKind::kSchemaViolation, ctx + ": missing prior cell");
  }
  std::uint64_t cells = game.num_type_profiles() * game.num_action_profiles();
  game.payoffs.assign(game.agents.size(), std::vector<double>(cells, 0.0));
  std::vector<bool> seen_payoff(cells, false);
  for (const Json& cell : require_array(j, ctx, "payoffs")) {
    const std::string where = ctx + "/payoffs";
    std::vector<int> types =
        resolve_types(game, string_list(require(cell, where, "types"), where), where);
    std::vector<int> profile = resolve_profile(
        game.actions, string_list(require(cell, where, "profile"), where), where);
    std::uint64_t index =
        game.type_flat_index(types) * game.num_action_profiles() +
        game.action_flat_index(profile);
    if (seen_payoff[index]) {
      fail(ErrorKind::kSchemaViolation, ctx + ": duplicate payoff cell");
    }
    seen_payoff[index] = true;
    std::vector<double> values = number_list(require(cell, where, "values"), where);
    if (values.size() != game.agents.size()) {
      fail(ErrorKind::kSchemaViolation, ctx + ": one payoff per agent required");
    }
    for (size_t i = 0; i < values.size(); ++i) game.payoffs[i][index] = values[i];
  }
  for (bool s : seen_payoff) {
    if (!s) fail(ErrorKind::kSchemaViolation, ctx + ": missing payoff cell");
  }
  return game;
}

Json bayesian_to_json(const BayesianGame& game) {
  Json j;
  j["agents"] = game.agents;
  j["actions"] = game.actions;
  j["types"] = game.types;
  Json prior = Json::array();
  std::vector<int> sizes;
  for (const auto& t : game.types) sizes.push_back(static_cast<int>(t.size()));
  for_each_assignment(sizes, [&](const std::vector<int>& types) {
    Json labels = Json::array();
    for (int i = 0; i < game.num_agents(); ++i) {
      labels.push_back(game.types[i][types[i]]);
    }
    prior.push_back(
        {{"types", std::move(labels)}, {"p", game.prior[game.type_flat_index(types)]}});
  });
  j["prior"] = std::move(prior);
  Json payoffs = Json::array();
  std::vector<int> action_sizes;
  for (const auto& a : game.actions) {
    action_sizes.push_back(static_cast<int>(a.size()));
  }
  for_each_assignment(sizes, [&](const std::vector<int>& types) {
    for_each_assignment(action_sizes, [&](const std::vector<int>& profile) {
      Json cell;
      Json tlabels = Json::array();
      Json alabels = Json::array();
      Json values = Json::array();
      for (int i = 0; i < game.num_agents(); ++i) {
        tlabels.push_back(game.types[i][types[i]]);
        alabels.push_back(game.actions[i][profile[i]]);
        values.push_back(game.payoff(i, types, profile));
      }
      cell["types"] = std::move(tlabels);
      cell["profile"] = std::move(alabels);
      cell["values"] = std::move(values);
      payoffs.push_back(std::move(cell));
    });
  });
  j["payoffs"] = std::move(payoffs);
  return j;
}

// ---------------------------------------------------------------------------
// Multi-agent influence diagrams
// ---------------------------------------------------------------------------

Maid parse_maid_body(const Json& j, std::vector<std::string> agents,
                     const std::string& ctx) {
  Maid maid;
  maid.agents = std::move(agents);
  for (const Json& spec : require_array(j, ctx, "nodes")) {
    std::string name = require_string(spec, ctx + "/nodes", "name");
    std::string where = ctx + "/nodes/" + name;
    std::string kind = require_string(spec, where, "kind");
    if (kind == "chance") {
      maid.graph.add_node(name, NodeKind::chance());
      maid.variables.add(
          {name, string_list(require(spec, where, "states"), where)});
    } else if (kind == "decision") {
      int agent = require_agent(spec, where, maid.num_agents());
      maid.graph.add_node(name, NodeKind::decision(agent));
      maid.variables.add(
          {name, string_list(require(spec, where, "actions"), where)});
    } else if (kind == "utility") {
      int agent = require_agent(spec, where, maid.num_agents());
      maid.graph.add_node(name, NodeKind::utility(agent));
    } else {
      fail(ErrorKind::kSchemaViolation, where + ": unknown kind '" + kind + "'");
    }
  }
  parse_edges(j, &maid.graph, ctx);
  if (j.contains("cpds")) {
    for (const Json& spec : j.at("cpds")) {
      Cpd cpd;
      cpd.child = require_string(spec, ctx + "/cpds", "child");
      if (!maid.graph.contains(cpd.child)) {
        fail(ErrorKind::kUnresolvedReference,
             ctx + ": CPD for unknown node '" + cpd.child + "'");
      }
      cpd.parents = parse_parent_list(spec, maid.graph, ctx + "/cpds");
      cpd.table = parse_rows(require(spec, ctx + "/cpds", "rows"), cpd.child,
                             cpd.parents, maid.variables,
                             ctx + "/cpds/" + cpd.child);
      maid.chance_cpds.push_back(std::move(cpd));
    }
  }
  for (const Json& spec : require_array(j, ctx, "utilities")) {
    UtilityNode u;
    u.id = require_string(spec, ctx + "/utilities", "node");
    if (!maid.graph.contains(u.id)) {
      fail(ErrorKind::kUnresolvedReference,
           ctx + ": utility table for unknown node '" + u.id + "'");
    }
    u.agent = maid.graph.node(maid.graph.index_of(u.id)).kind.agent;
    u.parents = parse_parent_list(spec, maid.graph, ctx + "/utilities");
    long long contexts = 1;
    for (const NodeId& p : u.parents) {
      contexts *= maid.variables.at(p).cardinality();
    }
    u.table.assign(contexts, 0.0);
    std::vector<bool> seen(contexts, false);
    for (const Json& row : require_array(spec, ctx + "/utilities", "rows")) {
      const std::string where = ctx + "/utilities/" + u.id;
      long long index = context_index(
          u.parents, maid.variables,
          string_list(require(row, where, "given"), where), where);
      if (seen[index]) fail(ErrorKind::kSchemaViolation, where + ": duplicate row");
      seen[index] = true;
      u.table[index] = as_number(require(row, where, "value"), where);
    }
    for (long long c = 0; c < contexts; ++c) {
      if (!seen[c]) {
        fail(ErrorKind::kSchemaViolation,
             ctx + "/utilities/" + u.id + ": missing row");
      }
    }
    maid.utilities.push_back(std::move(u));
  }
  return maid;
}

Json maid_body_to_json(const Maid& maid) {
  Json j;
  Json nodes = Json::array();
  for (const GraphNode& node : maid.graph.nodes()) {
    Json spec;
    spec["name"] = node.id;
    switch (node.kind.category) {
      case NodeCategory::kChance:
        spec["kind"] = "chance";
        spec["states"] = maid.variables.at(node.id).states;
        break;
      case NodeCategory::kDecision:
        spec["kind"] = "decision";
        spec["agent"] = node.kind.agent + 1;
        spec["actions"] = maid.variables.at(node.id).states;
        break;
      case NodeCategory::kUtility:
        spec["kind"] = "utility";
        spec["agent"] = node.kind.agent + 1;
        break;
    }
    nodes.push_back(std::move(spec));
  }
  j["nodes"] = std::move(nodes);
  j["edges"] = edges_to_json(maid.graph);
  Json cpds = Json::array();
  for (const Cpd& cpd : maid.chance_cpds) {
    cpds.push_back({{"child", cpd.child},
                    {"parents", cpd.parents},
                    {"rows", rows_to_json(cpd.child, cpd.parents, maid.variables,
                                          cpd.table)}});
  }
  j["cpds"] = std::move(cpds);
  Json utilities = Json::array();
  for (const UtilityNode& u : maid.utilities) {
    long long contexts = static_cast<long long>(u.table.size());
    Json rows = Json::array();
    for (long long c = 0; c < contexts; ++c) {
      rows.push_back({{"given", context_labels(u.parents, maid.variables, c)},
                      {"value", u.table[c]}});
    }
    utilities.push_back(
        {{"node", u.id}, {"parents", u.parents}, {"rows", std::move(rows)}});
  }
  j["utilities"] = std::move(utilities);
  return j;
}

// ---------------------------------------------------------------------------
// Causal Bayesian games
// ---------------------------------------------------------------------------

CbgModel parse_cbg(const Json& j) {
  const std::string ctx = "cbg";
  CbgModel model;
  std::vector<std::string> agents = parse_agents(j, ctx);
  for (const Json& spec : require_array(j, ctx, "graphs")) {
    std::string name = require_string(spec, ctx + "/graphs", "name");
    model.family.names.push_back(name);
    model.family.members.push_back(
        parse_maid_body(spec, agents, ctx + "/graphs/" + name));
  }
  const Json& beliefs = require(j, ctx, "beliefs");
  auto parse_matrix = [&](const char* field) {
    std::vector<std::vector<double>> matrix;
    for (const Json& row : require_array(beliefs, ctx + "/beliefs", field)) {
      matrix.push_back(number_list(row, ctx + "/beliefs"));
    }
    return matrix;
  };
  model.beliefs.first_order = parse_matrix("first_order");
  model.beliefs.second_order = parse_matrix("second_order");
  return model;
}

Json cbg_to_json(const CbgModel& model) {
  Json j;
  j["agents"] = model.family.members.empty()
                    ? std::vector<std::string>{}
                    : model.family.members.front().agents;
  Json graphs = Json::array();
  for (int g = 0; g < model.family.num_graphs(); ++g) {
    Json body = maid_body_to_json(model.family.members[g]);
    Json named;
    named["name"] = model.family.names[g];
    for (auto& [key, value] : body.items()) named[key] = std::move(value);
    graphs.push_back(std::move(named));
  }
  j["graphs"] = std::move(graphs);
  j["beliefs"] = {{"first_order", model.beliefs.first_order},
                  {"second_order", model.beliefs.second_order}};
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

ModelDocument parse_model(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    size_t line = 1, column = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail(ErrorKind::kParseError, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + e.what());
  }
  if (!j.is_object()) {
    fail(ErrorKind::kSchemaViolation, "document must be a JSON object");
  }
  ModelDocument doc;
  const Json& version = require(j, "document", "format_version");
  if (!version.is_number_integer()) {
    fail(ErrorKind::kSchemaViolation, "'format_version' must be an integer");
  }
  doc.format_version = version.get<int>();
  if (doc.format_version != 1) {
    fail(ErrorKind::kSchemaViolation,
         "unsupported format_version " + std::to_string(doc.format_version));
  }
  std::string type = require_string(j, "document", "model_type");
  if (type == "bn") {
    doc.type = ModelType::kBn;
    doc.bn = parse_bn(j);
  } else if (type == "nfg") {
    doc.type = ModelType::kNfg;
    doc.nfg = parse_nfg(j);
  } else if (type == "efg") {
    doc.type = ModelType::kEfg;
    doc.efg = parse_efg(j);
  } else if (type == "bayesian_game") {
    doc.type = ModelType::kBayesianGame;
    doc.bayesian = parse_bayesian(j);
  } else if (type == "maid") {
    doc.type = ModelType::kMaid;
    doc.maid = parse_maid_body(j, parse_agents(j, "maid"), "maid");
  } else if (type == "cbg") {
    doc.type = ModelType::kCbg;
    doc.cbg = parse_cbg(j);
  } else {
    fail(ErrorKind::kSchemaViolation, "unknown model_type '" + type + "'");
  }
  return doc;
}

std::string serialize_model(const ModelDocument& doc) {
  Json body;
  switch (doc.type) {
    case ModelType::kBn: body = bn_to_json(*doc.bn); break;
    case ModelType::kNfg: body = nfg_to_json(*doc.nfg); break;
    case ModelType::kEfg: body = efg_to_json(*doc.efg); break;
    case ModelType::kBayesianGame: body = bayesian_to_json(*doc.bayesian); break;
    case ModelType::kMaid: {
      body = maid_body_to_json(*doc.maid);
      Json named;
      named["agents"] = doc.maid->agents;
      for (auto& [key, value] : body.items()) named[key] = std::move(value);
      body = std::move(named);
      break;
    }
    case ModelType::kCbg: body = cbg_to_json(*doc.cbg); break;
  }
  Json j;
  j["format_version"] = doc.format_version;
  j["model_type"] = model_type_name(doc.type);
  for (auto& [key, value] : body.items()) j[key] = std::move(value);
  return j.dump(2) + "\n";
}

ValidationReport validate_document(const ModelDocument& doc) {
  switch (doc.type) {
    case ModelType::kBn: return doc.bn->validate();
    case ModelType::kNfg: return doc.nfg->validate();
    case ModelType::kEfg: return doc.efg->validate();
    case ModelType::kBayesianGame: return doc.bayesian->validate();
    case ModelType::kMaid: return doc.maid->validate();
    case ModelType::kCbg: {
      ValidationReport report = validate_family(doc.cbg->family);
      ValidationReport beliefs = validate_beliefs(doc.cbg->family, doc.cbg->beliefs);
      for (const std::string& v : beliefs.violations) report.violation(v);
      for (const std::string& w : beliefs.warnings) report.warning(w);
      return report;
    }
  }
  return {};
}

MaidProfile parse_strategy(const std::string& text, const Maid& maid) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::kParseError, e.what());
  }
  if (require_string(j, "strategy", "model_type") != "strategy") {
    fail(ErrorKind::kSchemaViolation, "not a strategy document");
  }
  MaidProfile profile;
  std::vector<NodeId> decisions = maid.decision_nodes();
  std::unordered_set<std::string> covered;
  for (const Json& spec : require_array(j, "strategy", "rules")) {
    DecisionRule rule;
    rule.decision = require_string(spec, "strategy/rules", "decision");
    const std::string where = "strategy/rules/" + rule.decision;
    if (std::find(decisions.begin(), decisions.end(), rule.decision) ==
        decisions.end()) {
      fail(ErrorKind::kUnresolvedReference,
           where + ": not a decision node of this model");
    }
    if (!covered.insert(rule.decision).second) {
      fail(ErrorKind::kSchemaViolation, where + ": duplicate rule");
    }
    const DiscreteVariable& var = maid.variables.at(rule.decision);
    std::vector<NodeId> parents = maid.graph.parents(rule.decision);
    long long contexts = 1;
    for (const NodeId& p : parents) contexts *= maid.variables.at(p).cardinality();
    rule.table.assign(contexts * var.cardinality(), 0.0);
    std::vector<bool> seen(contexts, false);
    for (const Json& row : require_array(spec, where, "rows")) {
      long long index = context_index(
          parents, maid.variables,
          string_list(require(row, where, "given"), where), where);
      if (seen[index]) fail(ErrorKind::kSchemaViolation, where + ": duplicate row");
      seen[index] = true;
      if (row.contains("action")) {
        std::string label = row.at("action").get<std::string>();
        rule.table[index * var.cardinality() + var.state_index(label)] = 1.0;
      } else {
        const Json& dist = require(row, where, "dist");
        for (const auto& [label, p] : dist.items()) {
          rule.table[index * var.cardinality() + var.state_index(label)] =
              as_number(p, where);
        }
      }
    }
    for (long long c = 0; c < contexts; ++c) {
      if (!seen[c]) fail(ErrorKind::kSchemaViolation, where + ": missing row");
      double sum = 0.0;
      for (int s = 0; s < var.cardinality(); ++s) {
        double p = rule.table[c * var.cardinality() + s];
        if (p < 0.0 || p > 1.0) {
          fail(ErrorKind::kSchemaViolation, where + ": probability outside [0,1]");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance) {
        fail(ErrorKind::kSchemaViolation, where + ": row does not sum to 1");
      }
    }
    profile.rules.push_back(std::move(rule));
  }
  for (const NodeId& d : decisions) {
    if (!covered.count(d)) {
      fail(ErrorKind::kIncompleteProfile, "strategy has no rule for '" + d + "'");
    }
  }
  // Canonical rule order follows declaration order of the decision nodes.
  std::sort(profile.rules.begin(), profile.rules.end(),
            [&](const DecisionRule& a, const DecisionRule& b) {
              return std::find(decisions.begin(), decisions.end(), a.decision) <
                     std::find(decisions.begin(), decisions.end(), b.decision);
            });
  return profile;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIoError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace cgt
