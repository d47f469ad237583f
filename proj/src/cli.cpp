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

#include "cgt/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "CLI11.hpp"
#include "cgt/model_io.hpp"

namespace cgt {

std::string fmt6(double x) {
  if (x == 0.0) x = 0.0;  // flush -0
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", x);
  if (std::string(buffer) == "-0.000000") return "0.000000";
  return buffer;
}

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitLimit = 2;
constexpr int kExitIo = 3;
constexpr int kExitConceptMismatch = 4;
constexpr int kExitZeroEvidence = 5;

struct ConceptMismatch {
  std::string message;
};

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kEnumerationLimitExceeded:
      return kExitLimit;
    case ErrorKind::kZeroProbabilityEvidence:
      return kExitZeroEvidence;
    case ErrorKind::kIoError:
      return kExitIo;
    default:
      return kExitValidation;
  }
}

std::string eu_suffix(const std::vector<double>& payoffs) {
  std::string s = " eu=(";
  for (size_t i = 0; i < payoffs.size(); ++i) {
    if (i) s += ", ";
    s += fmt6(payoffs[i]);
  }
  return s + ")";
}

Assignment parse_bindings(const std::vector<std::string>& raw, const char* flag) {
  Assignment result;
  for (const std::string& binding : raw) {
    size_t eq = binding.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == binding.size()) {
      fail(ErrorKind::kSchemaViolation,
           std::string(flag) + " expects NODE=state, got '" + binding + "'");
    }
    result.emplace_back(binding.substr(0, eq), binding.substr(eq + 1));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Profile rendering
// ---------------------------------------------------------------------------

std::string render_nfg(const NormalFormGame& game, const NfgEquilibrium& eq) {
  std::string s;
  if (eq.pure) {
    s = "(";
    for (int i = 0; i < game.num_agents(); ++i) {
      if (i) s += ", ";
      for (size_t a = 0; a < eq.profile.probs[i].size(); ++a) {
        if (eq.profile.probs[i][a] == 1.0) s += game.actions[i][a];
      }
    }
    s += ")";
  } else {
    s = "(";
    for (int i = 0; i < game.num_agents(); ++i) {
      if (i) s += ", ";
      s += "[";
      for (size_t a = 0; a < eq.profile.probs[i].size(); ++a) {
        if (a) s += " ";
        s += game.actions[i][a] + ":" + fmt6(eq.profile.probs[i][a]);
      }
      s += "]";
    }
    s += ")";
  }
  return s + eu_suffix(eq.payoffs);
}

std::string render_efg(const GameTree& tree, const EfgEquilibrium& eq) {
  std::vector<std::vector<int>> per_agent = agent_information_sets(tree);
  std::string s = "(";
  for (int agent = 0; agent < tree.num_agents(); ++agent) {
    if (agent) s += "; ";
    if (per_agent[agent].empty()) {
      s += "-";
      continue;
    }
    for (size_t k = 0; k < per_agent[agent].size(); ++k) {
      if (k) s += ", ";
      int set = per_agent[agent][k];
      s += tree.information_sets()[set].actions[eq.strategy.choices[set]];
    }
  }
  return s + ")" + eu_suffix(eq.payoffs);
}

std::string render_bayes(const BayesianGame& game, const BayesEquilibrium& eq) {
  std::string s = "(";
  for (int agent = 0; agent < game.num_agents(); ++agent) {
    if (agent) s += "; ";
    for (size_t t = 0; t < game.types[agent].size(); ++t) {
      if (t) s += ", ";
      int choice = eq.strategy.choice[agent][t];
      s += choice < 0 ? "*" : game.actions[agent][choice];
    }
  }
  return s + ")" + eu_suffix(eq.payoffs);
}

std::string render_rule(const std::vector<std::string>& actions,
                        const std::vector<int>& rule) {
  std::string s;
  for (size_t c = 0; c < rule.size(); ++c) {
    if (c) s += "/";
    s += actions[rule[c]];
  }
  return s;
}

std::string render_maid(const Maid& maid, const MaidEquilibrium& eq) {
  std::vector<NodeId> decisions = maid.decision_nodes();
  std::string s = "(";
  for (size_t d = 0; d < decisions.size(); ++d) {
    if (d) s += "; ";
    s += decisions[d] + ": " +
         render_rule(maid.variables.at(decisions[d]).states, eq.profile.choice[d]);
  }
  return s + ")" + eu_suffix(eq.payoffs);
}

std::string render_cbg(const GraphFamily& family, const CbgEquilibrium& eq) {
  std::vector<std::vector<NodeId>> decisions = family_decisions(family);
  const Maid& first = family.members.front();
  std::string s = "(";
  for (int agent = 0; agent < first.num_agents(); ++agent) {
    if (agent) s += "; ";
    s += first.agents[agent] + ":";
    for (int g = 0; g < family.num_graphs(); ++g) {
      const AgentGraphChoice& choice = eq.profile.component[agent][g];
      s += " " + family.names[g] + "=";
      if (choice.wildcard) {
        s += "*";
        continue;
      }
      if (decisions[agent].empty()) {
        s += "-";
        continue;
      }
      for (size_t d = 0; d < decisions[agent].size(); ++d) {
        if (d) s += "|";
        s += render_rule(family.members[g].variables.at(decisions[agent][d]).states,
                         choice.rule[d]);
      }
    }
  }
  return s + ")" + eu_suffix(eq.payoffs);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_validate(const ModelDocument& doc, std::ostream& out) {
  ValidationReport report = validate_document(doc);
  for (const std::string& v : report.violations) out << "violation: " << v << "\n";
  for (const std::string& w : report.warnings) out << "warning: " << w << "\n";
  out << (report.ok() ? "valid" : "invalid") << "\n";
  return report.ok() ? kExitOk : kExitValidation;
}

void ensure_valid(const ModelDocument& doc) {
  ValidationReport report = validate_document(doc);
  if (!report.ok()) {
    fail(ErrorKind::kSchemaViolation,
         "model is invalid: " + report.violations.front());
  }
}

int cmd_solve(const ModelDocument& doc, const std::string& concept_name,
              const std::string& mode, std::uint64_t limit, std::ostream& out) {
  switch (doc.type) {
    case ModelType::kNfg: {
      const NormalFormGame& game = *doc.nfg;
      NfgEquilibriumSet set;
      if (concept_name == "pure-nash") {
        set = pure_nash(game, limit);
      } else if (concept_name == "mixed-nash") {
        set = mixed_nash_2p(game, limit);
      } else {
        throw ConceptMismatch{"concept '" + concept_name + "' needs a different model type"};
      }
      for (const NfgEquilibrium& eq : set.items) out << render_nfg(game, eq) << "\n";
      if (set.degenerate) out << "# degenerate\n";
      return kExitOk;
    }
    case ModelType::kEfg: {
      const GameTree& tree = *doc.efg;
      EfgEquilibriumSet set;
      if (concept_name == "pure-nash") {
        set = efg_pure_nash(tree, limit);
      } else if (concept_name == "spe") {
        set = subgame_perfect(tree, limit);
      } else if (concept_name == "backward-induction") {
        set = backward_induction(tree);
      } else {
        throw ConceptMismatch{"concept '" + concept_name + "' needs a different model type"};
      }
      for (const EfgEquilibrium& eq : set.items) out << render_efg(tree, eq) << "\n";
      return kExitOk;
    }
    case ModelType::kBayesianGame: {
      if (concept_name != "pure-bne") {
        throw ConceptMismatch{"concept '" + concept_name + "' needs a different model type"};
      }
      const BayesianGame& game = *doc.bayesian;
      for (const BayesEquilibrium& eq : pure_bne(game, limit).items) {
        out << render_bayes(game, eq) << "\n";
      }
      return kExitOk;
    }
    case ModelType::kMaid: {
      const Maid& maid = *doc.maid;
      if (concept_name == "pure-nash") {
        for (const MaidEquilibrium& eq : maid_pure_nash(maid, limit).items) {
          out << render_maid(maid, eq) << "\n";
        }
        return kExitOk;
      }
      if (concept_name == "br-iteration") {
        if (auto eq = best_response_iteration(maid)) {
          out << render_maid(maid, *eq) << "\n";
        } else {
          out << "# did not converge\n";
        }
        return kExitOk;
      }
      throw ConceptMismatch{"concept '" + concept_name + "' needs a different model type"};
    }
    case ModelType::kCbg: {
      if (concept_name != "pure-bne") {
        throw ConceptMismatch{"concept '" + concept_name + "' needs a different model type"};
      }
      CbgMode cbg_mode;
      if (mode == "per-graph") {
        cbg_mode = CbgMode::kPerGraph;
      } else if (mode == "ex-ante") {
        cbg_mode = CbgMode::kExAnte;
      } else {
        fail(ErrorKind::kSchemaViolation, "unknown --mode '" + mode + "'");
      }
      const CbgModel& model = *doc.cbg;
      for (const CbgEquilibrium& eq :
           cbg_pure_bne(model.family, model.beliefs, cbg_mode, limit).items) {
        out << render_cbg(model.family, eq) << "\n";
      }
      return kExitOk;
    }
    case ModelType::kBn:
      throw ConceptMismatch{"a Bayesian network has nothing to solve; use query"};
  }
  return kExitOk;
}

void print_distribution(const Factor& dist, std::ostream& out,
                        const VariableTable& vars) {
  std::vector<int> cards = dist.cards;
  long long cell = 0;
  for_each_assignment(cards, [&](const std::vector<int>& states) {
    std::string label;
    for (size_t i = 0; i < dist.scope.size(); ++i) {
      if (i) label += ",";
      label += vars.at(dist.scope[i]).states[states[i]];
    }
    out << label << ": " << fmt6(dist.table[cell++]) << "\n";
  });
}

int cmd_query(const ModelDocument& doc, const std::string& model_path,
              const std::vector<std::string>& targets, const Assignment& given,
              const Assignment& dos, const std::string& eu_node,
              const std::string& strategy, const std::string& route,
              std::ostream& out) {
  Intervention itv{dos};
  if (doc.type == ModelType::kBn) {
    if (targets.empty() || !eu_node.empty()) {
      throw ConceptMismatch{"a Bayesian network query needs --target"};
    }
    const BayesNet& bn = *doc.bn;
    Factor dist;
    if (route == "truncated") {
      if (!given.empty()) {
        fail(ErrorKind::kSchemaViolation,
             "the truncated route does not support --given");
      }
      dist = dos.empty() ? bn.variable_elimination(targets, {})
                         : truncated_query(bn, targets, itv);
    } else if (route == "surgery") {
      dist = surgery_query(bn, targets, itv, given);
    } else {
      fail(ErrorKind::kSchemaViolation, "unknown --route '" + route + "'");
    }
    print_distribution(dist, out, bn.variables());
    return kExitOk;
  }
  if (doc.type == ModelType::kMaid) {
    const Maid& maid = *doc.maid;
    if (strategy.empty()) {
      fail(ErrorKind::kSchemaViolation, "a MAID query needs --strategy");
    }
    std::string path = strategy;
    if (!std::filesystem::exists(path)) {
      path = (std::filesystem::path(model_path).parent_path() /
              (strategy + ".json"))
                 .string();
    }
    MaidProfile profile = parse_strategy(read_file(path), maid);
    if (!eu_node.empty()) {
      const UtilityNode& u = maid.utility(eu_node);
      double value;
      if (!dos.empty()) {
        if (!given.empty()) {
          fail(ErrorKind::kSchemaViolation,
               "--do and --given cannot be combined in a utility query");
        }
        // Post-policy intervention on the chosen equilibrium.
        Maid scoped = maid;
        scoped.utilities = {u};
        value = interventional_eu(scoped, profile, u.agent, itv);
      } else {
        Maid scoped = maid;
        scoped.utilities = {u};
        value = conditional_eu(scoped, profile, u.agent, given);
      }
      out << fmt6(value) << "\n";
      return kExitOk;
    }
    if (targets.empty()) {
      throw ConceptMismatch{"a MAID query needs --eu or --target"};
    }
    BayesNet bn = induce_bn(maid, profile);
    Factor dist = dos.empty() ? bn.variable_elimination(targets, given)
                              : surgery_query(bn, targets, itv, given);
    print_distribution(dist, out, bn.variables());
    return kExitOk;
  }
  throw ConceptMismatch{"query supports bn and maid models"};
}

int cmd_export_dot(const ModelDocument& doc, std::ostream& out) {
  switch (doc.type) {
    case ModelType::kBn:
      out << doc.bn->graph().to_dot();
      return kExitOk;
    case ModelType::kMaid:
      out << doc.maid->graph.to_dot();
      return kExitOk;
    case ModelType::kEfg:
      out << doc.efg->to_dot();
      return kExitOk;
    case ModelType::kCbg:
      for (int g = 0; g < doc.cbg->family.num_graphs(); ++g) {
        out << "// " << doc.cbg->family.names[g] << "\n"
            << doc.cbg->family.members[g].graph.to_dot();
      }
      return kExitOk;
    default:
      throw ConceptMismatch{"this model type has no graph to export"};
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"deterministic solver for causal graphical decision models"};
  app.require_subcommand(1);

  std::string file, concept_name, mode = "per-graph", route = "surgery";
  std::string eu_node, strategy;
  std::uint64_t limit = kDefaultEnumerationLimit;
  std::vector<std::string> targets, given_raw, do_raw;
  bool timing = false;

  CLI::App* validate = app.add_subcommand("validate", "check model invariants");
  validate->add_option("file", file)->required();

  CLI::App* solve = app.add_subcommand("solve", "compute an equilibrium set");
  solve->add_option("file", file)->required();
  solve->add_option("--concept", concept_name, "pure-nash | mixed-nash | spe | backward-induction | pure-bne | br-iteration")
      ->required();
  solve->add_option("--mode", mode, "per-graph | ex-ante (cbg only)");
  solve->add_option("--limit", limit, "enumeration cap");
  solve->add_flag("--timing", timing, "print elapsed time to stderr");

  CLI::App* query = app.add_subcommand("query", "probability or utility query");
  query->add_option("file", file)->required();
  query->add_option("--target", targets, "query variables");
  query->add_option("--given", given_raw, "evidence NODE=state");
  query->add_option("--do", do_raw, "intervention NODE=state");
  query->add_option("--eu", eu_node, "utility node to take the expectation of");
  query->add_option("--strategy", strategy, "strategy file or corpus name (maid)");
  query->add_option("--route", route, "surgery | truncated (bn only)");
  query->add_option("--limit", limit, "enumeration cap");

  CLI::App* export_dot = app.add_subcommand("export-dot", "emit graphviz");
  export_dot->add_option("file", file)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitValidation;
  }

  ModelDocument doc;
  try {
    doc = parse_model(read_file(file));
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitIo;
  }

  try {
    if (validate->parsed()) return cmd_validate(doc, out);
    ensure_valid(doc);
    if (solve->parsed()) {
      auto start = std::chrono::steady_clock::now();
      int code = cmd_solve(doc, concept_name, mode, limit, out);
      if (timing) {
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        err << "elapsed_ms=" << elapsed.count() << "\n";
      }
      return code;
    }
    if (query->parsed()) {
      return cmd_query(doc, file, targets, parse_bindings(given_raw, "--given"),
                       parse_bindings(do_raw, "--do"), eu_node, strategy, route,
                       out);
    }
    if (export_dot->parsed()) return cmd_export_dot(doc, out);
  } catch (const ConceptMismatch& e) {
    err << e.message << "\n";
    return kExitConceptMismatch;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitOk;
}

}  // namespace cgt
