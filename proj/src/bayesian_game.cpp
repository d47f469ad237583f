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

#include "cgt/bayesian_game.hpp"

#include <algorithm>
#include <cmath>

namespace cgt {

namespace {

template <typename Fn>
void for_each_combo(const std::vector<int>& sizes, Fn&& fn) {
  std::vector<int> combo(sizes.size(), 0);
  while (true) {
    fn(combo);
    int pos = static_cast<int>(sizes.size()) - 1;
    while (pos >= 0 && ++combo[pos] == sizes[pos]) {
      combo[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

std::vector<int> type_sizes(const BayesianGame& game) {
  std::vector<int> sizes;
  for (const auto& t : game.types) sizes.push_back(static_cast<int>(t.size()));
  return sizes;
}

}  // namespace

std::uint64_t BayesianGame::num_type_profiles() const {
  std::uint64_t n = 1;
  for (const auto& t : types) n *= t.size();
  return n;
}

std::uint64_t BayesianGame::num_action_profiles() const {
  std::uint64_t n = 1;
  for (const auto& a : actions) n *= a.size();
  return n;
}

std::uint64_t BayesianGame::type_flat_index(
    const std::vector<int>& type_profile) const {
  std::uint64_t index = 0;
  for (int i = 0; i < num_agents(); ++i) {
    index = index * types[i].size() + type_profile[i];
  }
  return index;
}

std::uint64_t BayesianGame::action_flat_index(
    const std::vector<int>& action_profile) const {
  std::uint64_t index = 0;
  for (int i = 0; i < num_agents(); ++i) {
    index = index * actions[i].size() + action_profile[i];
  }
  return index;
}

double BayesianGame::payoff(int agent, const std::vector<int>& type_profile,
                            const std::vector<int>& action_profile) const {
  return payoffs[agent][type_flat_index(type_profile) * num_action_profiles() +
                        action_flat_index(action_profile)];
}

double BayesianGame::type_marginal(int agent, int type) const {
  double mass = 0.0;
  for_each_combo(type_sizes(*this), [&](const std::vector<int>& t) {
    if (t[agent] == type) mass += prior[type_flat_index(t)];
  });
  return mass;
}

ValidationReport BayesianGame::validate() const {
  ValidationReport report;
  if (agents.empty()) report.violation("game has no agents");
  if (actions.size() != agents.size() || types.size() != agents.size() ||
      payoffs.size() != agents.size()) {
    report.violation("actions/types/payoffs must list one entry per agent");
    return report;
  }
  for (int i = 0; i < num_agents(); ++i) {
    if (actions[i].empty()) report.violation("agent '" + agents[i] + "' has no actions");
    if (types[i].empty()) report.violation("agent '" + agents[i] + "' has no types");
  }
  if (prior.size() != num_type_profiles()) {
    report.violation("prior must cover every type profile");
    return report;
  }
  double sum = 0.0;
  for (double p : prior) {
    if (p < 0.0 || p > 1.0) report.violation("prior entry outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kRowSumTolerance) {
    report.violation("prior does not sum to 1");
  }
  std::uint64_t cells = num_type_profiles() * num_action_profiles();
  for (int i = 0; i < num_agents(); ++i) {
    if (payoffs[i].size() != cells) {
      report.violation("payoff table of agent '" + agents[i] + "' has wrong size");
      continue;
    }
    for (double u : payoffs[i]) {
      if (!std::isfinite(u)) {
        report.violation("non-finite payoff for agent '" + agents[i] + "'");
        break;
      }
    }
  }
  return report;
}

std::vector<double> belief(const BayesianGame& game, int agent, int type) {
  double mass = game.type_marginal(agent, type);
  if (!(mass > 0.0)) {
    fail(ErrorKind::kZeroProbabilityType,
         "type '" + game.types[agent][type] + "' of agent '" +
             game.agents[agent] + "' has zero prior probability");
  }
  std::vector<int> sizes = type_sizes(game);
  std::vector<int> other_sizes;
  for (int i = 0; i < game.num_agents(); ++i) {
    if (i != agent) other_sizes.push_back(sizes[i]);
  }
  std::uint64_t n = 1;
  for (int s : other_sizes) n *= s;
  std::vector<double> result(n, 0.0);
  for_each_combo(sizes, [&](const std::vector<int>& t) {
    if (t[agent] != type) return;
    std::uint64_t index = 0;
    for (int i = 0; i < game.num_agents(); ++i) {
      if (i != agent) index = index * sizes[i] + t[i];
    }
    result[index] += game.prior[game.type_flat_index(t)] / mass;
  });
  return result;
}

double interim_expected_utility(const BayesianGame& game, int agent, int type,
                                int action, const TypeStrategy& others) {
  double mass = game.type_marginal(agent, type);
  if (!(mass > 0.0)) {
    fail(ErrorKind::kZeroProbabilityType,
         "conditioning on a zero-probability type");
  }
  std::vector<int> sizes = type_sizes(game);
  double total = 0.0;
  for_each_combo(sizes, [&](const std::vector<int>& t) {
    if (t[agent] != type) return;
    double weight = game.prior[game.type_flat_index(t)] / mass;
    if (weight == 0.0) return;
    std::vector<int> action_profile(game.num_agents());
    for (int i = 0; i < game.num_agents(); ++i) {
      if (i == agent) {
        action_profile[i] = action;
      } else {
        int choice = others.choice[i][t[i]];
        if (choice < 0) {
          fail(ErrorKind::kIncompleteProfile,
               "strategy of agent '" + game.agents[i] +
                   "' is undefined at a positive-probability type");
        }
        action_profile[i] = choice;
      }
    }
    total += weight * game.payoff(agent, t, action_profile);
  });
  return total;
}

namespace {

std::vector<double> ex_ante_payoffs(const BayesianGame& game,
                                    const TypeStrategy& strategy) {
  std::vector<double> result(game.num_agents(), 0.0);
  for_each_combo(type_sizes(game), [&](const std::vector<int>& t) {
    double p = game.prior[game.type_flat_index(t)];
    if (p == 0.0) return;
    std::vector<int> action_profile(game.num_agents());
    for (int i = 0; i < game.num_agents(); ++i) {
      action_profile[i] = strategy.choice[i][t[i]];
    }
    for (int i = 0; i < game.num_agents(); ++i) {
      result[i] += p * game.payoff(i, t, action_profile);
    }
  });
  return result;
}

}  // namespace

BayesEquilibriumSet pure_bne(const BayesianGame& game, std::uint64_t limit) {
  // Only positive-probability types are enumerated; the rest stay wildcards.
  std::vector<std::vector<int>> positive(game.num_agents());
  std::vector<int> slot_sizes;
  std::vector<std::pair<int, int>> slots;  // (agent, type)
  std::uint64_t combos = 1;
  for (int i = 0; i < game.num_agents(); ++i) {
    for (int t = 0; t < static_cast<int>(game.types[i].size()); ++t) {
      if (game.type_marginal(i, t) > 0.0) {
        positive[i].push_back(t);
        slots.emplace_back(i, t);
        slot_sizes.push_back(static_cast<int>(game.actions[i].size()));
        combos *= game.actions[i].size();
        if (combos > limit) {
          fail(ErrorKind::kEnumerationLimitExceeded,
               "type strategy count exceeds limit");
        }
      }
    }
  }
  BayesEquilibriumSet result;
  for_each_combo(slot_sizes, [&](const std::vector<int>& combo) {
    TypeStrategy strategy;
    strategy.choice.resize(game.num_agents());
    for (int i = 0; i < game.num_agents(); ++i) {
      strategy.choice[i].assign(game.types[i].size(), -1);
    }
    for (size_t s = 0; s < slots.size(); ++s) {
      strategy.choice[slots[s].first][slots[s].second] = combo[s];
    }
    for (const auto& [agent, type] : slots) {
      int played = strategy.choice[agent][type];
      double current = interim_expected_utility(game, agent, type, played, strategy);
      for (int action = 0; action < static_cast<int>(game.actions[agent].size());
           ++action) {
        if (interim_expected_utility(game, agent, type, action, strategy) >
            current + kNashTolerance) {
          return;
        }
      }
    }
    BayesEquilibrium eq;
    eq.payoffs = ex_ante_payoffs(game, strategy);
    eq.strategy = std::move(strategy);
    result.items.push_back(std::move(eq));
  });
  return result;
}

}  // namespace cgt
