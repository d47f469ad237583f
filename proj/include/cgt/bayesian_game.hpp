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

#ifndef CGT_BAYESIAN_GAME_HPP_
#define CGT_BAYESIAN_GAME_HPP_

#include "cgt/normal_form.hpp"

namespace cgt {

// One-shot game of incomplete information: finite per-agent type sets, a
// common prior over type profiles, and payoffs over (type profile, action
// profile) pairs. Both profile kinds flatten row-major with agent 0 slowest.
struct BayesianGame {
  std::vector<std::string> agents;
  std::vector<std::vector<std::string>> actions;
  std::vector<std::vector<std::string>> types;
  std::vector<double> prior;                 // over flat type profiles
  std::vector<std::vector<double>> payoffs;  // [agent][type flat * A + action flat]

  int num_agents() const { return static_cast<int>(agents.size()); }
  std::uint64_t num_type_profiles() const;
  std::uint64_t num_action_profiles() const;
  std::uint64_t type_flat_index(const std::vector<int>& type_profile) const;
  std::uint64_t action_flat_index(const std::vector<int>& action_profile) const;
  double payoff(int agent, const std::vector<int>& type_profile,
                const std::vector<int>& action_profile) const;
  double type_marginal(int agent, int type) const;

  ValidationReport validate() const;
};

// Pure plan per (agent, own type); -1 marks a wildcard at a zero-mass type.
struct TypeStrategy {
  std::vector<std::vector<int>> choice;
};

// P(t^{-i} | t^i): distribution over the other agents' type profiles (agents
// in index order with the first varying slowest, agent i removed).
// Throws kZeroProbabilityType when the conditioning type has no mass.
std::vector<double> belief(const BayesianGame& game, int agent, int type);

// Expected payoff of playing `action` as (agent, type) against the other
// agents' type strategies, weighted by the belief about their types.
double interim_expected_utility(const BayesianGame& game, int agent, int type,
                                int action, const TypeStrategy& others);

struct BayesEquilibrium {
  TypeStrategy strategy;
  std::vector<double> payoffs;  // ex-ante, prior-weighted
};

struct BayesEquilibriumSet {
  std::vector<BayesEquilibrium> items;
};

// All pure type strategies where every positive-probability (agent, type)
// pair plays an interim best response. Zero-mass types are unconstrained and
// reported as wildcards.
BayesEquilibriumSet pure_bne(const BayesianGame& game,
                             std::uint64_t limit = kDefaultEnumerationLimit);

}  // namespace cgt

#endif  // CGT_BAYESIAN_GAME_HPP_
