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

#ifndef CGT_NORMAL_FORM_HPP_
#define CGT_NORMAL_FORM_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cgt/error.hpp"

namespace cgt {

// Unilateral deviations below this gain do not break an equilibrium.
inline constexpr double kNashTolerance = 1e-9;
// Profiles closer than this (max-norm) are considered the same equilibrium.
inline constexpr double kProfileDedupTolerance = 1e-7;

inline constexpr std::uint64_t kDefaultEnumerationLimit = 10'000'000;

// One payoff tensor per agent over joint pure action profiles. Profiles are
// flattened row-major with agent 0's action varying slowest.
struct NormalFormGame {
  std::vector<std::string> agents;
  std::vector<std::vector<std::string>> actions;
  std::vector<std::vector<double>> payoffs;  // [agent][flat joint profile]

  int num_agents() const { return static_cast<int>(agents.size()); }
  std::uint64_t num_profiles() const;
  std::uint64_t flat_index(const std::vector<int>& profile) const;
  double payoff(int agent, const std::vector<int>& profile) const;

  ValidationReport validate() const;
};

// Per-agent distribution over that agent's actions.
struct MixedProfile {
  std::vector<std::vector<double>> probs;

  static MixedProfile pure(const NormalFormGame& game,
                           const std::vector<int>& profile);
};

double expected_payoff(const NormalFormGame& game, const MixedProfile& profile,
                       int agent);  // throws kDimensionMismatch

// No pure deviation gains more than eps for any agent.
bool is_nash(const NormalFormGame& game, const MixedProfile& profile,
             double eps = kNashTolerance);

struct NfgEquilibrium {
  MixedProfile profile;
  std::vector<double> payoffs;
  bool pure = false;
};

struct NfgEquilibriumSet {
  std::vector<NfgEquilibrium> items;
  bool degenerate = false;
};

// All pure Nash equilibria, lexicographic by action indices.
NfgEquilibriumSet pure_nash(const NormalFormGame& game,
                            std::uint64_t limit = kDefaultEnumerationLimit);

// Two-player Nash equilibria by support enumeration: for every support pair
// the linear indifference-plus-normalization system is solved, and solutions
// with nonnegative probabilities that verify as best responses are kept.
// Continuum components are flagged degenerate and represented by their
// vertices. Pure equilibria are included.
NfgEquilibriumSet mixed_nash_2p(const NormalFormGame& game,
                                std::uint64_t limit = kDefaultEnumerationLimit);

}  // namespace cgt

#endif  // CGT_NORMAL_FORM_HPP_
