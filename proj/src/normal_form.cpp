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

#include "cgt/normal_form.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace cgt {

std::uint64_t NormalFormGame::num_profiles() const {
  std::uint64_t n = 1;
  for (const auto& a : actions) n *= a.size();
  return n;
}

std::uint64_t NormalFormGame::flat_index(const std::vector<int>& profile) const {
  std::uint64_t index = 0;
  for (int i = 0; i < num_agents(); ++i) {
    index = index * actions[i].size() + profile[i];
  }
  return index;
}

double NormalFormGame::payoff(int agent, const std::vector<int>& profile) const {
  return payoffs[agent][flat_index(profile)];
}

ValidationReport NormalFormGame::validate() const {
  ValidationReport report;
  if (agents.empty()) report.violation("game has no agents");
  if (actions.size() != agents.size() || payoffs.size() != agents.size()) {
    report.violation("actions/payoffs must list one entry per agent");
    return report;
  }
  for (int i = 0; i < num_agents(); ++i) {
    if (actions[i].empty()) {
      report.violation("agent '" + agents[i] + "' has no actions");
    }
    if (payoffs[i].size() != num_profiles()) {
      report.violation("payoff tensor of agent '" + agents[i] +
                       "' has wrong size");
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

MixedProfile MixedProfile::pure(const NormalFormGame& game,
                                const std::vector<int>& profile) {
  MixedProfile result;
  for (int i = 0; i < game.num_agents(); ++i) {
    std::vector<double> dist(game.actions[i].size(), 0.0);
    dist[profile[i]] = 1.0;
    result.probs.push_back(std::move(dist));
  }
  return result;
}

namespace {

void check_profile_shape(const NormalFormGame& game, const MixedProfile& profile) {
  if (profile.probs.size() != game.actions.size()) {
    fail(ErrorKind::kDimensionMismatch, "profile does not cover all agents");
  }
  for (int i = 0; i < game.num_agents(); ++i) {
    if (profile.probs[i].size() != game.actions[i].size()) {
      fail(ErrorKind::kDimensionMismatch,
           "profile of agent '" + game.agents[i] + "' has wrong length");
    }
  }
}

// Walks every joint pure profile, calling fn(profile, joint probability).
template <typename Fn>
void for_each_profile(const NormalFormGame& game, Fn&& fn) {
  int m = game.num_agents();
  std::vector<int> profile(m, 0);
  while (true) {
    fn(profile);
    int pos = m - 1;
    while (pos >= 0 &&
           ++profile[pos] == static_cast<int>(game.actions[pos].size())) {
      profile[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

// Expected payoff when `agent` plays pure action `action` and everyone else
// follows the mixed profile.
double deviation_payoff(const NormalFormGame& game, const MixedProfile& profile,
                        int agent, int action) {
  double total = 0.0;
  for_each_profile(game, [&](const std::vector<int>& pure) {
    if (pure[agent] != action) return;
    double p = 1.0;
    for (int i = 0; i < game.num_agents(); ++i) {
      if (i != agent) p *= profile.probs[i][pure[i]];
    }
    if (p > 0.0) total += p * game.payoff(agent, pure);
  });
  return total;
}

}  // namespace

double expected_payoff(const NormalFormGame& game, const MixedProfile& profile,
                       int agent) {
  check_profile_shape(game, profile);
  double total = 0.0;
  for_each_profile(game, [&](const std::vector<int>& pure) {
    double p = 1.0;
    for (int i = 0; i < game.num_agents(); ++i) p *= profile.probs[i][pure[i]];
    if (p > 0.0) total += p * game.payoff(agent, pure);
  });
  return total;
}

bool is_nash(const NormalFormGame& game, const MixedProfile& profile, double eps) {
  check_profile_shape(game, profile);
  for (int agent = 0; agent < game.num_agents(); ++agent) {
    double current = expected_payoff(game, profile, agent);
    for (int action = 0; action < static_cast<int>(game.actions[agent].size());
         ++action) {
      if (deviation_payoff(game, profile, agent, action) > current + eps) {
        return false;
      }
    }
  }
  return true;
}

NfgEquilibriumSet pure_nash(const NormalFormGame& game, std::uint64_t limit) {
  if (game.num_profiles() > limit) {
    fail(ErrorKind::kEnumerationLimitExceeded,
         "joint profile count exceeds limit");
  }
  NfgEquilibriumSet result;
  for_each_profile(game, [&](const std::vector<int>& profile) {
    for (int agent = 0; agent < game.num_agents(); ++agent) {
      double current = game.payoff(agent, profile);
      std::vector<int> deviation = profile;
      for (int action = 0;
           action < static_cast<int>(game.actions[agent].size()); ++action) {
        deviation[agent] = action;
        if (game.payoff(agent, deviation) > current + kNashTolerance) return;
      }
    }
    NfgEquilibrium eq;
    eq.profile = MixedProfile::pure(game, profile);
    for (int agent = 0; agent < game.num_agents(); ++agent) {
      eq.payoffs.push_back(game.payoff(agent, profile));
    }
    eq.pure = true;
    result.items.push_back(std::move(eq));
  });
  return result;
}

namespace {

std::vector<double> flatten(const MixedProfile& profile) {
  std::vector<double> flat;
  for (const auto& dist : profile.probs) {
    flat.insert(flat.end(), dist.begin(), dist.end());
  }
  return flat;
}

bool same_profile(const MixedProfile& a, const MixedProfile& b) {
  std::vector<double> fa = flatten(a), fb = flatten(b);
  for (size_t i = 0; i < fa.size(); ++i) {
    if (std::abs(fa[i] - fb[i]) > kProfileDedupTolerance) return false;
  }
  return true;
}

// Canonical order: lexicographically descending flattened probabilities, so
// pure profiles come out in action-index order.
bool profile_less(const NfgEquilibrium& a, const NfgEquilibrium& b) {
  std::vector<double> fa = flatten(a.profile), fb = flatten(b.profile);
  for (size_t i = 0; i < fa.size(); ++i) {
    if (fa[i] != fb[i]) return fa[i] > fb[i];
  }
  return false;
}

// Solves the indifference system for the column player's probabilities over
// `support_b`, such that the row player is indifferent across `support_a`.
// Returns false when the system is inconsistent or has no unique solution;
// `degenerate` is set when it is consistent but underdetermined.
bool solve_indifference(const std::vector<std::vector<double>>& payoff_a,
                        const std::vector<int>& support_a,
                        const std::vector<int>& support_b, int cols_b,
                        std::vector<double>* out, bool* degenerate) {
  int rows = static_cast<int>(support_a.size()) + 1;
  int cols = static_cast<int>(support_b.size()) + 1;  // probs + value
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  for (int r = 0; r < rows - 1; ++r) {
    for (int c = 0; c < cols - 1; ++c) {
      a(r, c) = payoff_a[support_a[r]][support_b[c]];
    }
    a(r, cols - 1) = -1.0;  // minus the equalized value
  }
  for (int c = 0; c < cols - 1; ++c) a(rows - 1, c) = 1.0;
  b(rows - 1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-10);
  Eigen::VectorXd x = lu.solve(b);
  if ((a * x - b).lpNorm<Eigen::Infinity>() > 1e-8) return false;
  if (lu.rank() < cols) {
    *degenerate = true;
    return false;
  }
  std::vector<double> probs(cols_b, 0.0);
  for (int c = 0; c < cols - 1; ++c) {
    double p = x(c);
    if (p < -kNashTolerance) return false;
    probs[support_b[c]] = std::max(p, 0.0);
  }
  *out = std::move(probs);
  return true;
}

std::vector<int> bits_to_support(std::uint64_t mask, int n) {
  std::vector<int> support;
  for (int i = 0; i < n; ++i) {
    if (mask & (std::uint64_t{1} << i)) support.push_back(i);
  }
  return support;
}

}  // namespace

NfgEquilibriumSet mixed_nash_2p(const NormalFormGame& game, std::uint64_t limit) {
  if (game.num_agents() != 2) {
    fail(ErrorKind::kDimensionMismatch,
         "mixed equilibrium search requires exactly two agents");
  }
  int n0 = static_cast<int>(game.actions[0].size());
  int n1 = static_cast<int>(game.actions[1].size());
  if (n0 >= 63 || n1 >= 63 ||
      ((std::uint64_t{1} << n0) - 1) * ((std::uint64_t{1} << n1) - 1) > limit) {
    fail(ErrorKind::kEnumerationLimitExceeded, "support pair count exceeds limit");
  }

  // Payoff matrices indexed [own action][other action].
  std::vector<std::vector<double>> u0(n0, std::vector<double>(n1));
  std::vector<std::vector<double>> u1(n1, std::vector<double>(n0));
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n1; ++j) {
      u0[i][j] = game.payoff(0, {i, j});
      u1[j][i] = game.payoff(1, {i, j});
    }
  }

  NfgEquilibriumSet result;
  for (std::uint64_t mask0 = 1; mask0 < (std::uint64_t{1} << n0); ++mask0) {
    std::vector<int> support0 = bits_to_support(mask0, n0);
    for (std::uint64_t mask1 = 1; mask1 < (std::uint64_t{1} << n1); ++mask1) {
      std::vector<int> support1 = bits_to_support(mask1, n1);
      // Unequal supports give non-square systems and only occur inside
      // continuum components, whose vertices smaller supports already yield.
      if (support0.size() != support1.size()) continue;

      std::vector<double> probs1;  // makes agent 0 indifferent on support0
      std::vector<double> probs0;  // makes agent 1 indifferent on support1
      if (!solve_indifference(u0, support0, support1, n1, &probs1,
                              &result.degenerate) ||
          !solve_indifference(u1, support1, support0, n0, &probs0,
                              &result.degenerate)) {
        continue;
      }
      MixedProfile profile{{probs0, probs1}};
      if (!is_nash(game, profile)) continue;

      bool duplicate = false;
      for (const NfgEquilibrium& seen : result.items) {
        if (same_profile(seen.profile, profile)) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;

      NfgEquilibrium eq;
      eq.pure = support0.size() == 1 && support1.size() == 1;
      eq.payoffs = {expected_payoff(game, profile, 0),
                    expected_payoff(game, profile, 1)};
      eq.profile = std::move(profile);
      result.items.push_back(std::move(eq));
    }
  }
  std::sort(result.items.begin(), result.items.end(), profile_less);
  return result;
}

}  // namespace cgt
