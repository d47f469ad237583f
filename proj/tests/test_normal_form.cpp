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

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

using namespace cgt;
using namespace cgt_test;

namespace {

NormalFormGame table1() { return *load_corpus("table1_nfg").nfg; }

NormalFormGame matching_pennies() {
  NormalFormGame game;
  game.agents = {"Row", "Col"};
  game.actions = {{"H", "T"}, {"H", "T"}};
  game.payoffs = {{1, -1, -1, 1}, {-1, 1, 1, -1}};
  return game;
}

bool contains_pure(const NfgEquilibriumSet& set, const std::vector<int>& profile) {
  for (const NfgEquilibrium& eq : set.items) {
    if (!eq.pure) continue;
    bool match = true;
    for (size_t i = 0; i < profile.size(); ++i) {
      if (eq.profile.probs[i][profile[i]] != 1.0) match = false;
    }
    if (match) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("normal_form") {

TEST_CASE("expected payoff of a pure profile is a table lookup") {
  NormalFormGame game = table1();
  MixedProfile profile = MixedProfile::pure(game, {0, 1});  // (d, ¬a)
  CHECK(expected_payoff(game, profile, 0) == doctest::Approx(1.0));
  CHECK(expected_payoff(game, profile, 1) == doctest::Approx(-1.0));
}

TEST_CASE("uniform against uniform averages the four cells") {
  NormalFormGame game = table1();
  MixedProfile uniform{{{0.5, 0.5}, {0.5, 0.5}}};
  CHECK(expected_payoff(game, uniform, 0) == doctest::Approx(-250.0));
}

TEST_CASE("profile shape mismatches are rejected") {
  NormalFormGame game = table1();
  CHECK_THROWS_AS(expected_payoff(game, MixedProfile{{{1.0}}}, 0), Error);
}

TEST_CASE("pure equilibria of the deterring game") {
  NfgEquilibriumSet set = pure_nash(table1());
  REQUIRE(set.items.size() == 2);
  CHECK(contains_pure(set, {0, 1}));  // (d, ¬a)
  CHECK(contains_pure(set, {1, 0}));  // (¬d, a)
}

TEST_CASE("a strictly dominant profile is the unique pure equilibrium") {
  NormalFormGame game;
  game.agents = {"A", "B"};
  game.actions = {{"x", "y"}, {"x", "y"}};
  game.payoffs = {{3, 3, 0, 0}, {2, 0, 2, 0}};  // x dominates for both
  NfgEquilibriumSet set = pure_nash(game);
  REQUIRE(set.items.size() == 1);
  CHECK(contains_pure(set, {0, 0}));
}

TEST_CASE("matching pennies has no pure equilibrium") {
  CHECK(pure_nash(matching_pennies()).items.empty());
}

TEST_CASE("enumeration cap throws") {
  CHECK_THROWS_AS(pure_nash(table1(), 3), Error);
}

TEST_CASE("mixed equilibria of the deterring game") {
  NfgEquilibriumSet set = mixed_nash_2p(table1());
  CHECK_FALSE(set.degenerate);
  REQUIRE(set.items.size() == 3);
  CHECK(contains_pure(set, {0, 1}));
  CHECK(contains_pure(set, {1, 0}));
  bool found_mixed = false;
  for (const NfgEquilibrium& eq : set.items) {
    if (eq.pure) continue;
    found_mixed = true;
    CHECK(eq.profile.probs[0][0] == doctest::Approx(0.001).epsilon(1e-9));
    CHECK(eq.profile.probs[1][0] == doctest::Approx(0.001).epsilon(1e-9));
  }
  CHECK(found_mixed);
}

TEST_CASE("matching pennies mixes fifty-fifty") {
  NfgEquilibriumSet set = mixed_nash_2p(matching_pennies());
  REQUIRE(set.items.size() == 1);
  for (int agent = 0; agent < 2; ++agent) {
    CHECK(set.items[0].profile.probs[agent][0] == doctest::Approx(0.5));
  }
}

TEST_CASE("the zero game is degenerate with vertex representatives") {
  NormalFormGame game;
  game.agents = {"A", "B"};
  game.actions = {{"x", "y"}, {"x", "y"}};
  game.payoffs = {{0, 0, 0, 0}, {0, 0, 0, 0}};
  NfgEquilibriumSet set = mixed_nash_2p(game);
  CHECK(set.degenerate);
  CHECK(set.items.size() >= 4);  // all four pure vertices at least
  for (const std::vector<int>& pure : {std::vector<int>{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
    CHECK(contains_pure(set, pure));
  }
}

TEST_CASE("every reported equilibrium re-verifies") {
  for (const NfgEquilibrium& eq : mixed_nash_2p(table1()).items) {
    CHECK(is_nash(table1(), eq.profile));
  }
}

TEST_CASE("pure equilibria appear inside the mixed set") {
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<int> payoff(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    NormalFormGame game;
    game.agents = {"A", "B"};
    game.actions = {{"a0", "a1"}, {"b0", "b1", "b2"}};
    game.payoffs.assign(2, std::vector<double>(6));
    for (int agent = 0; agent < 2; ++agent) {
      for (int cell = 0; cell < 6; ++cell) {
        game.payoffs[agent][cell] = payoff(rng);
      }
    }
    NfgEquilibriumSet pure = pure_nash(game);
    NfgEquilibriumSet mixed = mixed_nash_2p(game);
    for (const NfgEquilibrium& eq : pure.items) {
      std::vector<int> profile;
      for (const auto& dist : eq.profile.probs) {
        for (size_t a = 0; a < dist.size(); ++a) {
          if (dist[a] == 1.0) profile.push_back(static_cast<int>(a));
        }
      }
      CHECK(contains_pure(mixed, profile));
    }
  }
}

TEST_CASE("positive affine payoff changes keep the equilibrium set") {
  NormalFormGame game = table1();
  NormalFormGame scaled = game;
  for (double& u : scaled.payoffs[0]) u = 3.5 * u + 11.0;  // one agent only
  NfgEquilibriumSet a = mixed_nash_2p(game);
  NfgEquilibriumSet b = mixed_nash_2p(scaled);
  REQUIRE(a.items.size() == b.items.size());
  for (size_t i = 0; i < a.items.size(); ++i) {
    for (int agent = 0; agent < 2; ++agent) {
      for (size_t act = 0; act < a.items[i].profile.probs[agent].size(); ++act) {
        CHECK(a.items[i].profile.probs[agent][act] ==
              doctest::Approx(b.items[i].profile.probs[agent][act]).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("validation flags bad tensors") {
  NormalFormGame game;
  game.agents = {"A"};
  game.actions = {{"x"}};
  game.payoffs = {{1.0, 2.0}};  // wrong size
  CHECK_FALSE(game.validate().ok());
}

}  // TEST_SUITE
