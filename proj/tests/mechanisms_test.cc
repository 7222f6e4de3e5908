// Copyright 2026 The auctionsep Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "auctionsep/mechanisms.h"

#include <set>
#include <stdexcept>

#include "auctionsep/oracles.h"
#include "doctest.h"

namespace auctionsep {
namespace {

using Bids = std::vector<double>;

TEST_CASE("eager second price") {
  Rng rng(1);
  auto o = RunEsp(Bids{5, 3}, ReserveProfile({0, 0}), rng);
  CHECK(o.winner == 0u);
  CHECK(o.payment == 3.0);

  o = RunEsp(Bids{5, 3}, ReserveProfile({4, 4}), rng);
  CHECK(o.winner == 0u);
  CHECK(o.payment == 4.0);

  o = RunEsp(Bids{5, 3}, ReserveProfile({6, 2}), rng);
  CHECK(o.winner == 1u);
  CHECK(o.payment == 2.0);

  o = RunEsp(Bids{1, 1}, ReserveProfile({2, 2}), rng);
  CHECK_FALSE(o.winner.has_value());
  CHECK(o.revenue() == 0.0);
}

TEST_CASE("lazy second price") {
  Rng rng(1);
  auto o = RunLsp(Bids{5, 3}, ReserveProfile({6, 2}), rng);
  CHECK_FALSE(o.winner.has_value());
  CHECK(o.revenue() == 0.0);

  o = RunLsp(Bids{5, 3}, ReserveProfile({0, 0}), rng);
  CHECK(o.winner == 0u);
  CHECK(o.payment == 3.0);

  o = RunLsp(Bids{5, 3}, ReserveProfile({4, 0}), rng);
  CHECK(o.winner == 0u);
  CHECK(o.payment == 4.0);
}

TEST_CASE("anonymous second price") {
  Rng rng(3);
  auto o = RunAsp(Bids{5, 3}, 4.0, rng);
  CHECK(o.winner == 0u);
  CHECK(o.payment == 4.0);

  CHECK_FALSE(RunAsp(Bids{5, 3}, 6.0, rng).winner.has_value());

  std::set<std::size_t> winners;
  for (int i = 0; i < 64; ++i) {
    o = RunAsp(Bids{5, 5}, 1.0, rng);
    CHECK(o.payment == 5.0);
    winners.insert(*o.winner);
  }
  CHECK(winners == std::set<std::size_t>{0, 1});
  CHECK_THROWS_AS(RunAsp(Bids{1}, -1.0, rng), std::invalid_argument);
}

TEST_CASE("sequential posted prices") {
  const ReserveProfile prices({4, 2});
  auto o = RunSpm(Bids{5, 3}, prices);
  CHECK(o.winner == 0u);
  CHECK(o.payment == 4.0);

  o = RunSpm(Bids{1, 3}, prices);
  CHECK(o.winner == 1u);
  CHECK(o.payment == 2.0);

  CHECK_FALSE(RunSpm(Bids{1, 1}, prices).winner.has_value());

  // Equal prices are offered in index order.
  o = RunSpm(Bids{3, 3}, ReserveProfile({2, 2}));
  CHECK(o.winner == 0u);
}

TEST_CASE("ExampleOne Myerson mechanism cases") {
  const ExampleOneParams params{2.91, 1.89, 100};
  const double mid = params.middle_value();
  Rng rng(5);

  std::set<std::size_t> winners;
  for (int i = 0; i < 64; ++i) {
    const auto o = RunMyersonExampleOne(Bids{mid, mid, 0}, params, rng);
    REQUIRE(o.winner.has_value());
    CHECK(o.payment == mid);
    winners.insert(*o.winner);
  }
  CHECK(winners == std::set<std::size_t>{0, 1});

  auto o = RunMyersonExampleOne(Bids{100, mid, 0}, params, rng);
  CHECK(o.winner == 0u);
  CHECK(o.payment == doctest::Approx(50.76984126984127).epsilon(1e-12));

  winners.clear();
  for (int i = 0; i < 64; ++i) {
    o = RunMyersonExampleOne(Bids{100, 100, 0}, params, rng);
    CHECK(o.payment == 100.0);
    winners.insert(*o.winner);
  }
  CHECK(winners == std::set<std::size_t>{0, 1});

  // Bracketing of off-support bids.
  CHECK_FALSE(RunMyersonExampleOne(Bids{1.0, 0.5}, params, rng).winner);
  o = RunMyersonExampleOne(Bids{250, 2.0, 50.0, 1.0}, params, rng);
  CHECK(o.winner == 0u);
  CHECK(o.payment == doctest::Approx(100 - (100 - mid) / 3).epsilon(1e-12));
}

TEST_CASE("input validation") {
  Rng rng(1);
  CHECK_THROWS_AS(RunEsp(Bids{1, 2}, ReserveProfile({1}), rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(RunEsp(Bids{-1}, ReserveProfile({0}), rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(RunLsp(Bids{}, ReserveProfile(), rng), std::invalid_argument);
  CHECK_THROWS_AS(ReserveProfile({-2.0}), std::invalid_argument);
  CHECK_THROWS_AS(ReserveProfile::TwoClass(3, 4, 1, 0), std::invalid_argument);
  const auto two = ReserveProfile::TwoClass(4, 1, 9, 2);
  CHECK(std::vector<double>(two.reserves().begin(), two.reserves().end()) ==
        std::vector<double>{9, 2, 2, 2});
}

TEST_CASE("closed-form tie averaging matches per-resolution averaging") {
  Rng rng(11);
  for (int t = 0; t < 3000; ++t) {
    const std::size_t n = 1 + rng.UniformIndex(5);
    Bids bids(n);
    std::vector<double> reserves(n);
    for (auto& b : bids) b = static_cast<double>(rng.UniformIndex(3));
    for (auto& r : reserves) r = static_cast<double>(rng.UniformIndex(4));
    const ReserveProfile profile(reserves);
    const ExampleOneParams params{2.0, 1.5, 2};
    const std::vector<Mechanism> mechs = {
        EspMechanism{profile}, LspMechanism{profile},
        AspMechanism{reserves[0]}, SpmMechanism{profile},
        MyersonExampleOneMechanism{params}};
    for (const auto& m : mechs) {
      CHECK(ExpectedRevenue(m, bids) ==
            doctest::Approx(oracle::TieAveragedRevenue(m, bids)).epsilon(1e-14));
    }
  }
}

TEST_CASE("ESP and LSP coincide under an anonymous reserve") {
  Rng rng(21);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 1 + rng.UniformIndex(6);
    Bids bids(n);
    for (auto& b : bids) b = static_cast<double>(rng.UniformIndex(4));
    const double r = static_cast<double>(rng.UniformIndex(4));
    const auto anon = ReserveProfile::Anonymous(n, r);
    Rng a(t), b(t), c(t);
    const auto esp = RunEsp(bids, anon, a);
    const auto lsp = RunLsp(bids, anon, b);
    const auto asp = RunAsp(bids, r, c);
    CHECK(esp.winner == lsp.winner);
    CHECK(esp.payment == lsp.payment);
    CHECK(esp.winner == asp.winner);
    CHECK(esp.payment == asp.payment);
  }
}

TEST_CASE("ESP is truthful on small grids") {
  const Bids grid = {0, 1, 2};
  const Bids deviations = {0, 0.5, 1, 1.5, 2, 2.5, 3};
  Rng rng(8);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int t = 0; t < 5; ++t) {
      std::vector<double> reserves(n);
      for (auto& r : reserves) r = 0.5 * static_cast<double>(rng.UniformIndex(6));
      const Mechanism esp = EspMechanism{ReserveProfile(reserves)};
      std::vector<std::size_t> idx(n, 0);
      while (true) {
        Bids values(n);
        for (std::size_t i = 0; i < n; ++i) values[i] = grid[idx[i]];
        for (std::size_t i = 0; i < n; ++i) {
          Bids bids = values;
          const double honest =
              oracle::TieAveragedUtility(esp, bids, i, values[i]);
          for (double d : deviations) {
            bids[i] = d;
            CHECK(oracle::TieAveragedUtility(esp, bids, i, values[i]) <=
                  honest + 1e-12);
          }
        }
        std::size_t pos = 0;
        while (pos < n && ++idx[pos] == grid.size()) idx[pos++] = 0;
        if (pos == n) break;
      }
    }
  }
}

}  // namespace
}  // namespace auctionsep
