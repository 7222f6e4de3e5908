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

#ifndef AUCTIONSEP_MECHANISMS_H_
#define AUCTIONSEP_MECHANISMS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "auctionsep/distribution.h"
#include "auctionsep/rng.h"

namespace auctionsep {

// Bids are indexed by buyer; all entries must be finite and nonnegative.
using BidProfile = std::span<const double>;

class ReserveProfile {
 public:
  ReserveProfile() = default;
  // Throws std::invalid_argument on negative or non-finite reserves.
  explicit ReserveProfile(std::vector<double> reserves);

  static ReserveProfile Anonymous(std::size_t buyers, double reserve);
  // The first `count_high` buyers get `high`, the remaining ones `low`.
  static ReserveProfile TwoClass(std::size_t buyers, std::size_t count_high,
                                 double high, double low);

  std::span<const double> reserves() const { return reserves_; }
  std::size_t size() const { return reserves_.size(); }
  double operator[](std::size_t i) const { return reserves_[i]; }

 private:
  std::vector<double> reserves_;
};

struct Outcome {
  std::optional<std::size_t> winner;
  double payment = 0.0;

  double revenue() const { return payment; }
};

// Resolves ties among the `count` tied candidates (in buyer-index order).
class TieBreaker {
 public:
  virtual ~TieBreaker() = default;
  virtual std::size_t Pick(std::size_t count) = 0;
};

class UniformTieBreaker final : public TieBreaker {
 public:
  explicit UniformTieBreaker(Rng& rng) : rng_(rng) {}
  std::size_t Pick(std::size_t count) override {
    return count == 1 ? 0 : static_cast<std::size_t>(rng_.UniformIndex(count));
  }

 private:
  Rng& rng_;
};

// Eager: drop buyers below their reserve, then second price among survivors.
// The winner pays max(own reserve, best other surviving bid), where the best
// other surviving bid is 0 for a sole survivor.
Outcome RunEsp(BidProfile bids, const ReserveProfile& reserves, TieBreaker& ties);
Outcome RunEsp(BidProfile bids, const ReserveProfile& reserves, Rng& rng);

// Lazy: the highest bidder is the only candidate; the item goes unsold if he
// is below his reserve, else he pays max(own reserve, best other bid).
Outcome RunLsp(BidProfile bids, const ReserveProfile& reserves, TieBreaker& ties);
Outcome RunLsp(BidProfile bids, const ReserveProfile& reserves, Rng& rng);

// Second price with one anonymous reserve.
Outcome RunAsp(BidProfile bids, double reserve, TieBreaker& ties);
Outcome RunAsp(BidProfile bids, double reserve, Rng& rng);

// Sequential posted prices: offers go out in descending price order (ties by
// buyer index) and the first buyer with bid >= price buys at that price.
Outcome RunSpm(BidProfile bids, const ReserveProfile& prices);

// Optimal auction for the ExampleOne family, with bids bracketed as
// low [0, alpha/beta), middle [alpha/beta, n), top [n, inf):
//  - low bids never win;
//  - no top bid: uniform middle bidder wins and pays alpha/beta;
//  - one top bid: that buyer wins and pays
//      n - (n - alpha/beta) / (1 + #middle);
//  - several top bids: uniform top bidder wins and pays n.
Outcome RunMyersonExampleOne(BidProfile bids, const ExampleOneParams& params,
                             TieBreaker& ties);
Outcome RunMyersonExampleOne(BidProfile bids, const ExampleOneParams& params,
                             Rng& rng);

struct EspMechanism {
  ReserveProfile reserves;
};
struct LspMechanism {
  ReserveProfile reserves;
};
struct AspMechanism {
  double reserve = 0.0;
};
struct SpmMechanism {
  ReserveProfile prices;
};
struct MyersonExampleOneMechanism {
  ExampleOneParams params;
};

using Mechanism = std::variant<EspMechanism, LspMechanism, AspMechanism,
                               SpmMechanism, MyersonExampleOneMechanism>;

// "esp", "lsp", "asp", "spm" or "myerson-ex1".
std::string MechanismName(const Mechanism& mechanism);

// Buyer count the mechanism is configured for, or nullopt when it accepts
// any profile length (ASP, Myerson).
std::optional<std::size_t> ConfiguredBuyers(const Mechanism& mechanism);

// Per-buyer key such that buyers with equal keys are interchangeable: the
// revenue of every profile is unchanged when their bids are permuted.
std::vector<double> SymmetryClasses(const Mechanism& mechanism,
                                    std::size_t buyers);

Outcome Run(const Mechanism& mechanism, BidProfile bids, TieBreaker& ties);
Outcome Run(const Mechanism& mechanism, BidProfile bids, Rng& rng);

// Revenue averaged exactly over every resolution of the uniform tie-break.
double ExpectedRevenue(const Mechanism& mechanism, BidProfile bids);

}  // namespace auctionsep

#endif  // AUCTIONSEP_MECHANISMS_H_
