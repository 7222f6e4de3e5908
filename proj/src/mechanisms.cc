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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace auctionsep {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckBids(BidProfile bids) {
  if (bids.empty()) throw std::invalid_argument("bid profile is empty");
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (!std::isfinite(bids[i]) || bids[i] < 0.0) {
      std::ostringstream msg;
      msg << "bid " << bids[i] << " of buyer " << i
          << " is negative or not finite";
      throw std::invalid_argument(msg.str());
    }
  }
}

void CheckLengths(BidProfile bids, const ReserveProfile& reserves,
                  const char* what) {
  CheckBids(bids);
  if (bids.size() != reserves.size()) {
    std::ostringstream msg;
    msg << "profile has " << bids.size() << " bids but " << reserves.size()
        << " " << what;
    throw std::invalid_argument(msg.str());
  }
}

// Shared second-price core. `reserve(i)` gives buyer i's reserve; `eager`
// selects whether elimination happens before or after ranking.
template <class ReserveOf>
Outcome SecondPrice(BidProfile bids, ReserveOf reserve, bool eager,
                    TieBreaker& ties) {
  const std::size_t n = bids.size();
  auto eligible = [&](std::size_t i) {
    return !eager || bids[i] >= reserve(i);
  };

  double top = -1.0;
  std::size_t tied = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!eligible(i)) continue;
    if (bids[i] > top) {
      top = bids[i];
      tied = 1;
    } else if (bids[i] == top) {
      ++tied;
    }
  }
  if (tied == 0) return {};

  std::size_t pick = tied == 1 ? 0 : ties.Pick(tied);
  std::size_t winner = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (eligible(i) && bids[i] == top) {
      if (pick == 0) {
        winner = i;
        break;
      }
      --pick;
    }
  }

  if (bids[winner] < reserve(winner)) return {};

  double runner_up = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != winner && eligible(i)) runner_up = std::max(runner_up, bids[i]);
  }
  return {winner, std::max(reserve(winner), runner_up)};
}

// Records how many candidates were tied, always picking the first.
class RecordingTieBreaker final : public TieBreaker {
 public:
  std::size_t Pick(std::size_t count) override {
    count_ = count;
    return 0;
  }
  std::size_t count() const { return count_; }

 private:
  std::size_t count_ = 0;
};

}  // namespace

ReserveProfile::ReserveProfile(std::vector<double> reserves)
    : reserves_(std::move(reserves)) {
  for (std::size_t i = 0; i < reserves_.size(); ++i) {
    if (!std::isfinite(reserves_[i]) || reserves_[i] < 0.0) {
      std::ostringstream msg;
      msg << "reserve " << reserves_[i] << " of buyer " << i
          << " is negative or not finite";
      throw std::invalid_argument(msg.str());
    }
  }
}

ReserveProfile ReserveProfile::Anonymous(std::size_t buyers, double reserve) {
  return ReserveProfile(std::vector<double>(buyers, reserve));
}

ReserveProfile ReserveProfile::TwoClass(std::size_t buyers,
                                        std::size_t count_high, double high,
                                        double low) {
  if (count_high > buyers) {
    std::ostringstream msg;
    msg << "high-reserve class of " << count_high << " exceeds " << buyers
        << " buyers";
    throw std::invalid_argument(msg.str());
  }
  std::vector<double> reserves(buyers, low);
  std::fill_n(reserves.begin(), count_high, high);
  return ReserveProfile(std::move(reserves));
}

Outcome RunEsp(BidProfile bids, const ReserveProfile& reserves,
               TieBreaker& ties) {
  CheckLengths(bids, reserves, "reserves");
  return SecondPrice(bids, [&](std::size_t i) { return reserves[i]; }, true,
                     ties);
}

Outcome RunEsp(BidProfile bids, const ReserveProfile& reserves, Rng& rng) {
  UniformTieBreaker ties(rng);
  return RunEsp(bids, reserves, ties);
}

Outcome RunLsp(BidProfile bids, const ReserveProfile& reserves,
               TieBreaker& ties) {
  CheckLengths(bids, reserves, "reserves");
  return SecondPrice(bids, [&](std::size_t i) { return reserves[i]; }, false,
                     ties);
}

Outcome RunLsp(BidProfile bids, const ReserveProfile& reserves, Rng& rng) {
  UniformTieBreaker ties(rng);
  return RunLsp(bids, reserves, ties);
}

Outcome RunAsp(BidProfile bids, double reserve, TieBreaker& ties) {
  CheckBids(bids);
  if (!std::isfinite(reserve) || reserve < 0.0) {
    throw std::invalid_argument("anonymous reserve must be finite and >= 0");
  }
  return SecondPrice(bids, [reserve](std::size_t) { return reserve; }, true,
                     ties);
}

Outcome RunAsp(BidProfile bids, double reserve, Rng& rng) {
  UniformTieBreaker ties(rng);
  return RunAsp(bids, reserve, ties);
}

Outcome RunSpm(BidProfile bids, const ReserveProfile& prices) {
  CheckLengths(bids, prices, "prices");
  std::vector<std::size_t> order(bids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return prices[a] > prices[b];
                   });
  for (std::size_t i : order) {
    if (bids[i] >= prices[i]) return {i, prices[i]};
  }
  return {};
}

Outcome RunMyersonExampleOne(BidProfile bids, const ExampleOneParams& params,
                             TieBreaker& ties) {
  CheckBids(bids);
  params.Validate();
  const double middle = params.middle_value();
  const double top = params.top_value();

  std::size_t top_count = 0;
  std::size_t middle_count = 0;
  for (double b : bids) {
    if (b >= top) {
      ++top_count;
    } else if (b >= middle) {
      ++middle_count;
    }
  }

  auto nth_in_bracket = [&](std::size_t k, double lo, double hi) {
    for (std::size_t i = 0; i < bids.size(); ++i) {
      if (bids[i] >= lo && bids[i] < hi) {
        if (k == 0) return i;
        --k;
      }
    }
    return bids.size();
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (top_count == 0) {
    if (middle_count == 0) return {};
    const std::size_t pick = middle_count == 1 ? 0 : ties.Pick(middle_count);
    return {nth_in_bracket(pick, middle, top), middle};
  }
  if (top_count == 1) {
    const double payment =
        top - (top - middle) / (1.0 + static_cast<double>(middle_count));
    return {nth_in_bracket(0, top, kInf), payment};
  }
  return {nth_in_bracket(ties.Pick(top_count), top, kInf), top};
}

Outcome RunMyersonExampleOne(BidProfile bids, const ExampleOneParams& params,
                             Rng& rng) {
  UniformTieBreaker ties(rng);
  return RunMyersonExampleOne(bids, params, ties);
}

std::string MechanismName(const Mechanism& mechanism) {
  return std::visit(Overloaded{
                        [](const EspMechanism&) { return "esp"; },
                        [](const LspMechanism&) { return "lsp"; },
                        [](const AspMechanism&) { return "asp"; },
                        [](const SpmMechanism&) { return "spm"; },
                        [](const MyersonExampleOneMechanism&) {
                          return "myerson-ex1";
                        },
                    },
                    mechanism);
}

std::optional<std::size_t> ConfiguredBuyers(const Mechanism& mechanism) {
  return std::visit(
      Overloaded{
          [](const EspMechanism& m) -> std::optional<std::size_t> {
            return m.reserves.size();
          },
          [](const LspMechanism& m) -> std::optional<std::size_t> {
            return m.reserves.size();
          },
          [](const SpmMechanism& m) -> std::optional<std::size_t> {
            return m.prices.size();
          },
          [](const auto&) -> std::optional<std::size_t> {
            return std::nullopt;
          },
      },
      mechanism);
}

std::vector<double> SymmetryClasses(const Mechanism& mechanism,
                                    std::size_t buyers) {
  auto of = [buyers](const ReserveProfile& r) {
    if (r.size() != buyers) {
      std::ostringstream msg;
      msg << "mechanism is configured for " << r.size() << " buyers, not "
          << buyers;
      throw std::invalid_argument(msg.str());
    }
    return std::vector<double>(r.reserves().begin(), r.reserves().end());
  };
  return std::visit(
      Overloaded{
          [&](const EspMechanism& m) { return of(m.reserves); },
          [&](const LspMechanism& m) { return of(m.reserves); },
          [&](const SpmMechanism& m) { return of(m.prices); },
          [&](const auto&) { return std::vector<double>(buyers, 0.0); },
      },
      mechanism);
}

Outcome Run(const Mechanism& mechanism, BidProfile bids, TieBreaker& ties) {
  return std::visit(
      Overloaded{
          [&](const EspMechanism& m) { return RunEsp(bids, m.reserves, ties); },
          [&](const LspMechanism& m) { return RunLsp(bids, m.reserves, ties); },
          [&](const AspMechanism& m) { return RunAsp(bids, m.reserve, ties); },
          [&](const SpmMechanism& m) { return RunSpm(bids, m.prices); },
          [&](const MyersonExampleOneMechanism& m) {
            return RunMyersonExampleOne(bids, m.params, ties);
          },
      },
      mechanism);
}

Outcome Run(const Mechanism& mechanism, BidProfile bids, Rng& rng) {
  UniformTieBreaker ties(rng);
  return Run(mechanism, bids, ties);
}

double ExpectedRevenue(const Mechanism& mechanism, BidProfile bids) {
  RecordingTieBreaker probe;
  const Outcome first = Run(mechanism, bids, probe);
  if (probe.count() <= 1) return first.revenue();

  // A tie for the top means the runner-up bid equals the top bid. Under
  // ESP/ASP every tied survivor clears its reserve and pays the top bid, and
  // the Myerson payment depends only on the bracket, so the revenue is the
  // same for every pick. Under LSP the pick may fall below its own reserve.
  const auto* lsp = std::get_if<LspMechanism>(&mechanism);
  if (lsp == nullptr) return first.revenue();
  const double top = *std::max_element(bids.begin(), bids.end());
  std::size_t clearing = 0;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (bids[i] == top && top >= lsp->reserves[i]) ++clearing;
  }
  return top * static_cast<double>(clearing) /
         static_cast<double>(probe.count());
}

}  // namespace auctionsep
