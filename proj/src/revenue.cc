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

#include "auctionsep/revenue.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "auctionsep/ironing.h"

namespace auctionsep {

namespace {

constexpr std::uint64_t kMcBlockSize = 1 << 14;

void CheckBuyers(const Mechanism& mechanism, int n) {
  if (n < 1) {
    std::ostringstream msg;
    msg << "buyer count must be at least 1 (got " << n << ")";
    throw std::invalid_argument(msg.str());
  }
  if (auto configured = ConfiguredBuyers(mechanism);
      configured && *configured != static_cast<std::size_t>(n)) {
    std::ostringstream msg;
    msg << MechanismName(mechanism) << " is configured for " << *configured
        << " buyers, not " << n;
    throw std::invalid_argument(msg.str());
  }
}

// Number of multisets of size `m` over `s` kinds, C(m + s - 1, s - 1), in
// floating point so it cannot overflow.
double MultisetCount(int m, std::size_t s) {
  double count = 1.0;
  for (std::size_t k = 1; k < s; ++k) {
    count *= static_cast<double>(m + static_cast<int>(k)) /
             static_cast<double>(k);
  }
  return count;
}

void CheckCap(double required, std::uint64_t cap) {
  if (required > static_cast<double>(cap)) {
    throw EnumerationCapExceeded(required, cap);
  }
}

// Calls visit(counts, log_probability) for every way of splitting `m`
// i.i.d. draws across the atoms.
void ForEachCountVector(
    int m, std::span<const double> log_probs,
    const std::function<void(const std::vector<int>&, double)>& visit) {
  const std::size_t s = log_probs.size();
  std::vector<int> counts(s, 0);
  const double log_m_factorial = std::lgamma(m + 1.0);
  std::function<void(std::size_t, int, double)> recurse =
      [&](std::size_t atom, int remaining, double log_weight) {
        if (atom + 1 == s) {
          counts[atom] = remaining;
          const double lp =
              log_weight - std::lgamma(remaining + 1.0) +
              (remaining == 0 ? 0.0 : remaining * log_probs[atom]);
          visit(counts, log_m_factorial + lp);
          return;
        }
        for (int c = remaining; c >= 0; --c) {
          counts[atom] = c;
          recurse(atom + 1, remaining - c,
                  log_weight - std::lgamma(c + 1.0) +
                      (c == 0 ? 0.0 : c * log_probs[atom]));
        }
      };
  recurse(0, m, 0.0);
}

struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void Add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void Merge(const Moments& other) {
    if (other.count == 0) return;
    const double total = static_cast<double>(count + other.count);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) *
                         static_cast<double>(other.count) / total;
    count += other.count;
  }
};

double OneMinusPower(double p, double exponent) {
  // 1 - (1 - p)^exponent without cancellation for small p.
  if (p >= 1.0) return exponent > 0.0 ? 1.0 : 0.0;
  return -std::expm1(exponent * std::log1p(-p));
}

double Power(double one_minus, double exponent) {
  if (one_minus >= 1.0) return exponent > 0.0 ? 0.0 : 1.0;
  return std::exp(exponent * std::log1p(-one_minus));
}

std::vector<double> ReserveCandidates(const DiscreteDistribution& dist) {
  std::vector<double> candidates(dist.support().begin(), dist.support().end());
  candidates.push_back(0.0);
  std::sort(candidates.begin(), candidates.end(), std::greater<>());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  return candidates;
}

RevenueEstimate ScoreCandidate(const Mechanism& mechanism,
                               const DiscreteDistribution& dist, int n,
                               const EvalConfig& cfg) {
  try {
    return ExactExpectedRevenue(mechanism, dist, n, cfg);
  } catch (const EnumerationCapExceeded&) {
    if (!cfg.mc_fallback) throw;
    return McExpectedRevenue(mechanism, dist, n, cfg);
  }
}

}  // namespace

void EvalConfig::Validate() const {
  if (enumeration_cap < 1) {
    throw std::invalid_argument("enumeration_cap must be at least 1");
  }
  if (mc_samples < 1) {
    throw std::invalid_argument("mc_samples must be at least 1");
  }
}

const char* EstimateMethodName(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::kExact:
      return "exact";
    case EstimateMethod::kMonteCarlo:
      return "monte_carlo";
    case EstimateMethod::kClosedForm:
      return "closed_form";
  }
  return "unknown";
}

EnumerationCapExceeded::EnumerationCapExceeded(double required,
                                               std::uint64_t cap)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg.precision(17);
        msg << "exact enumeration needs " << required
            << " outcomes but enumeration_cap is " << cap
            << "; raise the cap to at least " << std::ceil(required);
        return msg.str();
      }()),
      required_(required) {}

RevenueEstimate ExactExpectedRevenue(const Mechanism& mechanism,
                                     const DiscreteDistribution& dist, int n,
                                     const EvalConfig& cfg) {
  cfg.Validate();
  CheckBuyers(mechanism, n);
  const std::size_t buyers = static_cast<std::size_t>(n);

  // Group interchangeable buyers.
  std::map<double, std::vector<std::size_t>> groups;
  const std::vector<double> keys = SymmetryClasses(mechanism, buyers);
  for (std::size_t i = 0; i < buyers; ++i) groups[keys[i]].push_back(i);
  std::vector<std::vector<std::size_t>> classes;
  for (auto& [key, members] : groups) classes.push_back(std::move(members));

  const std::size_t s = dist.size();
  double required = 1.0;
  for (const auto& members : classes) {
    required *= MultisetCount(static_cast<int>(members.size()), s);
  }
  CheckCap(required, cfg.enumeration_cap);

  std::vector<double> log_probs;
  for (double p : dist.probs()) log_probs.push_back(std::log(p));

  std::vector<double> bids(buyers, 0.0);
  double total = 0.0;
  std::function<void(std::size_t, double)> over_classes =
      [&](std::size_t c, double log_prob) {
        if (c == classes.size()) {
          total += std::exp(log_prob) * ExpectedRevenue(mechanism, bids);
          return;
        }
        const auto& members = classes[c];
        ForEachCountVector(
            static_cast<int>(members.size()), log_probs,
            [&](const std::vector<int>& counts, double lp) {
              std::size_t slot = 0;
              for (std::size_t atom = 0; atom < s; ++atom) {
                for (int k = 0; k < counts[atom]; ++k) {
                  bids[members[slot++]] = dist.support()[atom];
                }
              }
              over_classes(c + 1, log_prob + lp);
            });
      };
  over_classes(0, 0.0);
  return {total, 0.0, EstimateMethod::kExact};
}

RevenueEstimate ExactExpectedRevenueNaive(const Mechanism& mechanism,
                                          const DiscreteDistribution& dist,
                                          int n, const EvalConfig& cfg) {
  cfg.Validate();
  CheckBuyers(mechanism, n);
  const std::size_t buyers = static_cast<std::size_t>(n);
  const std::size_t s = dist.size();
  CheckCap(std::pow(static_cast<double>(s), n), cfg.enumeration_cap);

  std::vector<std::size_t> index(buyers, 0);
  std::vector<double> bids(buyers, dist.support()[0]);
  double total = 0.0;
  while (true) {
    double prob = 1.0;
    for (std::size_t i = 0; i < buyers; ++i) prob *= dist.probs()[index[i]];
    total += prob * ExpectedRevenue(mechanism, bids);

    std::size_t pos = 0;
    while (pos < buyers && ++index[pos] == s) {
      index[pos] = 0;
      bids[pos] = dist.support()[0];
      ++pos;
    }
    if (pos == buyers) break;
    bids[pos] = dist.support()[index[pos]];
  }
  return {total, 0.0, EstimateMethod::kExact};
}

RevenueEstimate McExpectedRevenue(const Mechanism& mechanism,
                                  const DiscreteDistribution& dist, int n,
                                  const EvalConfig& cfg) {
  cfg.Validate();
  CheckBuyers(mechanism, n);
  if (cfg.mc_samples < 2) {
    throw std::invalid_argument("Monte Carlo needs at least 2 samples");
  }
  const std::size_t buyers = static_cast<std::size_t>(n);
  const std::uint64_t blocks =
      (cfg.mc_samples + kMcBlockSize - 1) / kMcBlockSize;
  std::vector<Moments> block_moments(blocks);

  auto run_block = [&](std::uint64_t block) {
    Rng rng(cfg.seed, block);
    UniformTieBreaker ties(rng);
    std::vector<double> bids(buyers);
    const std::uint64_t begin = block * kMcBlockSize;
    const std::uint64_t end = std::min(cfg.mc_samples, begin + kMcBlockSize);
    Moments& m = block_moments[block];
    for (std::uint64_t i = begin; i < end; ++i) {
      for (double& b : bids) b = dist.SampleOne(rng);
      m.Add(Run(mechanism, bids, ties).revenue());
    }
  };

  const std::uint64_t workers = std::min<std::uint64_t>(
      blocks, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }

  Moments total;
  for (const Moments& m : block_moments) total.Merge(m);
  const double variance =
      total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
  return {total.mean,
          std::sqrt(std::max(0.0, variance) / static_cast<double>(total.count)),
          EstimateMethod::kMonteCarlo};
}

RevenueEstimate MyersonIidExact(const DiscreteDistribution& dist, int n) {
  if (n < 1) throw std::invalid_argument("buyer count must be at least 1");
  const auto ironed = IronedVirtualValues(dist);

  // Probability mass per distinct positive ironed level, highest first.
  std::map<double, double, std::greater<>> mass;
  for (std::size_t i = 0; i < ironed.size(); ++i) {
    if (ironed[i].ironed > 0.0) mass[ironed[i].ironed] += dist.probs()[i];
  }
  double revenue = 0.0;
  double at_least = 0.0;     // P(one buyer's level >= current level)
  double prev_reached = 0.0;  // P(max level >= previous level)
  for (const auto& [level, p] : mass) {
    at_least += p;
    const double reached = OneMinusPower(at_least, n);
    revenue += level * (reached - prev_reached);
    prev_reached = reached;
  }
  return {revenue, 0.0, EstimateMethod::kExact};
}

double ExampleOneMyerevFinite(const ExampleOneParams& params) {
  params.Validate();
  const double nd = params.top_value();
  const double top_prob = 1.0 / (nd * nd);
  const double no_top = Power(top_prob, nd);
  const double none = Power(params.beta / nd, nd);
  const double middle_ironed = (params.alpha - 1.0) / (params.beta - 1.0 / nd);
  return nd * OneMinusPower(top_prob, nd) + middle_ironed * (no_top - none);
}

double ExampleOneEspFiniteCount(const ExampleOneParams& params,
                                int high_count) {
  params.Validate();
  if (high_count < 0 || high_count > params.n) {
    std::ostringstream msg;
    msg << "high-reserve count " << high_count << " is outside [0, "
        << params.n << "]";
    throw std::invalid_argument(msg.str());
  }
  const double nd = params.top_value();
  const double top_prob = 1.0 / (nd * nd);
  const double high = static_cast<double>(high_count);
  const double low = nd - high;
  return nd * OneMinusPower(top_prob, high) +
         params.middle_value() * Power(top_prob, high) *
             OneMinusPower(params.beta / nd, low);
}

double ExampleOneEspFinite(const ExampleOneParams& params, double z) {
  params.Validate();
  const double scaled = z * params.top_value();
  const double rounded = std::round(scaled);
  if (!(z >= 0.0 && z <= 1.0) || std::abs(scaled - rounded) > 1e-9) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "z=" << z << " gives z*n=" << scaled
        << ", which is not an integer in [0, n]";
    throw std::invalid_argument(msg.str());
  }
  return ExampleOneEspFiniteCount(params, static_cast<int>(rounded));
}

ReserveSearchResult BestReservesIid(ReserveAuction auction,
                                    const DiscreteDistribution& dist, int n,
                                    const EvalConfig& cfg) {
  cfg.Validate();
  if (n < 1) throw std::invalid_argument("buyer count must be at least 1");
  const std::vector<double> candidates = ReserveCandidates(dist);
  CheckCap(MultisetCount(n, candidates.size()), cfg.enumeration_cap);

  ReserveSearchResult best;
  bool have_best = false;
  std::vector<double> reserves(static_cast<std::size_t>(n));
  const std::vector<double> no_log_probs(candidates.size(), 0.0);
  ForEachCountVector(
      n, no_log_probs, [&](const std::vector<int>& counts, double) {
        std::size_t slot = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
          for (int k = 0; k < counts[c]; ++k) reserves[slot++] = candidates[c];
        }
        ReserveProfile profile(reserves);
        Mechanism mechanism =
            auction == ReserveAuction::kEsp
                ? Mechanism{EspMechanism{profile}}
                : Mechanism{LspMechanism{profile}};
        const RevenueEstimate score = ScoreCandidate(mechanism, dist, n, cfg);
        ++best.candidates_scored;
        if (!have_best || score.mean > best.revenue.mean + 1e-12) {
          best.reserves = reserves;
          best.revenue = score;
          have_best = true;
        }
      });
  return best;
}

ReserveSearchResult BestEspReservesIid(const DiscreteDistribution& dist, int n,
                                       const EvalConfig& cfg) {
  return BestReservesIid(ReserveAuction::kEsp, dist, n, cfg);
}

AnonymousReserveResult BestAnonymousReserve(const DiscreteDistribution& dist,
                                            int n, const EvalConfig& cfg) {
  cfg.Validate();
  AnonymousReserveResult best;
  bool have_best = false;
  for (double r : ReserveCandidates(dist)) {
    const RevenueEstimate score =
        ScoreCandidate(AspMechanism{r}, dist, n, cfg);
    if (!have_best || score.mean > best.revenue.mean + 1e-12) {
      best = {r, score};
      have_best = true;
    }
  }
  return best;
}

}  // namespace auctionsep
