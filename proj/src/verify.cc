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

#include "auctionsep/verify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "auctionsep/ironing.h"
#include "auctionsep/mechanisms.h"
#include "auctionsep/oracles.h"
#include "auctionsep/revenue.h"
#include "auctionsep/separation.h"

namespace auctionsep {

namespace {

// Tracks the worst deviation of one property across its instances.
class Check {
 public:
  Check(std::string name, double tolerance)
      : name_(std::move(name)), tolerance_(tolerance) {}

  // Records `deviation` (> tolerance fails).
  void Deviation(double deviation, const std::string& where = "") {
    if (deviation > worst_ || !seen_) {
      worst_ = deviation;
      seen_ = true;
      if (deviation > tolerance_) where_ = where;
    }
    if (!(deviation <= tolerance_)) failed_ = true;
  }

  // Records a boolean condition; failures are counted.
  void Expect(bool ok, const std::string& where = "") {
    if (!ok) {
      ++violations_;
      failed_ = true;
      if (where_.empty()) where_ = where;
    }
    seen_ = true;
  }

  PropertyResult Result() const {
    PropertyResult r;
    r.name = name_;
    r.passed = !failed_;
    r.measured = violations_ > 0 ? violations_ : worst_;
    r.tolerance = tolerance_;
    r.detail = where_;
    return r;
  }

 private:
  std::string name_;
  double tolerance_;
  double worst_ = 0.0;
  double violations_ = 0.0;
  bool seen_ = false;
  bool failed_ = false;
  std::string where_;
};

std::string Describe(const DiscreteDistribution& dist, int n) {
  std::ostringstream out;
  out.precision(6);
  out << "support=(";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    out << (i ? "," : "") << dist.support()[i];
  }
  out << ") probs=(";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    out << (i ? "," : "") << dist.probs()[i];
  }
  out << ") n=" << n;
  return out.str();
}

int RandomBuyers(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.UniformIndex(hi - lo + 1));
}

// Calls visit(bids) for every profile in values^n.
void ForEachProfile(std::span<const double> values, int n,
                    const std::function<void(std::span<const double>)>& visit) {
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> bids(n, values[0]);
  while (true) {
    visit(bids);
    int pos = 0;
    while (pos < n && ++idx[pos] == values.size()) {
      idx[pos] = 0;
      bids[pos] = values[0];
      ++pos;
    }
    if (pos == n) return;
    bids[pos] = values[idx[pos]];
  }
}

EvalConfig ExactConfig() { return EvalConfig{}; }

// ---- distributions ----

void DistributionProperties(const VerifyConfig& cfg,
                            std::vector<PropertyResult>& out) {
  Rng rng(cfg.seed, 1);
  Check monotone("dist: quantile_price nonincreasing in q", 0.0);
  Check coverage("dist: P(v >= quantile_price(q)) >= q", 0.0);
  for (int t = 0; t < 50; ++t) {
    const auto dist = RandomSmallDistribution(rng, 1 + rng.UniformIndex(6));
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 200; ++k) {
      const double q = k / 200.0;
      const double p = QuantilePrice(dist, q);
      monotone.Expect(p <= prev, Describe(dist, 0));
      prev = p;
      double tail = 0.0;
      for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist.support()[i] >= p) tail += dist.probs()[i];
      }
      coverage.Deviation(std::max(0.0, q - tail - 1e-12), Describe(dist, 0));
    }
  }
  out.push_back(monotone.Result());
  out.push_back(coverage.Result());

  Check family("dist: example_one output is a valid distribution", 0.0);
  for (int t = 0; t < 100; ++t) {
    const int n = RandomBuyers(rng, 2, 1000);
    const auto params = RandomExampleOneParams(rng, n);
    bool ok = true;
    try {
      const auto dist = ExampleOne(params);
      double total = 0.0;
      for (std::size_t i = 0; i < dist.size(); ++i) {
        ok = ok && dist.probs()[i] > 0.0 && dist.support()[i] >= 0.0 &&
             (i == 0 || dist.support()[i] > dist.support()[i - 1]);
        total += dist.probs()[i];
      }
      ok = ok && std::abs(total - 1.0) <= kProbabilitySumTolerance;
    } catch (const std::exception&) {
      ok = false;
    }
    family.Expect(ok, "n=" + std::to_string(n));
  }
  out.push_back(family.Result());

  const std::uint64_t draws = cfg.quick ? 200'000 : 1'000'000;
  Check freq("dist: sample frequencies within 3 standard errors",
             cfg.mc_sigma);
  for (int t = 0; t < 5; ++t) {
    const auto dist = RandomSmallDistribution(rng, 2 + rng.UniformIndex(3));
    Rng stream(cfg.seed, 100 + t);
    std::vector<std::uint64_t> hits(dist.size(), 0);
    for (std::uint64_t d = 0; d < draws; ++d) {
      ++hits[dist.IndexOf(dist.SampleOne(stream))];
    }
    for (std::size_t i = 0; i < dist.size(); ++i) {
      const double p = dist.probs()[i];
      const double se = std::sqrt(p * (1 - p) / static_cast<double>(draws));
      const double z =
          std::abs(static_cast<double>(hits[i]) / draws - p) / se;
      freq.Deviation(z, Describe(dist, 0));
    }
  }
  out.push_back(freq.Result());
}

// ---- ironing ----

void IroningProperties(const VerifyConfig& cfg,
                       std::vector<PropertyResult>& out) {
  Rng rng(cfg.seed, 2);
  Check concave("ironing: hull slopes strictly decrease", 0.0);
  Check dominate("ironing: envelope >= curve, equal at hull points", 1e-12);
  Check oracle("ironing: monotone chain matches O(k^3) chord hull", 1e-12);
  Check terminal("ironing: hull ends at q=1 with the smallest ironed value",
                 1e-12);
  Check monotone("ironing: ironed value nondecreasing in value", 0.0);
  const int curves = cfg.quick ? 30 : 100;
  for (int t = 0; t < curves; ++t) {
    const auto dist = RandomSmallDistribution(rng, 1 + rng.UniformIndex(8));
    const std::string where = Describe(dist, 0);
    const auto curve = RevenueCurveOf(dist);
    const auto ironed = Iron(curve);
    const auto& h = ironed.hull_points;
    double prev_slope = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < h.size(); ++i) {
      const double slope = (h[i].revenue - h[i - 1].revenue) / (h[i].q - h[i - 1].q);
      concave.Expect(slope < prev_slope, where);
      prev_slope = slope;
    }

    const auto env = oracle::ChordEnvelope(curve);
    for (std::size_t k = 0; k < curve.breakpoints.size(); ++k) {
      const double mine = ironed.EnvelopeAt(curve.breakpoints[k].q);
      dominate.Deviation(std::max(0.0, curve.breakpoints[k].revenue - mine),
                         where);
      oracle.Deviation(std::abs(mine - env[k]), where);
    }
    for (const auto& p : h) {
      double curve_at = 0.0;
      for (const auto& b : curve.breakpoints) {
        if (b.q == p.q) curve_at = b.revenue;
      }
      dominate.Deviation(std::abs(curve_at - p.revenue), where);
    }
    oracle.Deviation(
        ironed.hull_indices == oracle::ChordHullIndices(curve) ? 0.0 : 1.0,
        where);

    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& iv : ironed.ironed_values) {
      smallest = std::min(smallest, iv.ironed);
    }
    const double last_slope =
        (h.back().revenue - h[h.size() - 2].revenue) /
        (h.back().q - h[h.size() - 2].q);
    terminal.Deviation(std::abs(h.back().q - 1.0) +
                           std::abs(last_slope - smallest),
                       where);

    for (std::size_t i = 1; i < ironed.ironed_values.size(); ++i) {
      monotone.Expect(ironed.ironed_values[i].ironed >=
                          ironed.ironed_values[i - 1].ironed,
                      where);
    }
  }
  out.push_back(concave.Result());
  out.push_back(dominate.Result());
  out.push_back(oracle.Result());
  out.push_back(terminal.Result());
  out.push_back(monotone.Result());
}

// ---- mechanisms ----

void MechanismProperties(const VerifyConfig& cfg,
                         std::vector<PropertyResult>& out) {
  Rng rng(cfg.seed, 3);
  const int max_n = cfg.quick ? 4 : 6;
  Check allocates("mechanisms: ESP allocates whenever someone clears", 0.0);
  Check anonymous("mechanisms: ESP == LSP under an anonymous reserve", 0.0);
  for (int t = 0; t < 2000; ++t) {
    const int n = RandomBuyers(rng, 1, max_n);
    std::vector<double> bids(n), reserves(n);
    for (auto& b : bids) b = static_cast<double>(rng.UniformIndex(5));
    for (auto& r : reserves) r = static_cast<double>(rng.UniformIndex(5));
    const ReserveProfile profile(reserves);
    const Outcome esp = RunEsp(bids, profile, rng);
    bool someone = false;
    for (int i = 0; i < n; ++i) someone = someone || bids[i] >= reserves[i];
    allocates.Expect(!someone || esp.winner.has_value());

    const double r = reserves[0];
    const auto anon = ReserveProfile::Anonymous(n, r);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      Rng a(seed), b(seed);
      const Outcome e = RunEsp(bids, anon, a);
      const Outcome l = RunLsp(bids, anon, b);
      anonymous.Expect(e.winner == l.winner && e.payment == l.payment);
    }
  }
  out.push_back(allocates.Result());
  out.push_back(anonymous.Result());

  {
    Check witness("mechanisms: LSP can leave the item unsold when ESP sells",
                  0.0);
    const std::vector<double> bids = {5, 3};
    const ReserveProfile reserves({6, 2});
    Rng r(cfg.seed);
    witness.Expect(!RunLsp(bids, reserves, r).winner.has_value() &&
                   RunEsp(bids, reserves, r).winner.has_value());
    out.push_back(witness.Result());
  }

  Check truthful("mechanisms: ESP truthful (exhaustive deviations)", 1e-12);
  const std::vector<double> grid = {0.0, 1.0, 2.0};
  const std::vector<double> deviations = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
  const int max_buyers = 4;
  for (int n = 1; n <= max_buyers; ++n) {
    const int reserve_sets = cfg.quick ? 3 : 8;
    for (int t = 0; t < reserve_sets; ++t) {
      std::vector<double> reserves(n);
      for (auto& r : reserves) r = 0.5 * static_cast<double>(rng.UniformIndex(6));
      const Mechanism esp = EspMechanism{ReserveProfile(reserves)};
      ForEachProfile(grid, n, [&](std::span<const double> values) {
        std::vector<double> bids(values.begin(), values.end());
        for (int i = 0; i < n; ++i) {
          const double honest =
              oracle::TieAveragedUtility(esp, bids, i, values[i]);
          for (double d : deviations) {
            bids[i] = d;
            const double lie = oracle::TieAveragedUtility(esp, bids, i, values[i]);
            truthful.Deviation(std::max(0.0, lie - honest));
          }
          bids[i] = values[i];
        }
      });
    }
  }
  out.push_back(truthful.Result());

  Check payments(
      "mechanisms: Myerson payment in [alpha/beta, n] (1e-12 relative)", 0.0);
  for (int t = 0; t < 2000; ++t) {
    const int n = RandomBuyers(rng, 2, 50);
    const auto params = RandomExampleOneParams(rng, n);
    const double mid = params.middle_value();
    const double top = params.top_value();
    const std::vector<double> levels = {0.0, 0.5 * mid, mid,
                                        0.5 * (mid + top), top, top + 1.0};
    std::vector<double> bids(RandomBuyers(rng, 1, max_n));
    for (auto& b : bids) b = levels[rng.UniformIndex(levels.size())];
    const Outcome o = RunMyersonExampleOne(bids, params, rng);
    const bool any_top = std::any_of(bids.begin(), bids.end(),
                                     [&](double b) { return b >= top; });
    if (o.winner) {
      payments.Expect(bids[*o.winner] >= mid);
      if (any_top) {
        payments.Expect(o.payment >= mid * (1.0 - 1e-12) &&
                        o.payment <= top * (1.0 + 1e-12));
      } else {
        payments.Expect(o.payment == mid);
      }
    } else {
      payments.Expect(std::all_of(bids.begin(), bids.end(),
                                  [&](double b) { return b < mid; }));
    }
  }
  out.push_back(payments.Result());
}

// ---- revenue ----

std::vector<Mechanism> ReserveMechanisms(Rng& rng, const DiscreteDistribution& dist,
                                         int n) {
  std::vector<double> values(dist.support().begin(), dist.support().end());
  values.push_back(0.0);
  std::vector<double> reserves(n), prices(n);
  for (auto& r : reserves) r = values[rng.UniformIndex(values.size())];
  for (auto& p : prices) p = values[rng.UniformIndex(values.size())];
  return {EspMechanism{ReserveProfile(reserves)},
          LspMechanism{ReserveProfile(reserves)},
          AspMechanism{values[rng.UniformIndex(values.size())]},
          SpmMechanism{ReserveProfile(prices)}};
}

void RevenueProperties(const VerifyConfig& cfg,
                       std::vector<PropertyResult>& out) {
  Rng rng(cfg.seed, 4);
  const int max_n = cfg.quick ? 4 : 6;
  const EvalConfig exact = ExactConfig();

  Check paths("revenue: symmetric enumeration == naive enumeration", 1e-12);
  for (int t = 0; t < (cfg.quick ? 10 : 30); ++t) {
    const int n = RandomBuyers(rng, 1, max_n);
    const auto dist = RandomSmallDistribution(rng, 1 + rng.UniformIndex(3));
    for (const auto& m : ReserveMechanisms(rng, dist, n)) {
      const double a = ExactExpectedRevenue(m, dist, n, exact).mean;
      const double b = ExactExpectedRevenueNaive(m, dist, n, exact).mean;
      paths.Deviation(std::abs(a - b), MechanismName(m) + " " + Describe(dist, n));
    }
  }
  out.push_back(paths.Result());

  Check agree("revenue: Monte Carlo within k standard errors of exact",
              cfg.mc_sigma);
  EvalConfig mc = exact;
  mc.mc_samples = cfg.quick ? 200'000 : cfg.mc_samples;
  for (int t = 0; t < (cfg.quick ? 2 : 3); ++t) {
    const int n = RandomBuyers(rng, 2, max_n);
    const auto dist = RandomSmallDistribution(rng, 3);
    std::vector<Mechanism> mechs = ReserveMechanisms(rng, dist, n);
    const auto params = RandomExampleOneParams(rng, n);
    mechs.push_back(MyersonExampleOneMechanism{params});
    for (std::size_t mi = 0; mi < mechs.size(); ++mi) {
      const Mechanism& m = mechs[mi];
      const bool myerson = std::holds_alternative<MyersonExampleOneMechanism>(m);
      const auto d = myerson ? ExampleOne(params) : dist;
      mc.seed = cfg.seed + 1000 * static_cast<std::uint64_t>(t) + mi;
      const auto e = ExactExpectedRevenue(m, d, n, exact);
      const auto s = McExpectedRevenue(m, d, n, mc);
      const double diff = std::abs(s.mean - e.mean);
      const double z = s.std_error > 0 ? diff / s.std_error
                                       : (diff <= 1e-12 ? 0.0 : HUGE_VAL);
      agree.Deviation(z, MechanismName(m) + " " + Describe(d, n));
    }
  }
  out.push_back(agree.Result());

  Check optimal("revenue: Myerson >= every enumerated reserve mechanism",
                1e-9);
  for (int t = 0; t < (cfg.quick ? 5 : 15); ++t) {
    const int n = RandomBuyers(rng, 1, cfg.quick ? 4 : 5);
    const auto dist = RandomSmallDistribution(rng, 3);
    const double mye = MyersonIidExact(dist, n).mean;
    const auto esp = BestReservesIid(ReserveAuction::kEsp, dist, n, exact);
    const auto lsp = BestReservesIid(ReserveAuction::kLsp, dist, n, exact);
    const auto asp = BestAnonymousReserve(dist, n, exact);
    double best = std::max({esp.revenue.mean, lsp.revenue.mean, asp.revenue.mean});
    for (const auto& m : ReserveMechanisms(rng, dist, n)) {
      best = std::max(best, ExactExpectedRevenue(m, dist, n, exact).mean);
    }
    optimal.Deviation(std::max(0.0, best - mye), Describe(dist, n));
  }
  out.push_back(optimal.Result());

  Check identity("revenue: Myerson mechanism == ironed virtual surplus", 1e-9);
  for (int n : {2, 3, 5}) {
    if (cfg.quick && n > 4) continue;
    for (int t = 0; t < 5; ++t) {
      const auto params = RandomExampleOneParams(rng, n);
      const auto dist = ExampleOne(params);
      const double enumerated =
          ExactExpectedRevenueNaive(MyersonExampleOneMechanism{params}, dist, n, exact).mean;
      identity.Deviation(std::abs(enumerated - MyersonIidExact(dist, n).mean),
                         Describe(dist, n));
    }
  }
  out.push_back(identity.Result());

  Check esp_lsp("revenue: optimal ESP >= optimal LSP", 1e-12);
  Check esp_spm("revenue: ESP with SPM prices as reserves >= SPM", 1e-12);
  for (int t = 0; t < (cfg.quick ? 10 : 25); ++t) {
    const int n = RandomBuyers(rng, 1, 4);
    const auto dist = RandomSmallDistribution(rng, 1 + rng.UniformIndex(3));
    const double esp = BestReservesIid(ReserveAuction::kEsp, dist, n, exact).revenue.mean;
    const double lsp = BestReservesIid(ReserveAuction::kLsp, dist, n, exact).revenue.mean;
    esp_lsp.Deviation(std::max(0.0, lsp - esp), Describe(dist, n));
    for (int k = 0; k < 5; ++k) {
      std::vector<double> prices(n);
      for (auto& p : prices) p = rng.UniformDouble() * (dist.max_value() + 0.5);
      const ReserveProfile profile(prices);
      const double spm =
          ExactExpectedRevenueNaive(SpmMechanism{profile}, dist, n, exact).mean;
      const double with =
          ExactExpectedRevenueNaive(EspMechanism{profile}, dist, n, exact).mean;
      esp_spm.Deviation(std::max(0.0, spm - with), Describe(dist, n));
    }
  }
  out.push_back(esp_lsp.Result());
  out.push_back(esp_spm.Result());

  Check sandwich("revenue: 0 <= two-class ESP - finite formula <= 1/n", 0.0);
  const std::vector<int> sizes =
      cfg.quick ? std::vector<int>{4} : std::vector<int>{8, 10, 12};
  for (int n : sizes) {
    const ExampleOneParams params{2.91, 1.89, n};
    const auto dist = ExampleOne(params);
    for (int k = 0; k <= n; ++k) {
      const auto reserves = ReserveProfile::TwoClass(
          n, k, params.top_value(), params.middle_value());
      const double exact_rev =
          ExactExpectedRevenue(EspMechanism{reserves}, dist, n, exact).mean;
      const double gap = exact_rev - ExampleOneEspFiniteCount(params, k);
      const double excess = std::max(-gap, gap - 1.0 / n);
      sandwich.Deviation(std::max(0.0, excess - 1e-12),
                         "n=" + std::to_string(n) + " high=" + std::to_string(k));
    }
  }
  out.push_back(sandwich.Result());
}

// ---- separation ----

void SeparationProperties(const VerifyConfig& cfg,
                          std::vector<PropertyResult>& out) {
  Rng rng(cfg.seed, 5);
  Check consistent("separation: ratio * myerev == esp bound", 1e-12);
  Check local_max("separation: z* is a local max of the ESP bound", 0.0);
  for (int t = 0; t < 1000; ++t) {
    const double alpha = 1.0 + 1e-3 + rng.UniformDouble() * 20.0;
    const double beta = 1e-3 + rng.UniformDouble() * 20.0;
    const auto bound = EspUbLimit(alpha, beta);
    const double rel = std::abs(Ratio(alpha, beta) * MyerevLimit(alpha, beta) -
                                bound.revenue) /
                       bound.revenue;
    consistent.Deviation(rel);
    if (bound.z_star > 1e-4 && bound.z_star < 1.0 - 1e-4) {
      const double here = EspLimitAtZ(alpha, beta, bound.z_star);
      local_max.Expect(here >= EspLimitAtZ(alpha, beta, bound.z_star + 1e-4) &&
                       here >= EspLimitAtZ(alpha, beta, bound.z_star - 1e-4));
    }
  }
  out.push_back(consistent.Result());
  out.push_back(local_max.Result());

  Check limit("separation: |finite myerev - limit| <= 10/n for n >= 1e3", 0.0);
  Check esp_limit("separation: max_z finite ESP <= limit bound + 1/n", 0.0);
  const double limit_value = MyerevLimit(2.91, 1.89);
  const double esp_bound = EspUbLimit(2.91, 1.89).revenue;
  for (int n : {1000, 10000, 100000, 1000000}) {
    const double finite = ExampleOneMyerevFinite({2.91, 1.89, n});
    limit.Deviation(std::max(0.0, std::abs(finite - limit_value) - 10.0 / n),
                    "n=" + std::to_string(n));
  }
  for (int n : {100, 1000, 10000}) {
    const ExampleOneParams params{2.91, 1.89, n};
    double best = 0.0;
    for (int k = 0; k <= n; ++k) {
      best = std::max(best, ExampleOneEspFiniteCount(params, k));
    }
    esp_limit.Deviation(std::max(0.0, best - esp_bound - 1.0 / n),
                        "n=" + std::to_string(n));
  }
  out.push_back(limit.Result());
  out.push_back(esp_limit.Result());

  Check minimize("separation: minimize_ratio <= ratio(2.91, 1.89)", 0.0);
  MinimizeConfig mcfg;
  if (cfg.quick) mcfg.grid.step = 0.05;
  const auto report = MinimizeRatio(mcfg);
  minimize.Deviation(std::max(0.0, report.ratio - Ratio(2.91, 1.89)));
  out.push_back(minimize.Result());
}

}  // namespace

DiscreteDistribution RandomSmallDistribution(Rng& rng, std::size_t atoms) {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(0.5 * k);
  atoms = std::clamp<std::size_t>(atoms, 1, grid.size());
  // Partial Fisher-Yates for distinct values.
  for (std::size_t i = 0; i < atoms; ++i) {
    std::swap(grid[i], grid[i + rng.UniformIndex(grid.size() - i)]);
  }
  std::vector<double> support(grid.begin(), grid.begin() + atoms);
  std::vector<double> weights(atoms);
  double total = 0.0;
  for (auto& w : weights) {
    w = 0.05 + rng.UniformDouble();
    total += w;
  }
  for (auto& w : weights) w /= total;
  return MakeDistribution(std::move(support), std::move(weights));
}

ExampleOneParams RandomExampleOneParams(Rng& rng, int n) {
  const double nd = static_cast<double>(n);
  const double beta = 0.75 + rng.UniformDouble() * (std::min(3.0, nd) - 0.75);
  const double alpha_hi = std::min(4.0, 0.99 * nd * beta);
  const double alpha = 1.0 + (0.05 + 0.95 * rng.UniformDouble()) * (alpha_hi - 1.0);
  ExampleOneParams params{alpha, beta, n};
  params.Validate();
  return params;
}

std::vector<PropertyResult> RunVerifySuite(const VerifyConfig& cfg) {
  std::vector<PropertyResult> out;
  DistributionProperties(cfg, out);
  IroningProperties(cfg, out);
  MechanismProperties(cfg, out);
  RevenueProperties(cfg, out);
  SeparationProperties(cfg, out);
  return out;
}

}  // namespace auctionsep
