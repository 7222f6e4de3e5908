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

// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails. Every tolerance is pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "auctionsep/distribution.h"
#include "auctionsep/ironing.h"
#include "auctionsep/mechanisms.h"
#include "auctionsep/oracles.h"
#include "auctionsep/revenue.h"
#include "auctionsep/rng.h"
#include "auctionsep/separation.h"
#include "auctionsep/verify.h"
#include "cli.h"
#include "json.hpp"

namespace auctionsep {
namespace {

using Json = nlohmann::json;

constexpr double kAlpha = 2.91;
constexpr double kBeta = 1.89;
constexpr std::uint64_t kSeed = 20190101;

// Slack for comparisons that hold exactly in real arithmetic.
constexpr double kRoundoff = 1e-12;
// Tolerance for revenue comparisons between independently computed sums.
constexpr double kRevenueTol = 1e-9;

struct Verdict {
  bool passed = true;
  // Measurements reported whether or not the criterion passes.
  std::ostringstream detail;

  // Records a failing sub-check; keeps the first three messages.
  void Fail(const std::string& what) {
    if (failures_ < 3) failures_text_ << (failures_ ? "; " : "") << what;
    passed = false;
    ++failures_;
  }
  void Expect(bool ok, const std::string& what) {
    if (!ok) Fail(what);
  }

  std::string Summary() const {
    std::string text = detail.str();
    if (!passed) {
      text += " | " + failures_text_.str();
      if (failures_ > 3) text += " (" + std::to_string(failures_) + " failures)";
    }
    return text;
  }

 private:
  int failures_ = 0;
  std::ostringstream failures_text_;
};

std::string Fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

std::string Describe(const DiscreteDistribution& dist, int n) {
  std::ostringstream s;
  s.precision(6);
  s << "n=" << n << " support={";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    s << (i ? "," : "") << dist.support()[i] << ":" << dist.probs()[i];
  }
  s << "}";
  return s.str();
}

Json CallCli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = cli::Dispatch(args, out, err);
  if (status != 0) {
    throw std::runtime_error("cli exited with " + std::to_string(status) + ": " +
                             err.str());
  }
  return Json::parse(out.str());
}

EvalConfig ExactConfig() {
  EvalConfig cfg;
  cfg.seed = kSeed;
  return cfg;
}

// ---- criteria ----

void PointSeparation(Verdict& v, double seconds_limit, double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  const Json j = CallCli({"separation", "--alpha", "2.91", "--beta", "1.89"});
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
  const double ratio = j["report"]["ratio"].get<double>();
  v.detail << "ratio=" << Fmt(ratio);
  v.Expect(ratio < 0.778, "ratio not below 0.778");
  v.Expect(std::abs(ratio - 0.77798) <= 1e-5, "ratio far from 0.77798");
  v.Expect(seconds < seconds_limit, "too slow");
}

void OptimizerSeparation(Verdict& v, double seconds_limit, double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  const Json j = CallCli({"separation", "--optimize"});
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
  const auto& r = j["report"];
  const double ratio = r["ratio"].get<double>();
  const double alpha = r["alpha"].get<double>();
  const double beta = r["beta"].get<double>();
  v.detail << "ratio*=" << Fmt(ratio) << " at (" << Fmt(alpha) << ", " << Fmt(beta)
           << ")";
  v.Expect(ratio <= 0.778, "ratio* above 0.778");
  v.Expect(std::abs(alpha - 2.91) <= 0.05 && std::abs(beta - 1.89) <= 0.05,
           "argmin outside +-0.05 of (2.91, 1.89)");
  v.Expect(seconds < seconds_limit, "too slow");
}

void MyersonConvergence(Verdict& v) {
  const double limit = MyerevLimit(kAlpha, kBeta);
  double previous = HUGE_VAL;
  for (int n : {100, 1000, 10000, 1000000}) {
    const double finite = ExampleOneMyerevFinite({kAlpha, kBeta, n});
    const double error = std::abs(finite - limit);
    v.Expect(error < previous, "error not decreasing at n=" + std::to_string(n));
    previous = error;
    if (n == 1000000) {
      v.detail << "finite(1e6)=" << Fmt(finite) << " limit=" << Fmt(limit);
      v.Expect(std::abs(finite - 1.85792) <= 1e-3, "finite(1e6) not within 1e-3");
    }
  }
}

void EspSandwich(Verdict& v) {
  const EvalConfig exact = ExactConfig();
  double worst_low = HUGE_VAL, worst_high = -HUGE_VAL;
  for (int n : {8, 10, 12}) {
    const ExampleOneParams params{kAlpha, kBeta, n};
    const auto dist = ExampleOne(params);
    for (int k = 0; k <= n; ++k) {
      const auto reserves = ReserveProfile::TwoClass(n, k, params.top_value(),
                                                     params.middle_value());
      const double enumerated =
          ExactExpectedRevenue(EspMechanism{reserves}, dist, n, exact).mean;
      const double gap = enumerated - ExampleOneEspFiniteCount(params, k);
      worst_low = std::min(worst_low, gap);
      worst_high = std::max(worst_high, gap * n);
      v.Expect(gap >= -kRoundoff && gap <= 1.0 / n + kRoundoff,
               "gap " + Fmt(gap) + " at n=" + std::to_string(n) +
                   " k=" + std::to_string(k));
    }
  }
  const double bound = EspUbLimit(kAlpha, kBeta).revenue;
  for (int n : {100, 1000, 10000}) {
    const ExampleOneParams params{kAlpha, kBeta, n};
    double best = -HUGE_VAL;
    for (int k = 0; k <= n; ++k) {
      best = std::max(best, ExampleOneEspFiniteCount(params, k));
    }
    v.Expect(best <= bound + 1.0 / n,
             "max finite " + Fmt(best) + " above bound at n=" + std::to_string(n));
  }
  v.detail << "min gap=" << Fmt(worst_low)
           << " max n*gap=" << Fmt(worst_high);
}

void MyersonIdentity(Verdict& v, double seconds_limit, double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  const EvalConfig exact = ExactConfig();
  Rng rng(kSeed, 5);
  double worst = 0.0;
  for (int n : {2, 3, 5}) {
    for (int t = 0; t < 5; ++t) {
      const auto params = RandomExampleOneParams(rng, n);
      const auto dist = ExampleOne(params);
      const double enumerated =
          ExactExpectedRevenueNaive(MyersonExampleOneMechanism{params}, dist, n, exact)
              .mean;
      const double diff = std::abs(enumerated - MyersonIidExact(dist, n).mean);
      worst = std::max(worst, diff);
      v.Expect(diff <= kRevenueTol, "mismatch " + Fmt(diff) + " " + Describe(dist, n));
    }
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
  v.detail << "max |diff|=" << Fmt(worst);
  v.Expect(seconds < seconds_limit, "too slow");
}

void AspCorollaryCheck(Verdict& v) {
  const Json small = CallCli({"separation", "--asp-corollary", "--n", "1000"})
                         ["asp_corollary"];
  const double myerev = small["myerev"].get<double>();
  const double asp = small["asp_ub"].get<double>();
  const double ratio = small["ratio"].get<double>();
  v.Expect(std::abs(myerev - 2.0) <= 0.01, "Myerson not within 0.01 of 2");
  v.Expect(std::abs(asp - 1.0) <= 0.01, "ASP not within 0.01 of 1");
  v.Expect(std::abs(ratio - 0.5) <= 0.02, "ratio not within 0.02 of 1/2");
  const double big = CallCli({"separation", "--asp-corollary", "--n", "1000000"})
                         ["asp_corollary"]["ratio"]
                             .get<double>();
  v.Expect(std::abs(big - 0.5) <= 1e-4, "ratio at 1e6 not within 1e-4 of 1/2");
  v.detail << "n=1e3: myerev=" << Fmt(myerev)
           << " asp=" << Fmt(asp) << " ratio=" << Fmt(ratio)
           << "; n=1e6: ratio=" << Fmt(big);
}

void MonteCarloAgreement(Verdict& v, double seconds_limit, double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  const EvalConfig exact = ExactConfig();
  // Every Monte Carlo run uses the same fixed seed.
  EvalConfig mc = exact;
  mc.mc_samples = 1'000'000;
  mc.seed = kSeed;
  Rng rng(kSeed, 7);
  double worst = 0.0;
  int checks = 0;
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + static_cast<int>(rng.UniformIndex(5));
    const auto dist = RandomSmallDistribution(rng, 3);
    std::vector<double> values(dist.support().begin(), dist.support().end());
    values.push_back(0.0);
    std::vector<double> reserves(n), prices(n);
    for (auto& r : reserves) r = values[rng.UniformIndex(values.size())];
    for (auto& p : prices) p = values[rng.UniformIndex(values.size())];
    const auto params = RandomExampleOneParams(rng, n);
    const std::vector<Mechanism> mechs = {
        EspMechanism{ReserveProfile(reserves)},
        LspMechanism{ReserveProfile(reserves)},
        AspMechanism{values[rng.UniformIndex(values.size())]},
        SpmMechanism{ReserveProfile(prices)},
        MyersonExampleOneMechanism{params}};
    for (std::size_t mi = 0; mi < mechs.size(); ++mi) {
      const Mechanism& m = mechs[mi];
      const bool myerson = std::holds_alternative<MyersonExampleOneMechanism>(m);
      const auto d = myerson ? ExampleOne(params) : dist;
      const double e = ExactExpectedRevenue(m, d, n, exact).mean;
      const auto s = McExpectedRevenue(m, d, n, mc);
      const double diff = std::abs(s.mean - e);
      const double z = s.std_error > 0 ? diff / s.std_error
                                       : (diff <= kRoundoff ? 0.0 : HUGE_VAL);
      worst = std::max(worst, z);
      ++checks;
      v.Expect(z <= 3.0, MechanismName(m) + " z=" + Fmt(z) + " " + Describe(d, n));
    }
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
  v.detail << checks << " comparisons, max z=" << Fmt(worst);
  v.Expect(seconds < seconds_limit, "too slow");
}

void Dominance(Verdict& v) {
  const EvalConfig exact = ExactConfig();
  Rng rng(kSeed, 8);
  int comparisons = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(rng.UniformIndex(4));
    const auto dist = RandomSmallDistribution(rng, 1 + rng.UniformIndex(3));
    const std::string where = Describe(dist, n);
    const double myerson = MyersonIidExact(dist, n).mean;
    const double esp = BestReservesIid(ReserveAuction::kEsp, dist, n, exact).revenue.mean;
    const double lsp = BestReservesIid(ReserveAuction::kLsp, dist, n, exact).revenue.mean;
    v.Expect(esp >= lsp - kRevenueTol, "ESP < LSP " + where);
    v.Expect(myerson >= esp - kRevenueTol, "Myerson < ESP " + where);
    v.Expect(myerson >= lsp - kRevenueTol, "Myerson < LSP " + where);
    comparisons += 3;
    std::vector<double> values(dist.support().begin(), dist.support().end());
    values.push_back(0.0);
    for (int k = 0; k < 20; ++k) {
      // Alternate between atom-valued prices (which create ties with bids)
      // and continuous prices.
      std::vector<double> prices(n);
      for (auto& p : prices) {
        p = k % 2 == 0 ? values[rng.UniformIndex(values.size())]
                       : rng.UniformDouble() * (dist.max_value() + 0.5);
      }
      const ReserveProfile profile(prices);
      const double spm = ExactExpectedRevenue(SpmMechanism{profile}, dist, n, exact).mean;
      const double with =
          ExactExpectedRevenue(EspMechanism{profile}, dist, n, exact).mean;
      v.Expect(with >= spm - kRevenueTol, "ESP(prices) < SPM " + where);
      v.Expect(myerson >= spm - kRevenueTol, "Myerson < SPM " + where);
      v.Expect(myerson >= with - kRevenueTol, "Myerson < ESP(prices) " + where);
      comparisons += 3;
    }
  }
  v.detail << comparisons << " comparisons";
}

void Ironing(Verdict& v) {
  Rng rng(kSeed, 9);
  for (int t = 0; t < 100; ++t) {
    const auto dist = RandomSmallDistribution(rng, 1 + rng.UniformIndex(8));
    const std::string where = Describe(dist, 1);
    const auto curve = RevenueCurveOf(dist);
    const auto ironed = Iron(curve);
    v.Expect(ironed.hull_indices == oracle::ChordHullIndices(curve),
             "hull differs " + where);
    const auto envelope = oracle::ChordEnvelope(curve);
    double scale = 1.0;
    for (const auto& p : curve.breakpoints) scale = std::max(scale, std::abs(p.revenue));
    for (std::size_t i = 0; i < curve.breakpoints.size(); ++i) {
      const auto& p = curve.breakpoints[i];
      const double h = ironed.EnvelopeAt(p.q);
      v.Expect(std::abs(h - envelope[i]) <= kRoundoff * scale,
               "envelope differs " + where);
      v.Expect(h >= p.revenue - kRoundoff * scale, "envelope below curve " + where);
    }
    for (std::size_t i : ironed.hull_indices) {
      const auto& p = curve.breakpoints[i];
      v.Expect(std::abs(ironed.EnvelopeAt(p.q) - p.revenue) <= kRoundoff * scale,
               "envelope off a hull point " + where);
    }
    const auto& hull = ironed.hull_points;
    double previous = HUGE_VAL;
    for (std::size_t i = 1; i < hull.size(); ++i) {
      const double slope =
          (hull[i].revenue - hull[i - 1].revenue) / (hull[i].q - hull[i - 1].q);
      v.Expect(slope < previous, "hull not strictly concave " + where);
      previous = slope;
    }
  }

  for (int n : {10, 100, 1000}) {
    const double nd = n;
    const ExampleOneParams params{kAlpha, kBeta, n};
    const auto ironed = Iron(RevenueCurveOf(ExampleOne(params)));
    const std::vector<CurvePoint> expected = {
        {0.0, 0.0}, {1 / (nd * nd), 1 / nd}, {kBeta / nd, kAlpha / nd}, {1.0, 0.0}};
    const std::string where = "example n=" + std::to_string(n);
    if (ironed.hull_points.size() != expected.size()) {
      v.Fail("breakpoint count " + where);
      continue;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      v.Expect(std::abs(ironed.hull_points[i].q - expected[i].q) <= kRoundoff &&
                   std::abs(ironed.hull_points[i].revenue - expected[i].revenue) <=
                       kRoundoff,
               "breakpoint " + std::to_string(i) + " " + where);
    }
    const double top = ironed.IronedValueOf(nd);
    const double middle = ironed.IronedValueOf(params.middle_value());
    const double bottom = ironed.IronedValueOf(0.0);
    v.Expect(std::abs(top - nd) <= kRoundoff * nd, "top slope " + where);
    v.Expect(std::abs(middle - (kAlpha - 1) / (kBeta - 1 / nd)) <= kRoundoff,
             "middle slope " + where);
    v.Expect(bottom < 0.0, "bottom slope not negative " + where);
  }
  v.detail << "100 random curves, 3 example curves";
}

}  // namespace
}  // namespace auctionsep

int main() {
  using namespace auctionsep;
  struct Criterion {
    const char* name;
    std::function<void(Verdict&, double&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 point separation ratio < 0.778 in < 1 s",
       [](Verdict& v, double& s) { PointSeparation(v, 1.0, s); }},
      {"2 optimizer ratio* <= 0.778 near (2.91, 1.89) in < 30 s",
       [](Verdict& v, double& s) { OptimizerSeparation(v, 30.0, s); }},
      {"3 finite Myerson revenue converges to 1.85792",
       [](Verdict& v, double&) { MyersonConvergence(v); }},
      {"4 two-class ESP finite/limit sandwich",
       [](Verdict& v, double&) { EspSandwich(v); }},
      {"5 Myerson mechanism equals ironed virtual surplus in < 10 s",
       [](Verdict& v, double& s) { MyersonIdentity(v, 10.0, s); }},
      {"6 ASP corollary approaches 1/2",
       [](Verdict& v, double&) { AspCorollaryCheck(v); }},
      {"7 Monte Carlo within 3 s.e. of exact in < 60 s",
       [](Verdict& v, double& s) { MonteCarloAgreement(v, 60.0, s); }},
      {"8 dominance: ESP >= LSP, ESP(prices) >= SPM, Myerson >= all",
       [](Verdict& v, double&) { Dominance(v); }},
      {"9 ironing hull matches brute force and the example",
       [](Verdict& v, double&) { Ironing(v); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    double seconds = 0.0;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(v, seconds);
    } catch (const std::exception& e) {
      v.Fail(std::string("exception: ") + e.what());
    }
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.passed) ++failed;
    std::printf("%s criterion %s (%.3f s): %s\n", v.passed ? "PASS" : "FAIL", c.name,
                seconds > 0 ? seconds : total, v.Summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
