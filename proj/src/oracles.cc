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

#include "auctionsep/oracles.h"

#include <algorithm>
#include <cmath>

namespace auctionsep::oracle {

namespace {

constexpr double kTouchTolerance = 1e-12;

double ChordAt(const CurvePoint& a, const CurvePoint& b, double q) {
  if (b.q == a.q) return std::max(a.revenue, b.revenue);
  return a.revenue + (b.revenue - a.revenue) * (q - a.q) / (b.q - a.q);
}

double Scale(const RevenueCurve& curve) {
  double scale = 1e-300;
  for (const auto& p : curve.breakpoints) {
    scale = std::max(scale, std::abs(p.revenue));
  }
  return scale;
}

class CountingTieBreaker final : public TieBreaker {
 public:
  explicit CountingTieBreaker(std::size_t choice) : choice_(choice) {}
  std::size_t Pick(std::size_t count) override {
    count_ = count;
    return std::min(choice_, count - 1);
  }
  std::size_t count() const { return count_; }

 private:
  std::size_t choice_;
  std::size_t count_ = 1;
};

template <class Score>
double AverageOverTies(const Mechanism& mechanism, BidProfile bids,
                       Score score) {
  CountingTieBreaker first(0);
  const Outcome o = Run(mechanism, bids, first);
  double total = score(o);
  for (std::size_t c = 1; c < first.count(); ++c) {
    CountingTieBreaker forced(c);
    total += score(Run(mechanism, bids, forced));
  }
  return total / static_cast<double>(first.count());
}

}  // namespace

std::vector<double> ChordEnvelope(const RevenueCurve& curve) {
  const auto& pts = curve.breakpoints;
  std::vector<double> env(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    double best = pts[k].revenue;
    for (std::size_t i = 0; i <= k; ++i) {
      for (std::size_t j = k; j < pts.size(); ++j) {
        best = std::max(best, ChordAt(pts[i], pts[j], pts[k].q));
      }
    }
    env[k] = best;
  }
  return env;
}

std::vector<std::size_t> ChordHullIndices(const RevenueCurve& curve) {
  const auto& pts = curve.breakpoints;
  const double tol = kTouchTolerance * Scale(curve);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    bool corner = true;
    for (std::size_t i = 0; i < k && corner; ++i) {
      for (std::size_t j = k + 1; j < pts.size(); ++j) {
        if (ChordAt(pts[i], pts[j], pts[k].q) >= pts[k].revenue - tol) {
          corner = false;
          break;
        }
      }
    }
    if (corner) out.push_back(k);
  }
  return out;
}

double TieAveragedRevenue(const Mechanism& mechanism, BidProfile bids) {
  return AverageOverTies(mechanism, bids,
                         [](const Outcome& o) { return o.revenue(); });
}

double TieAveragedUtility(const Mechanism& mechanism, BidProfile bids,
                          std::size_t buyer, double value) {
  return AverageOverTies(mechanism, bids, [&](const Outcome& o) {
    return o.winner == buyer ? value - o.payment : 0.0;
  });
}

}  // namespace auctionsep::oracle
