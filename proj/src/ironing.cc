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

#include "auctionsep/ironing.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace auctionsep {

namespace {

constexpr double kCollinearTolerance = 1e-12;

// True when a lies on or under the chord o -> b.
bool NotAboveChord(const CurvePoint& o, const CurvePoint& a,
                   const CurvePoint& b) {
  const double ax = a.q - o.q, ay = a.revenue - o.revenue;
  const double bx = b.q - o.q, by = b.revenue - o.revenue;
  const double cross = ax * by - ay * bx;
  const double scale = std::hypot(ax, ay) * std::hypot(bx, by);
  return cross >= -kCollinearTolerance * scale;
}

}  // namespace

double IronedCurve::EnvelopeAt(double q) const {
  if (q <= hull_points.front().q) return hull_points.front().revenue;
  for (std::size_t i = 1; i < hull_points.size(); ++i) {
    const CurvePoint& a = hull_points[i - 1];
    const CurvePoint& b = hull_points[i];
    if (q <= b.q) {
      return a.revenue + (b.revenue - a.revenue) * (q - a.q) / (b.q - a.q);
    }
  }
  return hull_points.back().revenue;
}

double IronedCurve::IronedValueOf(double value) const {
  auto it = std::lower_bound(
      ironed_values.begin(), ironed_values.end(), value,
      [](const IronedValue& iv, double v) { return iv.value < v; });
  if (it == ironed_values.end() || it->value != value) {
    std::ostringstream msg;
    msg << "value " << value << " is not in the support";
    throw std::invalid_argument(msg.str());
  }
  return it->ironed;
}

RevenueCurve RevenueCurveOf(const DiscreteDistribution& dist) {
  RevenueCurve curve;
  curve.breakpoints.push_back({0.0, 0.0});
  for (std::size_t i = dist.size(); i-- > 0;) {
    const double q = i == 0 ? 1.0 : dist.TailProbability(i);
    const double price = dist.support()[i];
    curve.breakpoints.push_back({q, q * price});
    curve.segment_value.push_back(price);
  }
  return curve;
}

IronedCurve Iron(const RevenueCurve& curve) {
  const auto& pts = curve.breakpoints;
  IronedCurve ironed;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (ironed.hull_indices.size() >= 2 &&
           NotAboveChord(pts[ironed.hull_indices[ironed.hull_indices.size() - 2]],
                         pts[ironed.hull_indices.back()], pts[i])) {
      ironed.hull_indices.pop_back();
    }
    ironed.hull_indices.push_back(i);
  }
  for (std::size_t idx : ironed.hull_indices) {
    ironed.hull_points.push_back(pts[idx]);
  }

  // Curve segment k spans breakpoints k..k+1 and lies under exactly one hull
  // segment.
  std::size_t h = 0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    while (ironed.hull_indices[h + 1] < k + 1) ++h;
    const CurvePoint& a = ironed.hull_points[h];
    const CurvePoint& b = ironed.hull_points[h + 1];
    ironed.segment_slope.push_back((b.revenue - a.revenue) / (b.q - a.q));
  }

  for (std::size_t k = curve.segment_value.size(); k-- > 0;) {
    ironed.ironed_values.push_back(
        {curve.segment_value[k], ironed.segment_slope[k]});
  }
  return ironed;
}

std::vector<IronedValue> IronedVirtualValues(const DiscreteDistribution& dist) {
  return Iron(RevenueCurveOf(dist)).ironed_values;
}

}  // namespace auctionsep
