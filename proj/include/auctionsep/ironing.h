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

#ifndef AUCTIONSEP_IRONING_H_
#define AUCTIONSEP_IRONING_H_

#include <cstddef>
#include <vector>

#include "auctionsep/distribution.h"

namespace auctionsep {

struct CurvePoint {
  double q = 0.0;
  double revenue = 0.0;
};

// Single-buyer revenue curve R(q) = q * F^{-1}(1 - q) in quantile space.
// breakpoints[0] is (0, 0) and breakpoints.back().q == 1. On the interval
// (breakpoints[k].q, breakpoints[k + 1].q] the posted price is
// segment_value[k], so segment_value runs from the highest support value down
// to the lowest.
struct RevenueCurve {
  std::vector<CurvePoint> breakpoints;
  std::vector<double> segment_value;
};

struct IronedValue {
  double value = 0.0;
  double ironed = 0.0;
};

// Upper concave envelope of a RevenueCurve.
struct IronedCurve {
  std::vector<CurvePoint> hull_points;
  // Index into RevenueCurve::breakpoints of each hull point.
  std::vector<std::size_t> hull_indices;
  // Envelope slope over each curve segment, aligned with segment_value.
  std::vector<double> segment_slope;
  // Ironed virtual value per support value, ascending by value.
  std::vector<IronedValue> ironed_values;

  // Envelope height at q in [0, 1].
  double EnvelopeAt(double q) const;
  // Ironed virtual value of a support value; throws std::invalid_argument
  // when `value` is not one.
  double IronedValueOf(double value) const;
};

RevenueCurve RevenueCurveOf(const DiscreteDistribution& dist);

// Monotone-chain upper hull over the breakpoints. Collinear interior points
// (within 1e-12 relative) are dropped, so hull slopes strictly decrease.
IronedCurve Iron(const RevenueCurve& curve);

// Iron(RevenueCurveOf(dist)).ironed_values.
std::vector<IronedValue> IronedVirtualValues(const DiscreteDistribution& dist);

}  // namespace auctionsep

#endif  // AUCTIONSEP_IRONING_H_
