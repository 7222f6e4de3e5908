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

#ifndef AUCTIONSEP_ORACLES_H_
#define AUCTIONSEP_ORACLES_H_

// Slow reference computations used to cross-check the fast paths. They share
// no code with the implementations they check.

#include <cstddef>
#include <vector>

#include "auctionsep/ironing.h"
#include "auctionsep/mechanisms.h"

namespace auctionsep::oracle {

// Envelope height at every breakpoint: the highest chord between two
// breakpoints that straddle it. O(k^3).
std::vector<double> ChordEnvelope(const RevenueCurve& curve);

// Breakpoints that are corners of the envelope: touching it and not inside
// any chord that reaches them. Endpoints always qualify.
std::vector<std::size_t> ChordHullIndices(const RevenueCurve& curve);

// Revenue averaged by running the mechanism once per tie resolution.
double TieAveragedRevenue(const Mechanism& mechanism, BidProfile bids);

// Expected utility of `buyer` with true value `value` when the profile is
// `bids`, averaged over tie resolutions.
double TieAveragedUtility(const Mechanism& mechanism, BidProfile bids,
                          std::size_t buyer, double value);

}  // namespace auctionsep::oracle

#endif  // AUCTIONSEP_ORACLES_H_
