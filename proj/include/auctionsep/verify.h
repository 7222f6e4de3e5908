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

#ifndef AUCTIONSEP_VERIFY_H_
#define AUCTIONSEP_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "auctionsep/distribution.h"
#include "auctionsep/rng.h"

namespace auctionsep {

struct VerifyConfig {
  std::uint64_t seed = 20190101;
  // Restricts every instance to n <= 4 and trims instance counts.
  bool quick = false;
  // Monte Carlo checks accept |mc - exact| <= mc_sigma * std_error.
  double mc_sigma = 3.0;
  std::uint64_t mc_samples = 1'000'000;
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  // Worst observed deviation and the largest one tolerated. For checks that
  // are pass/fail by nature, measured counts violations and tolerance is 0.
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

std::vector<PropertyResult> RunVerifySuite(const VerifyConfig& cfg);

// Random distribution with exactly `atoms` distinct atoms drawn from the grid
// {0, 0.5, 1, ..., 10} and probabilities bounded away from 0.
DiscreteDistribution RandomSmallDistribution(Rng& rng, std::size_t atoms);

// Random ExampleOne parameters valid for the given n, with alpha in (1, 4]
// and beta in [0.5, 3] shrunk as needed to satisfy the constraints.
ExampleOneParams RandomExampleOneParams(Rng& rng, int n);

}  // namespace auctionsep

#endif  // AUCTIONSEP_VERIFY_H_
