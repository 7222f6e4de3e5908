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

#ifndef AUCTIONSEP_SEPARATION_H_
#define AUCTIONSEP_SEPARATION_H_

#include <optional>
#include <vector>

namespace auctionsep {

// Large-n optimal revenue for the ExampleOne family:
// 1 + (alpha - 1)(1 - e^{-beta}) / beta. Requires alpha > 1, beta > 0.
double MyerevLimit(double alpha, double beta);

// Large-n ESP revenue bound when a fraction z of buyers is reserved at n:
// z + (alpha / beta)(1 - e^{-beta (1 - z)}). Requires z in [0, 1].
double EspLimitAtZ(double alpha, double beta, double z);

struct EspBound {
  double z_star = 0.0;
  double revenue = 0.0;
};

// Maximizer of EspLimitAtZ over z in [0, 1]: z* = 1 - ln(alpha)/beta clamped
// to [0, 1], with the bound evaluated there. For interior z* the revenue is
// 1 + (alpha - ln alpha - 1)/beta.
EspBound EspUbLimit(double alpha, double beta);

// EspUbLimit(...).revenue / MyerevLimit(...). With interior z* this is
// (beta + alpha - 1 - ln alpha) / (beta + (alpha - 1)(1 - e^{-beta})).
double Ratio(double alpha, double beta);

struct TracePoint {
  double alpha = 0.0;
  double beta = 0.0;
  double ratio = 0.0;
};

struct SeparationReport {
  double alpha = 0.0;
  double beta = 0.0;
  double myerev_limit = 0.0;
  double esp_ub_limit = 0.0;
  double z_star = 0.0;
  double ratio = 0.0;
  std::vector<TracePoint> optimizer_trace;
};

SeparationReport EvaluateSeparation(double alpha, double beta);

// Inclusive grid of (alpha, beta) points scanned before refinement.
struct GridSpec {
  double alpha_min = 1.01;
  double alpha_max = 10.0;
  double beta_min = 0.01;
  double beta_max = 10.0;
  double step = 0.01;
};

// Coordinate descent: probe +-step along each axis, move to the best probe
// that improves the ratio by at least `tolerance`, otherwise halve the step;
// stop once the step drops below `min_step`.
struct RefineSpec {
  double initial_step = 0.01;
  double min_step = 1e-5;
  double tolerance = 1e-10;
  int max_iterations = 1'000'000;
};

struct MinimizeConfig {
  GridSpec grid;
  RefineSpec refine;
  // When set, the grid scan is skipped and refinement starts here.
  std::optional<TracePoint> start;
};

// Grid scan plus coordinate descent over alpha in (1, 50], beta in (0, 50].
// The returned trace lists the grid winner followed by every accepted move.
// Throws std::invalid_argument for bounds outside the domain or an empty grid.
SeparationReport MinimizeRatio(const MinimizeConfig& cfg = {});

struct AspCorollaryReport {
  int n = 0;
  double myerev = 0.0;
  double asp_ub = 0.0;
  double ratio = 0.0;
};

// ExampleOne with alpha = beta = n at finite n: optimal revenue against the
// better of the two anonymous reserves (all at n, or all at 1).
AspCorollaryReport AspCorollary(int n);

}  // namespace auctionsep

#endif  // AUCTIONSEP_SEPARATION_H_
