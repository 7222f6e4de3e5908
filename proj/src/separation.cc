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

#include "auctionsep/separation.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "auctionsep/distribution.h"
#include "auctionsep/revenue.h"

namespace auctionsep {

namespace {

constexpr double kMaxParameter = 50.0;

void CheckAlphaBeta(double alpha, double beta) {
  if (!(alpha > 1.0) || !(beta > 0.0) || !std::isfinite(alpha) ||
      !std::isfinite(beta)) {
    std::ostringstream msg;
    msg << "need alpha > 1 and beta > 0 (got alpha=" << alpha
        << ", beta=" << beta << ")";
    throw std::invalid_argument(msg.str());
  }
}

// Lexicographic tie-break keeps the scan order-independent.
bool Better(const TracePoint& a, const TracePoint& b) {
  if (a.ratio != b.ratio) return a.ratio < b.ratio;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.beta < b.beta;
}

std::size_t GridCount(double lo, double hi, double step) {
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

void CheckGrid(const GridSpec& grid) {
  if (!(grid.step > 0.0)) {
    throw std::invalid_argument("grid step must be positive");
  }
  if (!(grid.alpha_min > 1.0) || grid.alpha_max > kMaxParameter ||
      !(grid.beta_min > 0.0) || grid.beta_max > kMaxParameter) {
    throw std::invalid_argument(
        "grid bounds must lie within alpha in (1, 50], beta in (0, 50]");
  }
  if (grid.alpha_min > grid.alpha_max || grid.beta_min > grid.beta_max) {
    throw std::invalid_argument("grid is empty");
  }
}

}  // namespace

double MyerevLimit(double alpha, double beta) {
  CheckAlphaBeta(alpha, beta);
  return 1.0 + (alpha - 1.0) * -std::expm1(-beta) / beta;
}

double EspLimitAtZ(double alpha, double beta, double z) {
  CheckAlphaBeta(alpha, beta);
  if (!(z >= 0.0 && z <= 1.0)) {
    std::ostringstream msg;
    msg << "z must lie in [0, 1] (got " << z << ")";
    throw std::invalid_argument(msg.str());
  }
  return z + (alpha / beta) * -std::expm1(-beta * (1.0 - z));
}

EspBound EspUbLimit(double alpha, double beta) {
  CheckAlphaBeta(alpha, beta);
  const double z = std::clamp(1.0 - std::log(alpha) / beta, 0.0, 1.0);
  return {z, EspLimitAtZ(alpha, beta, z)};
}

double Ratio(double alpha, double beta) {
  CheckAlphaBeta(alpha, beta);
  const double z = 1.0 - std::log(alpha) / beta;
  if (z > 0.0 && z < 1.0) {
    return (beta + alpha - 1.0 - std::log(alpha)) /
           (beta + (alpha - 1.0) * -std::expm1(-beta));
  }
  return EspUbLimit(alpha, beta).revenue / MyerevLimit(alpha, beta);
}

SeparationReport EvaluateSeparation(double alpha, double beta) {
  SeparationReport report;
  report.alpha = alpha;
  report.beta = beta;
  report.myerev_limit = MyerevLimit(alpha, beta);
  const EspBound bound = EspUbLimit(alpha, beta);
  report.esp_ub_limit = bound.revenue;
  report.z_star = bound.z_star;
  report.ratio = Ratio(alpha, beta);
  return report;
}

SeparationReport MinimizeRatio(const MinimizeConfig& cfg) {
  const GridSpec& grid = cfg.grid;
  CheckGrid(grid);
  const RefineSpec& refine = cfg.refine;
  if (!(refine.initial_step > 0.0) || !(refine.min_step > 0.0)) {
    throw std::invalid_argument("refinement steps must be positive");
  }

  std::vector<TracePoint> trace;
  TracePoint best;
  if (cfg.start) {
    CheckAlphaBeta(cfg.start->alpha, cfg.start->beta);
    best = {cfg.start->alpha, cfg.start->beta,
            Ratio(cfg.start->alpha, cfg.start->beta)};
  } else {
    const std::size_t na = GridCount(grid.alpha_min, grid.alpha_max, grid.step);
    const std::size_t nb = GridCount(grid.beta_min, grid.beta_max, grid.step);
    bool have = false;
    for (std::size_t i = 0; i < na; ++i) {
      const double alpha = grid.alpha_min + static_cast<double>(i) * grid.step;
      for (std::size_t j = 0; j < nb; ++j) {
        const double beta = grid.beta_min + static_cast<double>(j) * grid.step;
        const TracePoint p{alpha, beta, Ratio(alpha, beta)};
        if (!have || Better(p, best)) {
          best = p;
          have = true;
        }
      }
    }
  }
  trace.push_back(best);

  auto in_bounds = [&](double alpha, double beta) {
    return alpha >= grid.alpha_min && alpha <= grid.alpha_max &&
           beta >= grid.beta_min && beta <= grid.beta_max;
  };

  double step = refine.initial_step;
  for (int it = 0; it < refine.max_iterations && step >= refine.min_step;
       ++it) {
    const TracePoint probes[] = {
        {best.alpha + step, best.beta, 0.0},
        {best.alpha - step, best.beta, 0.0},
        {best.alpha, best.beta + step, 0.0},
        {best.alpha, best.beta - step, 0.0},
    };
    TracePoint move = best;
    for (TracePoint p : probes) {
      if (!in_bounds(p.alpha, p.beta)) continue;
      p.ratio = Ratio(p.alpha, p.beta);
      if (p.ratio < move.ratio) move = p;
    }
    if (best.ratio - move.ratio >= refine.tolerance) {
      best = move;
      trace.push_back(best);
    } else {
      step *= 0.5;
    }
  }

  SeparationReport report = EvaluateSeparation(best.alpha, best.beta);
  report.optimizer_trace = std::move(trace);
  return report;
}

AspCorollaryReport AspCorollary(int n) {
  if (n < 2) {
    std::ostringstream msg;
    msg << "n must be at least 2 (got " << n << ")";
    throw std::invalid_argument(msg.str());
  }
  const double nd = static_cast<double>(n);
  const ExampleOneParams params{nd, nd, n};
  AspCorollaryReport report;
  report.n = n;
  report.myerev = ExampleOneMyerevFinite(params);
  report.asp_ub = std::max(ExampleOneEspFiniteCount(params, 0),
                           ExampleOneEspFiniteCount(params, n));
  report.ratio = report.asp_ub / report.myerev;
  return report;
}

}  // namespace auctionsep
