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

#ifndef AUCTIONSEP_REVENUE_H_
#define AUCTIONSEP_REVENUE_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "auctionsep/distribution.h"
#include "auctionsep/mechanisms.h"

namespace auctionsep {

struct EvalConfig {
  std::uint64_t enumeration_cap = 10'000'000;
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t seed = 20190101;
  // Lets the reserve searches score candidates by Monte Carlo when exact
  // enumeration would exceed the cap.
  bool mc_fallback = false;

  void Validate() const;
};

enum class EstimateMethod { kExact, kMonteCarlo, kClosedForm };

const char* EstimateMethodName(EstimateMethod method);

struct RevenueEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  EstimateMethod method = EstimateMethod::kExact;
};

// Thrown when an exact computation would visit more outcomes than allowed.
class EnumerationCapExceeded : public std::runtime_error {
 public:
  EnumerationCapExceeded(double required, std::uint64_t cap);
  double required() const { return required_; }

 private:
  double required_;
};

// Exact expected revenue with i.i.d. values, collapsing buyers that the
// mechanism treats identically (same reserve) into multinomial value counts.
// Ties are averaged exactly.
RevenueEstimate ExactExpectedRevenue(const Mechanism& mechanism,
                                     const DiscreteDistribution& dist, int n,
                                     const EvalConfig& cfg);

// Same quantity by brute force over all support^n profiles.
RevenueEstimate ExactExpectedRevenueNaive(const Mechanism& mechanism,
                                          const DiscreteDistribution& dist,
                                          int n, const EvalConfig& cfg);

// Sample mean over cfg.mc_samples profiles with uniform random tie-breaking.
// Samples are split into fixed blocks, each with its own RNG stream, so the
// result depends only on cfg.seed and cfg.mc_samples.
RevenueEstimate McExpectedRevenue(const Mechanism& mechanism,
                                  const DiscreteDistribution& dist, int n,
                                  const EvalConfig& cfg);

// Optimal i.i.d. revenue E[max(0, max_i ironed(v_i))].
RevenueEstimate MyersonIidExact(const DiscreteDistribution& dist, int n);

// Closed-form optimal revenue for ExampleOne at finite n:
//   n(1 - (1 - 1/n^2)^n) + (alpha - 1)/(beta - 1/n) ((1 - 1/n^2)^n - (1 - beta/n)^n)
double ExampleOneMyerevFinite(const ExampleOneParams& params);

// ESP revenue for ExampleOne with `high_count` buyers reserved at n and the
// rest at alpha/beta, counting only the events "some high-reserve buyer
// clears" (revenue n) and "otherwise some low-reserve buyer clears" (revenue
// alpha/beta):
//   n(1 - (1 - 1/n^2)^{zn}) + (alpha/beta)(1 - 1/n^2)^{zn}(1 - (1 - beta/n)^{(1-z)n}).
// The omitted upgrade when two low-reserve buyers both bid n is worth at most
// 1/n, so the true revenue lies in [value, value + 1/n].
double ExampleOneEspFiniteCount(const ExampleOneParams& params, int high_count);
// As above with z = high_count / n; z * n must be an integer.
double ExampleOneEspFinite(const ExampleOneParams& params, double z);

enum class ReserveAuction { kEsp, kLsp };

struct ReserveSearchResult {
  // Best reserve multiset, descending.
  std::vector<double> reserves;
  RevenueEstimate revenue;
  std::uint64_t candidates_scored = 0;
};

// Best personalized reserves restricted to support values plus 0. Only the
// count of buyers per reserve level matters under i.i.d. values, so the
// search runs over class-count vectors; ties keep the vector that puts more
// buyers at higher reserves.
ReserveSearchResult BestReservesIid(ReserveAuction auction,
                                    const DiscreteDistribution& dist, int n,
                                    const EvalConfig& cfg);
ReserveSearchResult BestEspReservesIid(const DiscreteDistribution& dist, int n,
                                       const EvalConfig& cfg);

struct AnonymousReserveResult {
  double reserve = 0.0;
  RevenueEstimate revenue;
};

// Best anonymous reserve over support values plus 0; ties keep the higher
// reserve.
AnonymousReserveResult BestAnonymousReserve(const DiscreteDistribution& dist,
                                            int n, const EvalConfig& cfg);

}  // namespace auctionsep

#endif  // AUCTIONSEP_REVENUE_H_
