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

#ifndef AUCTIONSEP_DISTRIBUTION_H_
#define AUCTIONSEP_DISTRIBUTION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "auctionsep/rng.h"

namespace auctionsep {

// Tolerance on |sum(probs) - 1| accepted at construction.
inline constexpr double kProbabilitySumTolerance = 1e-12;

// A valuation distribution with finitely many atoms. Always held in canonical
// form: support strictly ascending, no zero-probability atoms.
class DiscreteDistribution {
 public:
  // Validates and canonicalizes. Duplicate support values are merged by
  // summing their probabilities and zero-probability atoms are dropped.
  // Throws std::invalid_argument on negative values, negative probabilities,
  // mismatched lengths or probabilities not summing to 1.
  static DiscreteDistribution Make(std::vector<double> support,
                                   std::vector<double> probs);

  std::span<const double> support() const { return support_; }
  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return support_.size(); }

  double min_value() const { return support_.front(); }
  double max_value() const { return support_.back(); }

  // P(v >= support()[index]).
  double TailProbability(std::size_t index) const { return tail_[index]; }

  // Index of the atom at `value`, or size() when `value` is not an atom.
  std::size_t IndexOf(double value) const;

  double Mean() const;

  // One inverse-CDF draw.
  double SampleOne(Rng& rng) const;

 private:
  DiscreteDistribution() = default;

  std::vector<double> support_;
  std::vector<double> probs_;
  std::vector<double> tail_;  // tail_[i] = P(v >= support_[i]); tail_[0] = 1
  std::vector<double> cdf_;   // cdf_[i] = P(v <= support_[i]); cdf_.back() = 1
};

inline DiscreteDistribution MakeDistribution(std::vector<double> support,
                                             std::vector<double> probs) {
  return DiscreteDistribution::Make(std::move(support), std::move(probs));
}

// Parameters of the three-point family
//   v = n w.p. 1/n^2,  alpha/beta w.p. beta/n - 1/n^2,  0 w.p. 1 - beta/n
// where the buyer count n doubles as the top support value.
struct ExampleOneParams {
  double alpha = 0.0;
  double beta = 0.0;
  int n = 0;

  // Throws std::invalid_argument naming the first violated constraint.
  void Validate() const;

  double middle_value() const { return alpha / beta; }
  double top_value() const { return static_cast<double>(n); }
};

DiscreteDistribution ExampleOne(const ExampleOneParams& params);

// Largest support value p with P(v >= p) >= q, i.e. F^{-1}(1 - q) read as
// the highest price that sells with probability at least q. Requires
// 0 < q <= 1. Sale probabilities are compared with a 1e-12 relative slack so
// that q values rebuilt from the atoms resolve to the intended price.
double QuantilePrice(const DiscreteDistribution& dist, double q);

// `count` i.i.d. inverse-CDF draws.
std::vector<double> Sample(const DiscreteDistribution& dist, Rng& rng,
                           std::size_t count);

}  // namespace auctionsep

#endif  // AUCTIONSEP_DISTRIBUTION_H_
