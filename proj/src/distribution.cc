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

#include "auctionsep/distribution.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace auctionsep {

namespace {

constexpr double kQuantileSlack = 1e-12;

[[noreturn]] void Reject(const std::string& message) {
  throw std::invalid_argument(message);
}

}  // namespace

DiscreteDistribution DiscreteDistribution::Make(std::vector<double> support,
                                                std::vector<double> probs) {
  if (support.size() != probs.size()) {
    std::ostringstream msg;
    msg << "support has " << support.size() << " values but probs has "
        << probs.size();
    Reject(msg.str());
  }
  if (support.empty()) Reject("distribution needs at least one atom");

  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!std::isfinite(support[i]) || support[i] < 0.0) {
      std::ostringstream msg;
      msg << "support value " << support[i] << " at index " << i
          << " is negative or not finite";
      Reject(msg.str());
    }
    if (!std::isfinite(probs[i]) || probs[i] < 0.0) {
      std::ostringstream msg;
      msg << "probability " << probs[i] << " at index " << i
          << " is negative or not finite";
      Reject(msg.str());
    }
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << total << ", not 1";
    Reject(msg.str());
  }

  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return support[a] < support[b];
  });

  DiscreteDistribution dist;
  for (std::size_t i : order) {
    if (probs[i] == 0.0) continue;
    if (!dist.support_.empty() && dist.support_.back() == support[i]) {
      dist.probs_.back() += probs[i];
    } else {
      dist.support_.push_back(support[i]);
      dist.probs_.push_back(probs[i]);
    }
  }
  if (dist.support_.empty()) Reject("all probabilities are zero");

  const std::size_t k = dist.support_.size();
  dist.tail_.assign(k, 0.0);
  dist.cdf_.assign(k, 0.0);
  double acc = 0.0;
  for (std::size_t i = k; i-- > 0;) {
    acc += dist.probs_[i];
    dist.tail_[i] = acc;
  }
  dist.tail_[0] = 1.0;
  acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    acc += dist.probs_[i];
    dist.cdf_[i] = acc;
  }
  dist.cdf_[k - 1] = 1.0;
  return dist;
}

std::size_t DiscreteDistribution::IndexOf(double value) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), value);
  if (it == support_.end() || *it != value) return support_.size();
  return static_cast<std::size_t>(it - support_.begin());
}

double DiscreteDistribution::Mean() const {
  double mean = 0.0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    mean += support_[i] * probs_[i];
  }
  return mean;
}

double DiscreteDistribution::SampleOne(Rng& rng) const {
  const double u = rng.UniformDouble();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return support_[static_cast<std::size_t>(it - cdf_.begin())];
}

void ExampleOneParams::Validate() const {
  const double nd = static_cast<double>(n);
  const bool ok = alpha > 1.0 && beta > 0.0 && n >= 2 && beta / nd <= 1.0 &&
                  1.0 / (nd * nd) <= beta / nd && alpha / beta < nd;
  if (ok) return;

  std::ostringstream msg;
  msg.precision(17);
  if (!(alpha > 1.0)) {
    msg << "alpha must exceed 1 (got " << alpha << ")";
  } else if (!(beta > 0.0)) {
    msg << "beta must be positive (got " << beta << ")";
  } else if (n < 2) {
    msg << "n must be at least 2 (got " << n << ")";
  } else if (beta / nd > 1.0) {
    msg << "beta/n must be at most 1 (beta=" << beta << ", n=" << n << ")";
  } else if (1.0 / (nd * nd) > beta / nd) {
    msg << "1/n^2 must not exceed beta/n (beta=" << beta << ", n=" << n << ")";
  } else {
    msg << "alpha/beta must be below n (alpha/beta=" << alpha / beta
        << ", n=" << n << ")";
  }
  Reject(msg.str());
}

DiscreteDistribution ExampleOne(const ExampleOneParams& params) {
  params.Validate();
  const double nd = params.top_value();
  const double top = 1.0 / (nd * nd);
  const double middle = params.beta / nd - top;
  const double zero = 1.0 - params.beta / nd;
  return DiscreteDistribution::Make({0.0, params.middle_value(), nd},
                                    {zero, middle, top});
}

double QuantilePrice(const DiscreteDistribution& dist, double q) {
  if (!(q > 0.0 && q <= 1.0)) {
    std::ostringstream msg;
    msg << "quantile " << q << " is outside (0, 1]";
    Reject(msg.str());
  }
  for (std::size_t i = dist.size(); i-- > 0;) {
    if (dist.TailProbability(i) >= q * (1.0 - kQuantileSlack)) {
      return dist.support()[i];
    }
  }
  return 0.0;
}

std::vector<double> Sample(const DiscreteDistribution& dist, Rng& rng,
                           std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(dist.SampleOne(rng));
  return out;
}

}  // namespace auctionsep
