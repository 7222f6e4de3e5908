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

#ifndef AUCTIONSEP_TOOLS_CLI_H_
#define AUCTIONSEP_TOOLS_CLI_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "auctionsep/distribution.h"
#include "auctionsep/mechanisms.h"

namespace auctionsep::cli {

// Runs one command line (without the program name). Results go to `out`,
// usage and error text to `err`. Returns the process exit status.
int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

struct ParsedDistribution {
  DiscreteDistribution dist;
  std::optional<ExampleOneParams> family;
};

// Accepts inline JSON or a path to a JSON file holding
//   {"support": [...], "probs": [...]},
//   {"family": "example_one", "alpha": a, "beta": b, "n": n}, or
//   either of those under a top-level "distribution" key (iron output).
ParsedDistribution ParseDistribution(const std::string& text_or_path);

// Comma/space separated numbers, a JSON array, or a file holding either.
std::vector<double> ParseNumberList(const std::string& text_or_path);

// "r1,r2,...", "anonymous:r" or "two-class:count_high,r_high,r_low". The
// tokens HIGH and LOW stand for the ExampleOne values n and alpha/beta.
ReserveProfile ParseReserves(const std::string& spec, std::size_t buyers,
                             const std::optional<ExampleOneParams>& family);

}  // namespace auctionsep::cli

#endif  // AUCTIONSEP_TOOLS_CLI_H_
