// Copyright 2026 The lowregret Authors
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

#ifndef LOWREGRET_SPECPARSE_HPP_
#define LOWREGRET_SPECPARSE_HPP_

#include <string>

#include "lowregret/adversary.hpp"
#include "lowregret/core.hpp"

namespace lowregret {

// Error in a model/adversary/config string, with the offending position
// (0-based column for one-line specs, line number for config files).
struct SpecParseError : std::runtime_error {
  SpecParseError(const std::string& message, int position)
      : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  int position;
};

// Model mini-language (numbers accept fractions like 1/3 and the symbol T
// for the horizon):
//   polya
//   const(<p1>)                              constant forecaster, P(state=1)
//   bernoulli(<p>@<round>,...)               piecewise independent bits
//   drift(phi=<number>)                      |sin(pi/6 + t*pi/phi)| bits
//   debruijn(L=<order>,flip=<bool>,eps=<x>)  near-deterministic Markov pair
//   windowed(<spec>,w=<window>)              truncate context to w
//   robust(<spec>,alpha=<a>,U=match)         one-way switch wrapper
//   alg2(<spec>,L=<l>,Lp=<lp>,alpha=<a>,mode=full|suffix)
//   vswitch(<spec>,eps=auto|<x>,delta=auto|<x>,c=<x>)
ModelPtr parse_model(const std::string& spec, int horizon, double default_alpha = 1.0);

// Adversary mini-language: flip, const(<state>), drift(phi=<number>),
// env(<model spec>).
std::shared_ptr<const AdversaryFactory> parse_adversary(const std::string& spec, int horizon,
                                                        double default_alpha = 1.0);

// Flat key=value experiment description; unknown keys are errors and flags
// override file values. canonical() round-trips through parse() unchanged.
struct ExperimentConfig {
  std::string model;
  std::string adversary;
  int horizon = 1024;
  int trials = 128;
  std::string eta = "auto";  // "auto" resolves to 1/sqrt(horizon)
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::string out;

  double resolved_eta() const;
  std::string canonical() const;

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);

  bool operator==(const ExperimentConfig&) const = default;
};

}  // namespace lowregret

#endif  // LOWREGRET_SPECPARSE_HPP_
