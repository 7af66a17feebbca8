// Copyright 2026 The fbauction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FBAUCTION_VERIFY_HPP_
#define FBAUCTION_VERIFY_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fbauction/model.hpp"

namespace fba {

// epsilon-Nash certificate on the bid grid. A deviation payoff is linear in
// the deviator's mixed strategy, so checking pure grid bids is exhaustive.
struct EquilibriumCertificate {
  double epsilon = 0.0;
  std::vector<double> gaps;                   // best-response payoff - achieved
  std::vector<double> payoffs;                // achieved (mixed) payoffs
  std::vector<double> best_response_payoffs;  // max of the payoff curve
  std::vector<std::size_t> best_response;     // lowest argmax grid index
  std::size_t clamped_gaps = 0;               // negative round-off gaps set to 0
};

// Lowest index attaining the maximum.
std::size_t ArgmaxLowest(std::span<const double> values);

// Certificate from precomputed payoff curves (row-major, agent x grid).
EquilibriumCertificate CertifyFromCurves(const StrategyProfile& profile,
                                         std::span<const double> curves,
                                         std::size_t grid_size);

EquilibriumCertificate Certify(const StrategyProfile& profile,
                               const AuctionInstance& instance);

// sup over grid points of |P(bid <= b) - reference(b)|. The reference must be
// non-decreasing on the grid and reach 1 at the top of the grid.
double CdfDistance(const MixedStrategy& strategy,
                   const std::function<double(double)>& reference,
                   const BidGrid& grid);

}  // namespace fba

#endif  // FBAUCTION_VERIFY_HPP_
