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

#include "fbauction/verify.hpp"

#include <algorithm>
#include <cmath>

#include "fbauction/payoff.hpp"

namespace fba {

std::size_t ArgmaxLowest(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] > values[best]) best = j;
  }
  return best;
}

EquilibriumCertificate CertifyFromCurves(const StrategyProfile& profile,
                                         std::span<const double> curves,
                                         std::size_t grid_size) {
  const std::size_t n = profile.size();
  if (curves.size() != n * grid_size) throw Error("payoff curves do not match the profile");
  EquilibriumCertificate cert;
  cert.gaps.resize(n);
  cert.payoffs.resize(n);
  cert.best_response_payoffs.resize(n);
  cert.best_response.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto curve = curves.subspan(a * grid_size, grid_size);
    auto w = profile[a].weights();
    double achieved = 0.0;
    for (std::size_t j = 0; j < grid_size; ++j) achieved += w[j] * curve[j];
    std::size_t br = ArgmaxLowest(curve);
    double gap = curve[br] - achieved;
    if (gap < 0.0) {
      gap = 0.0;
      ++cert.clamped_gaps;
    }
    cert.payoffs[a] = achieved;
    cert.best_response_payoffs[a] = curve[br];
    cert.best_response[a] = br;
    cert.gaps[a] = gap;
    cert.epsilon = std::max(cert.epsilon, gap);
  }
  return cert;
}

EquilibriumCertificate Certify(const StrategyProfile& profile,
                               const AuctionInstance& instance) {
  CheckProfile(profile, instance.num_agents(), instance.grid.size());
  PayoffEngine engine(instance);
  StrictCdfTable cdf = StrictCdf(profile, instance.grid);
  std::vector<double> curves;
  engine.AllCurves(cdf, /*share_opponent_sets=*/true, curves);
  return CertifyFromCurves(profile, curves, instance.grid.size());
}

double CdfDistance(const MixedStrategy& strategy,
                   const std::function<double(double)>& reference, const BidGrid& grid) {
  if (strategy.size() != grid.size()) throw Error("strategy dimension does not match grid");
  double previous = -1.0;
  double empirical = 0.0;
  double sup = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double r = reference(grid[j]);
    if (!std::isfinite(r) || r < previous) {
      throw Error("reference CDF is not non-decreasing at bid " + std::to_string(grid[j]));
    }
    previous = r;
    empirical += strategy[j];
    sup = std::max(sup, std::abs(empirical - r));
  }
  if (std::abs(previous - 1.0) > 1e-9) throw Error("reference CDF does not reach 1");
  return sup;
}

}  // namespace fba
