// Copyright 2026 The ksbell Authors
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

#include "ksbell/stats.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace ksbell {

ChiSquareResult chi_square_homogeneity(std::span<const std::uint64_t> first,
                                       std::span<const std::uint64_t> second) {
  if (first.size() != second.size()) {
    throw std::invalid_argument("count rows must have the same number of categories");
  }
  double n1 = 0, n2 = 0;
  for (std::size_t k = 0; k < first.size(); ++k) {
    n1 += static_cast<double>(first[k]);
    n2 += static_cast<double>(second[k]);
  }
  ChiSquareResult r;
  if (n1 == 0 || n2 == 0) return r;
  const double total = n1 + n2;
  int categories = 0;
  for (std::size_t k = 0; k < first.size(); ++k) {
    const double col = static_cast<double>(first[k] + second[k]);
    if (col == 0) continue;
    ++categories;
    const double e1 = n1 * col / total;
    const double e2 = n2 * col / total;
    r.statistic += std::pow(static_cast<double>(first[k]) - e1, 2) / e1 +
                   std::pow(static_cast<double>(second[k]) - e2, 2) / e2;
  }
  r.degrees_of_freedom = categories - 1;
  if (r.degrees_of_freedom < 1) return r;
  const boost::math::chi_squared dist(r.degrees_of_freedom);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

double binomial_sigma(double p, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("binomial sigma needs trials > 0");
  return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

}  // namespace ksbell
