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

#pragma once

#include <cstdint>
#include <span>

namespace ksbell {

struct ChiSquareResult {
  double statistic = 0;
  int degrees_of_freedom = 0;
  double p_value = 1;
};

/// Pearson homogeneity test of two count rows over the same categories.
/// Categories empty in both rows are dropped; with fewer than two remaining
/// categories the rows are trivially homogeneous (p = 1).
ChiSquareResult chi_square_homogeneity(std::span<const std::uint64_t> first,
                                       std::span<const std::uint64_t> second);

/// Standard error of a binomial proportion p estimated from `trials` draws.
double binomial_sigma(double p, std::uint64_t trials);

}  // namespace ksbell
