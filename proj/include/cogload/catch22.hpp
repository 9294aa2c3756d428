// Copyright 2026 The cogload Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cogload {

inline constexpr std::size_t kCatch22Count = 22;

// Canonical identifiers in output order; docs/catch22.md maps them to f1..f22.
const std::array<std::string_view, kCatch22Count>& catch22_names();

struct Catch22Vector {
  std::array<double, kCatch22Count> values{};
  // true marks a feature that could not be computed; its value is NaN.
  std::array<bool, kCatch22Count> invalid{};

  bool all_invalid() const;
  bool any_invalid() const;
};

enum class StdDenominator { Population, Sample };

// Throws DegenerateSeries for constant input and InvalidArgument for fewer
// than two samples. Arithmetic runs in extended precision so that exactly
// representable affine rescalings of the input round to the same output.
std::vector<double> zscore(std::span<const double> series, StdDenominator denom = StdDenominator::Population);

// Biased autocorrelation normalised by lag 0, for lags 0..max_lag.
std::vector<double> acf(std::span<const double> series, std::size_t max_lag);

// Standardises with the sample deviation, then evaluates all 22 features.
Catch22Vector compute_catch22(std::span<const double> series);

// The same features on a series that is already standardised.
Catch22Vector compute_catch22_standardized(std::span<const double> z);

}  // namespace cogload
