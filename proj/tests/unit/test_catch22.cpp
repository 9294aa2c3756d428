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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "cogload/catch22.hpp"
#include "test_util.hpp"

namespace cogload {
namespace {

using testing::sine;
using testing::white_noise;

std::vector<double> read_column(const std::string& path) {
  std::ifstream in(path);
  std::vector<double> v;
  double x;
  while (in >> x) v.push_back(x);
  return v;
}

std::vector<std::pair<std::string, double>> read_expected(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::pair<std::string, double>> out;
  std::string name, value;
  while (in >> name >> value) out.emplace_back(name, std::stod(value));
  return out;
}

class Conformance : public ::testing::TestWithParam<std::string> {};

TEST_P(Conformance, MatchesReferenceWithin1e6) {
  const std::string base = std::string(COGLOAD_TEST_DATA) + "/catch22/" + GetParam();
  const auto x = read_column(base + ".input.txt");
  const auto expected = read_expected(base + ".expected.txt");
  ASSERT_FALSE(x.empty());
  ASSERT_EQ(expected.size(), kCatch22Count);
  const auto got = compute_catch22(x);
  for (std::size_t i = 0; i < kCatch22Count; ++i) {
    EXPECT_EQ(expected[i].first, catch22_names()[i]);
    EXPECT_FALSE(got.invalid[i]) << expected[i].first;
    EXPECT_NEAR(got.values[i], expected[i].second, 1e-6) << expected[i].first;
  }
}

INSTANTIATE_TEST_SUITE_P(Vectors, Conformance,
                         ::testing::Values("noise750", "noise384", "ar750", "ecg750", "sine10", "published_basic",
                                           "published_sinusoid"));

TEST(Zscore, ThreePoints) {
  const std::vector<double> x = {1, 2, 3};
  const auto z = zscore(x);
  EXPECT_NEAR(z[0], -std::sqrt(1.5), 1e-15);
  EXPECT_NEAR(z[1], 0.0, 1e-15);
  EXPECT_NEAR(z[2], std::sqrt(1.5), 1e-15);
}

TEST(Zscore, SampleDenominator) {
  const std::vector<double> x = {1, 2, 3};
  EXPECT_NEAR(zscore(x, StdDenominator::Sample)[2], 1.0, 1e-15);
}

TEST(Zscore, Constant) {
  const std::vector<double> x(10, 4.0);
  EXPECT_COGLOAD_ERROR(zscore(x), ErrorKind::DegenerateSeries);
}

TEST(Zscore, AlreadyStandardised) {
  const auto z = zscore(white_noise(500, 3));
  const auto zz = zscore(z);
  for (std::size_t i = 0; i < z.size(); ++i) EXPECT_NEAR(zz[i], z[i], 1e-12);
}

TEST(Acf, LagZeroIsOne) { EXPECT_EQ(acf(white_noise(100, 1), 5)[0], 1.0); }

TEST(Acf, WhiteNoiseLagOne) {
  const auto x = white_noise(1000, 2);
  EXPECT_LT(std::fabs(acf(x, 1)[1]), 3.0 / std::sqrt(1000.0));
}

TEST(Acf, SineFirstMinimumAtHalfPeriod) {
  const double period = 40.0;
  const auto x = sine(800, 1.0, period);
  const auto r = acf(x, 60);
  std::size_t first_min = 0;
  for (std::size_t k = 1; k + 1 < r.size(); ++k) {
    if (r[k] < r[k - 1] && r[k] <= r[k + 1]) {
      first_min = k;
      break;
    }
  }
  EXPECT_NEAR(static_cast<double>(first_min), period / 2.0, 1.0);
}

TEST(Acf, LagTooLarge) {
  const auto x = white_noise(10, 1);
  EXPECT_COGLOAD_ERROR(acf(x, 10), ErrorKind::InvalidArgument);
}

TEST(Catch22, ConstantSeriesAllInvalid) {
  const auto v = compute_catch22(std::vector<double>(300, 2.5));
  EXPECT_TRUE(v.all_invalid());
  for (double x : v.values) EXPECT_TRUE(std::isnan(x));
}

TEST(Catch22, SineTone) {
  const std::size_t n = 750;
  const double period = 75.0;
  const auto v = compute_catch22(sine(n, 1.0, period));
  const auto idx = [](std::string_view name) {
    for (std::size_t i = 0; i < kCatch22Count; ++i) {
      if (catch22_names()[i] == name) return i;
    }
    return kCatch22Count;
  };
  EXPECT_NEAR(v.values[idx("PD_PeriodicityWang_th0_01")], period, 1.0);
  const double bin = 2.0 * M_PI / 1024.0;
  EXPECT_NEAR(v.values[idx("SP_Summaries_welch_rect_centroid")], 2.0 * M_PI / period, bin);
}

TEST(Catch22, Deterministic) {
  const auto x = white_noise(600, 8);
  const auto a = compute_catch22(x), b = compute_catch22(x);
  EXPECT_EQ(std::memcmp(a.values.data(), b.values.data(), sizeof(double) * kCatch22Count), 0);
}

TEST(Catch22, AffineInvariantBitwiseOnExactTransforms) {
  Rng rng(21);
  const double scales[] = {0.25, 0.5, 1.5, 2.0, 3.0, 4.0};
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<double> x(400);
    for (auto& v : x) v = static_cast<double>(static_cast<long>(rng.index(4096)) - 2048) / 1024.0;
    const double a = scales[rng.index(6)];
    const double b = static_cast<double>(static_cast<long>(rng.index(64)) - 32) / 8.0;
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = a * x[i] + b;
    const auto fx = compute_catch22(x), fy = compute_catch22(y);
    for (std::size_t k = 0; k < kCatch22Count; ++k) {
      if (std::isnan(fx.values[k])) {
        EXPECT_TRUE(std::isnan(fy.values[k]));
      } else {
        EXPECT_EQ(fx.values[k], fy.values[k]) << catch22_names()[k] << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(Catch22, AffineInvariantGeneralToTolerance) {
  const auto x = white_noise(500, 4);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 3.7 * x[i] - 12.3;
  const auto fx = compute_catch22(x), fy = compute_catch22(y);
  for (std::size_t k = 0; k < kCatch22Count; ++k) EXPECT_NEAR(fx.values[k], fy.values[k], 1e-6) << catch22_names()[k];
}

TEST(Catch22, ShortSeriesFlagsFluctuationFeatures) {
  const auto v = compute_catch22(white_noise(15, 2));
  EXPECT_TRUE(v.any_invalid());
  EXPECT_FALSE(v.all_invalid());
}

TEST(Catch22, NamesAreUnique) {
  std::set<std::string_view> s(catch22_names().begin(), catch22_names().end());
  EXPECT_EQ(s.size(), kCatch22Count);
}

}  // namespace
}  // namespace cogload
