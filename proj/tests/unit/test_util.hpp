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

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "cogload/error.hpp"
#include "cogload/rng.hpp"

#define EXPECT_COGLOAD_ERROR(stmt, expected_kind)          \
  EXPECT_THROW(                                           \
      {                                                   \
        try {                                             \
          stmt;                                           \
        } catch (const ::cogload::Error& e_) {            \
          EXPECT_EQ(e_.kind(), expected_kind) << e_.what(); \
          throw;                                          \
        }                                                 \
      },                                                  \
      ::cogload::Error)

namespace cogload::testing {

// Scratch directory removed when the object goes out of scope.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "t") {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("cogload_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::vector<double> white_noise(std::size_t n, std::uint64_t seed, double sd = 1.0) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal(0.0, sd);
  return v;
}

inline std::vector<double> sine(std::size_t n, double freq_hz, double fs, double amp = 1.0, double phase = 0.0) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = amp * std::sin(2.0 * M_PI * freq_hz * static_cast<double>(i) / fs + phase);
  }
  return v;
}

inline double rms(const std::vector<double>& v, std::size_t skip_front = 0, std::size_t skip_back = 0) {
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t i = skip_front; i + skip_back < v.size(); ++i, ++n) s += v[i] * v[i];
  return n ? std::sqrt(s / static_cast<double>(n)) : 0.0;
}

}  // namespace cogload::testing
