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

#include <cstdint>
#include <filesystem>

#include "cogload/signal.hpp"

namespace cogload {

// Binary layout, little-endian throughout:
//   "BSIG" | u32 version (1) | u32 n_channels | u64 n_samples | f64 fs |
//   n_channels * n_samples f32, channel-major.
inline constexpr std::uint32_t kBsigVersion = 1;

struct BsigHeader {
  std::uint32_t version = kBsigVersion;
  std::uint32_t n_channels = 0;
  std::uint64_t n_samples = 0;
  double fs = 0.0;
};

BsigHeader read_bsig_header(const std::filesystem::path& path);
// Channel names are not part of the format; they come back as ch0, ch1, ...
SignalRecord read_bsig(const std::filesystem::path& path);
void write_bsig(const std::filesystem::path& path, const SignalRecord& rec);

}  // namespace cogload
