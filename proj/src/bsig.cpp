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

#include "cogload/bsig.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <type_traits>
#include <vector>

#include "cogload/error.hpp"

namespace cogload {

namespace {

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<unsigned char>((bits >> (8 * i)) & 0xFFu));
}

template <typename T>
T get_le(const unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(p[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 8 + 8;

BsigHeader parse_header(const unsigned char* h, const std::filesystem::path& path) {
  if (std::memcmp(h, "BSIG", 4) != 0) fail(ErrorKind::Format, path.string() + ": bad magic, not a BSIG file");
  BsigHeader hdr;
  hdr.version = get_le<std::uint32_t>(h + 4);
  hdr.n_channels = get_le<std::uint32_t>(h + 8);
  hdr.n_samples = get_le<std::uint64_t>(h + 12);
  hdr.fs = get_le<double>(h + 20);
  if (hdr.version != kBsigVersion) {
    fail(ErrorKind::Format, path.string() + ": unsupported BSIG version " + std::to_string(hdr.version));
  }
  return hdr;
}

}  // namespace

BsigHeader read_bsig_header(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::array<unsigned char, kHeaderBytes> h{};
  in.read(reinterpret_cast<char*>(h.data()), static_cast<std::streamsize>(h.size()));
  if (in.gcount() < 4) fail(ErrorKind::Format, path.string() + ": file too short for BSIG magic");
  if (std::memcmp(h.data(), "BSIG", 4) != 0) fail(ErrorKind::Format, path.string() + ": bad magic, not a BSIG file");
  if (static_cast<std::size_t>(in.gcount()) < kHeaderBytes) fail(ErrorKind::Length, path.string() + ": truncated header");
  return parse_header(h.data(), path);
}

SignalRecord read_bsig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 4) fail(ErrorKind::Format, path.string() + ": file too short for BSIG magic");
  if (std::memcmp(bytes.data(), "BSIG", 4) != 0) fail(ErrorKind::Format, path.string() + ": bad magic, not a BSIG file");
  if (bytes.size() < kHeaderBytes) fail(ErrorKind::Length, path.string() + ": truncated header");
  const BsigHeader hdr = parse_header(bytes.data(), path);
  const std::uint64_t count = static_cast<std::uint64_t>(hdr.n_channels) * hdr.n_samples;
  const std::uint64_t expected = kHeaderBytes + 4 * count;
  if (bytes.size() < expected) {
    fail(ErrorKind::Length, path.string() + ": payload truncated, expected " + std::to_string(expected) +
                                " bytes, found " + std::to_string(bytes.size()));
  }
  if (bytes.size() > expected) {
    fail(ErrorKind::Length, path.string() + ": " + std::to_string(bytes.size() - expected) + " trailing bytes");
  }
  SignalRecord rec;
  rec.fs = hdr.fs;
  rec.samples.assign(hdr.n_channels, std::vector<double>(hdr.n_samples));
  const unsigned char* p = bytes.data() + kHeaderBytes;
  for (std::uint32_t c = 0; c < hdr.n_channels; ++c) {
    rec.channel_names.push_back("ch" + std::to_string(c));
    for (std::uint64_t i = 0; i < hdr.n_samples; ++i, p += 4) rec.samples[c][i] = get_le<float>(p);
  }
  return rec;
}

void write_bsig(const std::filesystem::path& path, const SignalRecord& rec) {
  std::vector<unsigned char> out;
  out.reserve(kHeaderBytes + 4 * rec.n_channels() * rec.n_samples());
  for (char c : {'B', 'S', 'I', 'G'}) out.push_back(static_cast<unsigned char>(c));
  put_le<std::uint32_t>(out, kBsigVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(rec.n_channels()));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(rec.n_samples()));
  put_le<double>(out, rec.fs);
  for (const auto& ch : rec.samples) {
    if (ch.size() != rec.n_samples()) fail(ErrorKind::InvalidArgument, "channels have unequal sample counts");
    for (double v : ch) put_le<float>(out, static_cast<float>(v));
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorKind::Io, "cannot write " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) fail(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace cogload
