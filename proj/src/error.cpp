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

#include "cogload/error.hpp"

namespace cogload {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::TooShort: return "too-short";
    case ErrorKind::NoPeaks: return "no-peaks";
    case ErrorKind::InsufficientPeaks: return "insufficient-peaks";
    case ErrorKind::AllArtifact: return "all-artifact";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::DegenerateSeries: return "degenerate-series";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Format: return "format";
    case ErrorKind::Length: return "length";
    case ErrorKind::Channel: return "channel";
    case ErrorKind::Split: return "split";
    case ErrorKind::DegenerateFit: return "degenerate-fit";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::FeatureAlignment: return "feature-alignment";
    case ErrorKind::Task: return "task";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace cogload
