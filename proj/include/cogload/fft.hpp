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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cogload {

using cplx = std::complex<double>;

// Any length is accepted; powers of two take the radix-2 path, others go
// through a chirp-z convolution. The inverse is unscaled.
void fft_inplace(std::vector<cplx>& data, bool inverse = false);

// Zero-pads (or truncates) to nfft and returns bins 0..nfft/2.
std::vector<cplx> rfft(std::span<const double> x, std::size_t nfft);

std::size_t next_pow2(std::size_t n);

}  // namespace cogload
