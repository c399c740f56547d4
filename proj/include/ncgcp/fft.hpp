// SPDX-License-Identifier: Apache-2.0
//
// ncgcp - complementary sequences for non-contiguous OFDM interlaces
// Copyright (C) 2026 The ncgcp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Thin FFTW wrapper. Plans are created once per (size, direction) under a lock
// and reused; execution on private buffers is thread-safe.

#include <fftw3.h>

#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "ncgcp/errors.hpp"

namespace ncgcp::fft {

namespace detail {

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

inline Buffer allocate(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return Buffer(p);
}

inline fftw_plan plan_for(std::size_t n, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(n, sign);
  if (auto it = plans.find(key); it != plans.end()) return it->second;
  auto scratch = allocate(n);
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), scratch.get(), scratch.get(), sign, FFTW_ESTIMATE);
  if (p == nullptr) throw std::runtime_error("fftw: plan creation failed");
  plans.emplace(key, p);
  return p;
}

inline std::vector<std::complex<double>> transform(std::span<const std::complex<double>> in, std::size_t n,
                                                   int sign) {
  if (n == 0) throw DomainError("dft: size must be positive");
  if (in.size() > n) throw DomainError("dft: input longer than transform size");
  fftw_plan plan = plan_for(n, sign);
  auto buf = allocate(n);
  std::memset(buf.get(), 0, sizeof(fftw_complex) * n);
  std::memcpy(buf.get(), in.data(), sizeof(fftw_complex) * in.size());
  fftw_execute_dft(plan, buf.get(), buf.get());
  std::vector<std::complex<double>> out(n);
  std::memcpy(out.data(), buf.get(), sizeof(fftw_complex) * n);
  return out;
}

}  // namespace detail

/// out[t] = sum_n in[n] exp(+i 2 pi n t / n_out), input zero-padded. Unnormalized.
inline std::vector<std::complex<double>> inverse_dft(std::span<const std::complex<double>> in, std::size_t n) {
  return detail::transform(in, n, FFTW_BACKWARD);
}

/// out[t] = sum_n in[n] exp(-i 2 pi n t / n_out), input zero-padded.
inline std::vector<std::complex<double>> forward_dft(std::span<const std::complex<double>> in, std::size_t n) {
  return detail::transform(in, n, FFTW_FORWARD);
}

}  // namespace ncgcp::fft
