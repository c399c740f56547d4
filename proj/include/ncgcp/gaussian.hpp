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

#include <complex>
#include <compare>
#include <cstdint>
#include <ostream>

namespace ncgcp {

/// Gaussian integer re + i*im. Used for exact APAC arithmetic on quaternary
/// sequences, where every product of two elements is again a unit.
struct Gaussian {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr Gaussian() = default;
  constexpr Gaussian(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}

  constexpr Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  constexpr Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  constexpr Gaussian& operator*=(const Gaussian& o) {
    const std::int64_t r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }

  friend constexpr Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend constexpr Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend constexpr Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend constexpr Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }

  friend constexpr bool operator==(const Gaussian&, const Gaussian&) = default;
  friend constexpr auto operator<=>(const Gaussian&, const Gaussian&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Gaussian& g) {
    return os << '(' << g.re << (g.im < 0 ? "" : "+") << g.im << "i)";
  }
};

constexpr Gaussian conj(const Gaussian& g) { return {g.re, -g.im}; }

/// Squared modulus.
constexpr std::int64_t norm(const Gaussian& g) { return g.re * g.re + g.im * g.im; }

inline double abs(const Gaussian& g) {
  return std::abs(std::complex<double>(static_cast<double>(g.re), static_cast<double>(g.im)));
}

inline std::complex<double> to_complex(const Gaussian& g) {
  return {static_cast<double>(g.re), static_cast<double>(g.im)};
}

}  // namespace ncgcp
