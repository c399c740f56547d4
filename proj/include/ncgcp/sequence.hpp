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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncgcp/errors.hpp"
#include "ncgcp/gaussian.hpp"

namespace ncgcp {

using cplx = std::complex<double>;

namespace detail {

inline void check_finite(const cplx& v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw DomainError("sequence element is not finite");
  }
}
inline void check_finite(const Gaussian&) {}

}  // namespace detail

/// Immutable finite-length sequence over T (Gaussian or std::complex<double>).
/// Index 0 is the constant coefficient of the polynomial representation.
template <class T>
class Sequence {
 public:
  using value_type = T;

  Sequence() = default;
  explicit Sequence(std::vector<T> elements) : elements_(std::move(elements)) {
    for (const auto& v : elements_) detail::check_finite(v);
  }
  Sequence(std::initializer_list<T> elements) : Sequence(std::vector<T>(elements)) {}

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const T& operator[](std::size_t i) const { return elements_[i]; }
  std::span<const T> elements() const noexcept { return elements_; }
  const std::vector<T>& vector() const noexcept { return elements_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::vector<T> elements_;
};

using ComplexSequence = Sequence<cplx>;
using GaussianSequence = Sequence<Gaussian>;

inline ComplexSequence to_complex(const GaussianSequence& s) {
  std::vector<cplx> out;
  out.reserve(s.size());
  for (const auto& g : s) out.push_back(to_complex(g));
  return ComplexSequence(std::move(out));
}
inline const ComplexSequence& to_complex(const ComplexSequence& s) { return s; }

/// Sequence over the unit Gaussian integers {+1, -1, +i, -i}, written with the
/// symbols '+', '-', 'i' and 'j' (j = -i). Stored as exponents e with value i^e.
class QuaternarySequence {
 public:
  QuaternarySequence() = default;

  /// Exponents are reduced mod 4.
  explicit QuaternarySequence(std::vector<std::uint8_t> exponents) : exps_(std::move(exponents)) {
    for (auto& e : exps_) e &= 3u;
  }

  /// Accepts "+-ij" as well as the tuple form "(+,-,i,j)"; separators and
  /// whitespace are ignored.
  static QuaternarySequence parse(std::string_view text) {
    std::vector<std::uint8_t> exps;
    for (char ch : text) {
      switch (ch) {
        case '+': exps.push_back(0); break;
        case 'i': exps.push_back(1); break;
        case '-': exps.push_back(2); break;
        case 'j': exps.push_back(3); break;
        case '(': case ')': case ',': case ' ': case '\t': case '{': case '}': break;
        default:
          throw DomainError(std::string("invalid quaternary symbol '") + ch + "'");
      }
    }
    if (exps.empty()) throw DomainError("empty quaternary sequence");
    return QuaternarySequence(std::move(exps));
  }

  /// Exact conversion from a Gaussian sequence; every element must be a unit.
  static QuaternarySequence from_gaussian(const GaussianSequence& s) {
    std::vector<std::uint8_t> exps;
    exps.reserve(s.size());
    for (const auto& g : s) {
      if (g == Gaussian{1, 0}) exps.push_back(0);
      else if (g == Gaussian{0, 1}) exps.push_back(1);
      else if (g == Gaussian{-1, 0}) exps.push_back(2);
      else if (g == Gaussian{0, -1}) exps.push_back(3);
      else throw DomainError("element is not a unit Gaussian integer");
    }
    return QuaternarySequence(std::move(exps));
  }

  std::size_t size() const noexcept { return exps_.size(); }
  bool empty() const noexcept { return exps_.empty(); }
  std::uint8_t exponent(std::size_t i) const { return exps_[i]; }
  std::span<const std::uint8_t> exponents() const noexcept { return exps_; }

  Gaussian operator[](std::size_t i) const { return unit(exps_[i]); }

  std::string str() const {
    static constexpr char kSym[4] = {'+', 'i', '-', 'j'};
    std::string out;
    out.reserve(exps_.size());
    for (auto e : exps_) out.push_back(kSym[e]);
    return out;
  }

  GaussianSequence gaussian() const {
    std::vector<Gaussian> out;
    out.reserve(exps_.size());
    for (auto e : exps_) out.push_back(unit(e));
    return GaussianSequence(std::move(out));
  }

  ComplexSequence complex() const { return to_complex(gaussian()); }

  QuaternarySequence reversed() const {
    return QuaternarySequence(std::vector<std::uint8_t>(exps_.rbegin(), exps_.rend()));
  }
  QuaternarySequence conjugated() const {
    std::vector<std::uint8_t> out(exps_.size());
    std::transform(exps_.begin(), exps_.end(), out.begin(),
                   [](std::uint8_t e) { return static_cast<std::uint8_t>((4u - e) & 3u); });
    return QuaternarySequence(std::move(out));
  }
  QuaternarySequence reverse_conjugated() const { return reversed().conjugated(); }

  /// Multiply every element by i^e.
  QuaternarySequence rotated(std::uint8_t e) const {
    std::vector<std::uint8_t> out(exps_.size());
    std::transform(exps_.begin(), exps_.end(), out.begin(),
                   [e](std::uint8_t x) { return static_cast<std::uint8_t>((x + e) & 3u); });
    return QuaternarySequence(std::move(out));
  }

  friend bool operator==(const QuaternarySequence&, const QuaternarySequence&) = default;
  friend auto operator<=>(const QuaternarySequence&, const QuaternarySequence&) = default;

  static constexpr Gaussian unit(std::uint8_t e) {
    constexpr Gaussian kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kUnits[e & 3u];
  }

 private:
  std::vector<std::uint8_t> exps_;
};

}  // namespace ncgcp
