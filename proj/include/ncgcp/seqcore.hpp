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

// Sequence algebra in the polynomial picture: a sequence a of length N is the
// polynomial a_0 + a_1 z + ... + a_{N-1} z^{N-1}. Upsampling by k is a(z^k),
// a delay of m is a(z) z^m and linear convolution is the polynomial product.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

#include "ncgcp/errors.hpp"
#include "ncgcp/sequence.hpp"

namespace ncgcp {

namespace detail {

inline cplx conj_of(const cplx& v) { return std::conj(v); }
inline Gaussian conj_of(const Gaussian& v) { return conj(v); }

inline double magnitude(const cplx& v) { return std::abs(v); }
inline double magnitude(const Gaussian& v) { return abs(v); }

template <class T>
void require_nonempty(const Sequence<T>& a, const char* what) {
  if (a.empty()) throw DomainError(std::string(what) + ": empty sequence");
}

}  // namespace detail

/// Aperiodic autocorrelation A_a(k) = sum_i conj(a_i) a_{i+k}, with
/// A_a(-k) = conj(A_a(k)) and A_a(k) = 0 for |k| >= N.
template <class T>
T apac(const Sequence<T>& a, long k) {
  detail::require_nonempty(a, "apac");
  const long n = static_cast<long>(a.size());
  const long lag = std::labs(k);
  T acc{};
  if (lag >= n) return acc;
  for (long i = 0; i + lag < n; ++i) acc += detail::conj_of(a[i]) * a[i + lag];
  return k < 0 ? detail::conj_of(acc) : acc;
}

/// APAC for lags 0..N-1. Cost is quadratic in the number of nonzero
/// elements, so zero-padded interlace sequences stay cheap.
template <class T>
std::vector<T> apac_vector(const Sequence<T>& a) {
  detail::require_nonempty(a, "apac_vector");
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == T{})) nz.push_back(i);
  }
  std::vector<T> out(a.size(), T{});
  for (std::size_t x = 0; x < nz.size(); ++x) {
    const T ci = detail::conj_of(a[nz[x]]);
    for (std::size_t y = x; y < nz.size(); ++y) out[nz[y] - nz[x]] += ci * a[nz[y]];
  }
  return out;
}

/// True iff |A_a(k) + A_b(k)| <= tol for every k != 0. With Gaussian inputs and
/// tol = 0 the test is exact.
template <class T>
bool is_gcp(const Sequence<T>& a, const Sequence<T>& b, double tol = 0.0) {
  if (a.size() != b.size()) throw DomainError("is_gcp: length mismatch");
  detail::require_nonempty(a, "is_gcp");
  if (tol < 0.0) throw DomainError("is_gcp: negative tolerance");
  const auto aa = apac_vector(a);
  const auto bb = apac_vector(b);
  for (std::size_t k = 1; k < aa.size(); ++k) {
    const T s = aa[k] + bb[k];
    if constexpr (std::is_same_v<T, Gaussian>) {
      if (tol == 0.0 ? !(s == Gaussian{}) : abs(s) > tol) return false;
    } else {
      if (std::abs(s) > tol) return false;
    }
  }
  return true;
}

inline bool is_gcp(const QuaternarySequence& a, const QuaternarySequence& b) {
  return is_gcp(a.gaussian(), b.gaussian());
}

/// Inserts k-1 zeros between consecutive elements: output length k(N-1)+1.
template <class T>
Sequence<T> upsample(const Sequence<T>& a, long k) {
  if (k <= 0) throw DomainError("upsample: factor must be positive");
  if (a.empty()) return a;
  std::vector<T> out(static_cast<std::size_t>(k) * (a.size() - 1) + 1, T{});
  for (std::size_t i = 0; i < a.size(); ++i) out[i * static_cast<std::size_t>(k)] = a[i];
  return Sequence<T>(std::move(out));
}

template <class T>
Sequence<T> reverse_conjugate(const Sequence<T>& a) {
  std::vector<T> out;
  out.reserve(a.size());
  for (auto it = a.vector().rbegin(); it != a.vector().rend(); ++it) out.push_back(detail::conj_of(*it));
  return Sequence<T>(std::move(out));
}

template <class T>
Sequence<T> conjugate(const Sequence<T>& a) {
  std::vector<T> out;
  out.reserve(a.size());
  for (const auto& v : a) out.push_back(detail::conj_of(v));
  return Sequence<T>(std::move(out));
}

template <class T>
Sequence<T> reverse(const Sequence<T>& a) {
  return Sequence<T>(std::vector<T>(a.vector().rbegin(), a.vector().rend()));
}

/// Linear convolution, length N_a + N_b - 1.
template <class T>
Sequence<T> convolve(const Sequence<T>& a, const Sequence<T>& b) {
  detail::require_nonempty(a, "convolve");
  detail::require_nonempty(b, "convolve");
  std::vector<T> out(a.size() + b.size() - 1, T{});
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == T{}) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return Sequence<T>(std::move(out));
}

/// Prepends m zeros (multiplication by z^m).
template <class T>
Sequence<T> delay(const Sequence<T>& a, long m) {
  if (m < 0) throw DomainError("delay: negative shift");
  std::vector<T> out(static_cast<std::size_t>(m), T{});
  out.insert(out.end(), a.begin(), a.end());
  return Sequence<T>(std::move(out));
}

/// Coefficient-wise sum; the shorter operand is zero-extended.
template <class T>
Sequence<T> add(const Sequence<T>& a, const Sequence<T>& b) {
  std::vector<T> out(std::max(a.size(), b.size()), T{});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return Sequence<T>(std::move(out));
}

template <class T>
Sequence<T> scale(const Sequence<T>& a, const T& s) {
  std::vector<T> out;
  out.reserve(a.size());
  for (const auto& v : a) out.push_back(s * v);
  return Sequence<T>(std::move(out));
}

/// Evaluates poly(a) at z by Horner's rule.
template <class T>
cplx poly_eval(const Sequence<T>& a, cplx z) {
  cplx acc{};
  for (auto it = a.vector().rbegin(); it != a.vector().rend(); ++it) {
    if constexpr (std::is_same_v<T, Gaussian>) {
      acc = acc * z + to_complex(*it);
    } else {
      acc = acc * z + *it;
    }
  }
  return acc;
}

/// x[n] * exp(i 2 pi n delta / N). Frequency-domain view of a time-domain
/// cyclic shift by delta samples of an N-tone symbol; delta may be fractional.
inline ComplexSequence cyclic_modulate(const ComplexSequence& x, double delta) {
  detail::require_nonempty(x, "cyclic_modulate");
  const double n = static_cast<double>(x.size());
  std::vector<cplx> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double phase = 2.0 * std::numbers::pi * std::fmod(static_cast<double>(i) * delta, n) / n;
    out[i] = x[i] * std::polar(1.0, phase);
  }
  return ComplexSequence(std::move(out));
}

/// sum_n a_n conj(b_n).
template <class T>
T inner_product(const Sequence<T>& a, const Sequence<T>& b) {
  if (a.size() != b.size()) throw DomainError("inner_product: length mismatch");
  T acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * detail::conj_of(b[i]);
  return acc;
}

}  // namespace ncgcp
