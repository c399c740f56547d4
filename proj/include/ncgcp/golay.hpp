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
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "ncgcp/errors.hpp"
#include "ncgcp/parallel.hpp"
#include "ncgcp/seqcore.hpp"

namespace ncgcp {

/// Largest length accepted by enumerate_gcps and is_complementary_sequence.
inline constexpr std::size_t kMaxEnumerationLength = 12;

/// Tolerance used when certifying floating-point pairs.
inline constexpr double kFloatGcpTolerance = 1e-9;

template <class T>
constexpr double default_gcp_tolerance() {
  return std::is_same_v<T, Gaussian> ? 0.0 : kFloatGcpTolerance;
}

/// Two equal-length sequences whose APACs cancel at every nonzero lag. Only
/// constructible through certify(), which runs the complementarity test.
template <class T>
class GolayPair {
 public:
  static std::optional<GolayPair> try_certify(Sequence<T> a, Sequence<T> b,
                                              double tol = default_gcp_tolerance<T>()) {
    if (a.size() != b.size() || a.empty()) return std::nullopt;
    if (!is_gcp(a, b, tol)) return std::nullopt;
    return GolayPair(std::move(a), std::move(b));
  }

  static GolayPair certify(Sequence<T> a, Sequence<T> b, double tol = default_gcp_tolerance<T>()) {
    if (a.size() != b.size()) throw DomainError("GolayPair: length mismatch");
    auto p = try_certify(std::move(a), std::move(b), tol);
    if (!p) throw DomainError("GolayPair: sequences are not complementary");
    return *std::move(p);
  }

  const Sequence<T>& a() const noexcept { return a_; }
  const Sequence<T>& b() const noexcept { return b_; }
  std::size_t size() const noexcept { return a_.size(); }

  friend bool operator==(const GolayPair&, const GolayPair&) = default;

 private:
  GolayPair(Sequence<T> a, Sequence<T> b) : a_(std::move(a)), b_(std::move(b)) {}

  Sequence<T> a_;
  Sequence<T> b_;
};

using ExactPair = GolayPair<Gaussian>;
using ComplexPair = GolayPair<cplx>;

inline ComplexPair to_complex(const ExactPair& p) {
  return ComplexPair::certify(to_complex(p.a()), to_complex(p.b()));
}

/// Quaternary GCP, the form in which seed libraries and set fixtures live.
class QuaternaryPair {
 public:
  static std::optional<QuaternaryPair> try_certify(QuaternarySequence a, QuaternarySequence b) {
    if (a.size() != b.size() || a.empty()) return std::nullopt;
    if (!is_gcp(a, b)) return std::nullopt;
    return QuaternaryPair(std::move(a), std::move(b));
  }

  static QuaternaryPair certify(QuaternarySequence a, QuaternarySequence b) {
    if (a.size() != b.size()) throw DomainError("QuaternaryPair: length mismatch");
    auto p = try_certify(std::move(a), std::move(b));
    if (!p) throw DomainError("QuaternaryPair: sequences are not complementary");
    return *std::move(p);
  }

  static QuaternaryPair parse(std::string_view a, std::string_view b) {
    return certify(QuaternarySequence::parse(a), QuaternarySequence::parse(b));
  }

  const QuaternarySequence& a() const noexcept { return a_; }
  const QuaternarySequence& b() const noexcept { return b_; }
  std::size_t size() const noexcept { return a_.size(); }

  ExactPair exact() const { return ExactPair::certify(a_.gaussian(), b_.gaussian()); }
  ComplexPair complex() const { return ComplexPair::certify(a_.complex(), b_.complex()); }

  /// Each sequence rotated so its first symbol is '+', then the two ordered so
  /// that a <= b. A per-sequence unit rotation leaves every APAC unchanged, so
  /// the canonical form is again a GCP.
  QuaternaryPair canonical() const {
    auto a = a_.rotated(static_cast<std::uint8_t>(4u - a_.exponent(0)));
    auto b = b_.rotated(static_cast<std::uint8_t>(4u - b_.exponent(0)));
    if (b < a) std::swap(a, b);
    return QuaternaryPair(std::move(a), std::move(b));
  }

  friend bool operator==(const QuaternaryPair&, const QuaternaryPair&) = default;
  friend auto operator<=>(const QuaternaryPair& x, const QuaternaryPair& y) {
    if (auto c = x.a_ <=> y.a_; c != 0) return c;
    return x.b_ <=> y.b_;
  }

 private:
  QuaternaryPair(QuaternarySequence a, QuaternarySequence b) : a_(std::move(a)), b_(std::move(b)) {}

  QuaternarySequence a_;
  QuaternarySequence b_;
};

/// Parameters of the two-seed construction. k and l are upsampling factors of
/// the first and second seed pair, m the extra delay applied to the b/d branch.
template <class T>
struct ConstructionParams {
  T omega1{1};
  T omega2{1};
  long k = 1;
  long l = 1;
  long m = 0;

  /// Complex phasors must be unit modulus. Gaussian phasors may carry a common
  /// nonunit scale (e.g. 1+i for a Q2 phasor times sqrt 2); the pair property
  /// survives any common scaling.
  void validate() const {
    if (k < 1 || l < 1) throw DomainError("ConstructionParams: k and l must be >= 1");
    if (m < 0) throw DomainError("ConstructionParams: m must be >= 0");
    if constexpr (std::is_same_v<T, Gaussian>) {
      if (norm(omega1) == 0 || norm(omega1) != norm(omega2)) {
        throw DomainError("ConstructionParams: omega1 and omega2 must have equal nonzero modulus");
      }
    } else {
      if (std::abs(std::abs(omega1) - 1.0) > 1e-12 || std::abs(std::abs(omega2) - 1.0) > 1e-12) {
        throw DomainError("ConstructionParams: omega1 and omega2 must be unit modulus");
      }
    }
  }
};

/// Builds (f, g) with
///   f(z) = w1 a(z^k) c(z^l) + w2 b(z^k) d(z^l) z^m
///   g(z) = w1 a(z^k) d~(z^l) - w2 b(z^k) c~(z^l) z^m
/// where x~ is the reverse-conjugate of x. Supports may overlap; overlapping
/// coefficients are summed. The result is certified before it is returned.
template <class T>
GolayPair<T> compose_gcp(const GolayPair<T>& ab, const GolayPair<T>& cd,
                                const ConstructionParams<T>& p) {
  p.validate();
  const auto ak = upsample(ab.a(), p.k);
  const auto bk = upsample(ab.b(), p.k);
  const auto c_l = upsample(cd.a(), p.l);
  const auto d_l = upsample(cd.b(), p.l);
  const auto c_rev = upsample(reverse_conjugate(cd.a()), p.l);
  const auto d_rev = upsample(reverse_conjugate(cd.b()), p.l);

  auto f = add(scale(convolve(ak, c_l), p.omega1), delay(scale(convolve(bk, d_l), p.omega2), p.m));
  auto g = add(scale(convolve(ak, d_rev), p.omega1), delay(scale(convolve(bk, c_rev), -p.omega2), p.m));

  // Scale the float tolerance with the pair energy so large constructions
  // are not rejected for accumulated rounding.
  double tol = default_gcp_tolerance<T>();
  if constexpr (!std::is_same_v<T, Gaussian>) {
    const double energy = std::abs(apac(f, 0)) + std::abs(apac(g, 0));
    tol *= std::max(1.0, energy / 64.0);
  }
  auto out = GolayPair<T>::try_certify(std::move(f), std::move(g), tol);
  if (!out) throw ConsistencyError("compose_gcp: output failed GCP certification");
  return *std::move(out);
}

/// Label of one member of the 8-element equivalence orbit: optional swap of the
/// two sequences, optional reversal of both, optional reverse-conjugation of both.
struct OrbitLabel {
  bool swap = false;
  bool reverse = false;
  bool conj_reverse = false;

  std::string str() const {
    std::string s;
    s += swap ? 'S' : '-';
    s += reverse ? 'R' : '-';
    s += conj_reverse ? 'C' : '-';
    return s;
  }
  friend bool operator==(const OrbitLabel&, const OrbitLabel&) = default;
};

template <class Pair>
struct OrbitMember {
  Pair pair;
  OrbitLabel label;
};

namespace detail {

template <class Pair, class Seq, class Rev, class ConjRev, class Make>
std::vector<OrbitMember<Pair>> orbit_impl(const Seq& a, const Seq& b, Rev rev, ConjRev conj_rev,
                                          Make make) {
  std::vector<OrbitMember<Pair>> out;
  out.reserve(8);
  for (int bits = 0; bits < 8; ++bits) {
    const OrbitLabel label{(bits & 4) != 0, (bits & 2) != 0, (bits & 1) != 0};
    Seq x = a;
    Seq y = b;
    if (label.reverse) {
      x = rev(x);
      y = rev(y);
    }
    if (label.conj_reverse) {
      x = conj_rev(x);
      y = conj_rev(y);
    }
    if (label.swap) std::swap(x, y);
    out.push_back({make(std::move(x), std::move(y)), label});
  }
  return out;
}

}  // namespace detail

/// The 8 pairs {id, swap} x {id, reverse-both} x {id, conjugate-reverse-both}.
/// The identity comes first. Every member is certified.
template <class T>
std::vector<OrbitMember<GolayPair<T>>> equivalence_orbit(const GolayPair<T>& pair) {
  return detail::orbit_impl<GolayPair<T>>(
      pair.a(), pair.b(), [](const Sequence<T>& s) { return reverse(s); },
      [](const Sequence<T>& s) { return reverse_conjugate(s); },
      [](Sequence<T> x, Sequence<T> y) { return GolayPair<T>::certify(std::move(x), std::move(y)); });
}

inline std::vector<OrbitMember<QuaternaryPair>> equivalence_orbit(const QuaternaryPair& pair) {
  return detail::orbit_impl<QuaternaryPair>(
      pair.a(), pair.b(), [](const QuaternarySequence& s) { return s.reversed(); },
      [](const QuaternarySequence& s) { return s.reverse_conjugated(); },
      [](QuaternarySequence x, QuaternarySequence y) {
        return QuaternaryPair::certify(std::move(x), std::move(y));
      });
}

namespace detail {

// Nonzero-lag APAC of a quaternary sequence packed as int8 (re, im) pairs.
// |A(k)| <= N - k <= 11, so int8 is exact.
using ApacKey = std::array<std::int8_t, 2 * (kMaxEnumerationLength - 1)>;

inline void decode_index(std::uint64_t index, std::size_t length, std::uint8_t* exps) {
  // exps[0] is fixed to '+'; exps[1] is the most significant base-4 digit so
  // that index order is lexicographic order.
  exps[0] = 0;
  for (std::size_t pos = length; pos-- > 1;) {
    exps[pos] = static_cast<std::uint8_t>(index & 3u);
    index >>= 2;
  }
}

inline ApacKey apac_key(const std::uint8_t* exps, std::size_t length) {
  static constexpr int kRe[4] = {1, 0, -1, 0};
  static constexpr int kIm[4] = {0, 1, 0, -1};
  ApacKey key{};
  for (std::size_t lag = 1; lag < length; ++lag) {
    int re = 0;
    int im = 0;
    for (std::size_t i = 0; i + lag < length; ++i) {
      const unsigned d = (exps[i + lag] - exps[i]) & 3u;
      re += kRe[d];
      im += kIm[d];
    }
    key[2 * (lag - 1)] = static_cast<std::int8_t>(re);
    key[2 * (lag - 1) + 1] = static_cast<std::int8_t>(im);
  }
  return key;
}

inline ApacKey negated(ApacKey key) {
  for (auto& v : key) v = static_cast<std::int8_t>(-v);
  return key;
}

}  // namespace detail

/// All quaternary GCPs of the given length, in canonical form (see
/// QuaternaryPair::canonical), sorted and free of duplicates.
///
/// Every sequence with leading '+' is hashed by its nonzero-lag APAC; pairs are
/// read off by matching each APAC bucket against the bucket of its negation.
/// Key computation is split over `workers` threads; the merge is sequential.
inline std::vector<QuaternaryPair> enumerate_gcps(std::size_t length, unsigned workers = 1) {
  if (length == 0) throw DomainError("enumerate_gcps: length must be positive");
  if (length > kMaxEnumerationLength) {
    throw CapacityError("enumerate_gcps: length " + std::to_string(length) + " exceeds limit " +
                        std::to_string(kMaxEnumerationLength));
  }
  if (length == 1) {
    return {QuaternaryPair::parse("+", "+")};
  }

  struct Entry {
    detail::ApacKey key;
    std::uint32_t index;
    bool operator<(const Entry& o) const { return key != o.key ? key < o.key : index < o.index; }
  };

  const std::uint64_t count = std::uint64_t{1} << (2 * (length - 1));
  std::vector<Entry> entries(count);
  parallel_for(count, workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::array<std::uint8_t, kMaxEnumerationLength> exps{};
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      detail::decode_index(idx, length, exps.data());
      entries[idx] = {detail::apac_key(exps.data(), length), static_cast<std::uint32_t>(idx)};
    }
  });
  std::sort(entries.begin(), entries.end());

  const auto to_seq = [length](std::uint32_t idx) {
    std::vector<std::uint8_t> exps(length);
    detail::decode_index(idx, length, exps.data());
    return QuaternarySequence(std::move(exps));
  };
  const auto key_less = [](const Entry& e, const detail::ApacKey& k) { return e.key < k; };

  std::vector<QuaternaryPair> pairs;
  auto it = entries.begin();
  while (it != entries.end()) {
    auto group_end = std::find_if(it, entries.end(), [&](const Entry& e) { return e.key != it->key; });
    const auto want = detail::negated(it->key);
    // Each unordered pair is seen from both buckets; emit it from the smaller key.
    if (it->key < want) {
      auto mate = std::lower_bound(entries.begin(), entries.end(), want, key_less);
      auto mate_end = mate;
      while (mate_end != entries.end() && mate_end->key == want) ++mate_end;
      for (auto x = it; x != group_end; ++x) {
        for (auto y = mate; y != mate_end; ++y) {
          auto p = QuaternaryPair::try_certify(to_seq(x->index), to_seq(y->index));
          if (!p) throw ConsistencyError("enumerate_gcps: bucket match is not a GCP");
          pairs.push_back(p->canonical());
        }
      }
    }
    it = group_end;
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

/// Searches for a quaternary mate b with A_b(k) = -A_a(k) for all k != 0.
/// Depth-first over symbol pairs (b_t, b_{N-1-t}) from the outside in: once
/// both ends are placed, lag N-1-t is fully determined and can be pruned.
inline std::optional<QuaternarySequence> find_complementary_mate(const QuaternarySequence& a) {
  const std::size_t n = a.size();
  if (n == 0) throw DomainError("find_complementary_mate: empty sequence");
  if (n > kMaxEnumerationLength) {
    throw CapacityError("find_complementary_mate: length exceeds " + std::to_string(kMaxEnumerationLength));
  }
  const auto target_a = apac_vector(a.gaussian());
  std::vector<Gaussian> target(n);
  for (std::size_t k = 0; k < n; ++k) target[k] = -target_a[k];

  std::vector<std::uint8_t> b(n, 0);
  const auto lag_value = [&](std::size_t lag) {
    Gaussian acc{};
    for (std::size_t i = 0; i + lag < n; ++i) {
      acc += QuaternarySequence::unit(static_cast<std::uint8_t>((b[i + lag] - b[i]) & 3u));
    }
    return acc;
  };

  // Step t places b[t] and b[n-1-t]; b[0] is fixed to '+' (global phase).
  std::function<bool(std::size_t)> place = [&](std::size_t t) -> bool {
    const std::size_t lo = t;
    const std::size_t hi = n - 1 - t;
    if (lo > hi) {
      for (std::size_t k = 1; k < n; ++k) {
        if (!(lag_value(k) == target[k])) return false;
      }
      return true;
    }
    const unsigned lo_choices = (lo == 0) ? 1u : 4u;
    for (unsigned x = 0; x < lo_choices; ++x) {
      b[lo] = static_cast<std::uint8_t>(x);
      const unsigned hi_choices = (hi == lo) ? 1u : 4u;
      for (unsigned y = 0; y < hi_choices; ++y) {
        if (hi != lo) b[hi] = static_cast<std::uint8_t>(y);
        // With b[0..t] and b[n-1-t..n-1] placed, lag n-1-t is fully determined.
        const std::size_t lag = hi;
        if (lag >= 1 && !(lag_value(lag) == target[lag])) continue;
        if (place(t + 1)) return true;
      }
    }
    return false;
  };
  if (n == 1) return QuaternarySequence::parse("+");
  if (!place(0)) return std::nullopt;
  return QuaternarySequence(b);
}

inline bool is_complementary_sequence(const QuaternarySequence& a) {
  return find_complementary_mate(a).has_value();
}

}  // namespace ncgcp
