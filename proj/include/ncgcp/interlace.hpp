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

// Interlace builders. Each one is the two-seed construction with parameters
// chosen so that the output's support is exactly an interlace: RB r occupies
// subcarriers [r (n_sc + n_null), r (n_sc + n_null) + n_sc).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "ncgcp/errors.hpp"
#include "ncgcp/golay.hpp"
#include "ncgcp/metrics.hpp"
#include "ncgcp/spectrum.hpp"

namespace ncgcp {

/// QPSK phasor set {e^{i pi/4}, e^{i 3pi/4}, e^{-i 3pi/4}, e^{-i pi/4}}, indexed
/// counterclockwise from e^{i pi/4}.
inline cplx q2_symbol(int index) {
  return std::polar(1.0, std::numbers::pi / 4.0 + std::numbers::pi / 2.0 * static_cast<double>(index & 3));
}

/// Phasor on the non-coherent spreading branches and the coherent pilot.
inline cplx reference_phasor() { return q2_symbol(0); }

enum class Scheme { noncoherent, noncoherent_adjacent, coherent };

/// One- or two-bit uplink control payload.
struct UciPayload {
  int bits = 1;     // 1 or 2
  int value = 0;    // 0 .. 2^bits - 1; for one bit, 1 = ACK, 0 = NACK
  long user_shift = 0;

  void validate() const {
    if (bits != 1 && bits != 2) throw DomainError("UciPayload: bits must be 1 or 2");
    if (value < 0 || value >= (1 << bits)) throw DomainError("UciPayload: value out of range");
    if (user_shift < 0) throw DomainError("UciPayload: negative user shift");
  }
};

/// Non-coherent payload map: the payload selects one of 2^bits cyclic shifts
/// spread evenly around the n_sc available ones, offset by the user's shift.
/// For n_sc = 12: one bit uses {0, 6}, two bits use {0, 3, 6, 9}, Gray coded.
inline long noncoherent_shift(long n_sc, const UciPayload& p) {
  p.validate();
  if (n_sc % (1L << p.bits) != 0) throw DomainError("noncoherent_shift: n_sc not divisible by 2^bits");
  static constexpr int kGray2[4] = {0, 1, 3, 2};  // value -> position on the shift ring
  const long step = n_sc >> p.bits;
  const long pos = p.bits == 1 ? p.value : kGray2[p.value];
  return (p.user_shift + pos * step) % n_sc;
}

/// Coherent payload map for the data phasor. One bit is antipodal around the
/// pilot phasor (ACK = pilot phase); two bits are Gray-coded QPSK.
inline cplx coherent_symbol(const UciPayload& p) {
  p.validate();
  if (p.bits == 1) return p.value == 1 ? q2_symbol(0) : q2_symbol(2);
  static constexpr int kGray2[4] = {0, 1, 3, 2};
  return q2_symbol(kGray2[p.value]);
}

namespace detail {

inline SparseSpectrum extract_interlace(const InterlaceConfig& cfg, const ComplexSequence& f) {
  if (static_cast<long>(f.size()) != cfg.span()) {
    throw ConsistencyError("interlace: constructed length " + std::to_string(f.size()) + " != span " +
                           std::to_string(cfg.span()));
  }
  std::vector<Tone> entries;
  entries.reserve(static_cast<std::size_t>(cfg.occupied()));
  const auto occupied = cfg.occupied_indices();
  std::size_t next = 0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    if (next < occupied.size() && occupied[next] == n) {
      entries.push_back({n, f[n]});
      ++next;
    } else if (f[n] != cplx{}) {
      throw ConsistencyError("interlace: energy outside the occupied tones");
    }
  }
  return SparseSpectrum(f.size(), std::move(entries));
}

inline ComplexPair modulated(const ComplexPair& p, double delta) {
  return ComplexPair::certify(cyclic_modulate(p.a(), delta), cyclic_modulate(p.b(), delta));
}

}  // namespace detail

/// Construction parameters of the non-coherent interlace: k = n_sc + n_null,
/// l = 1, m = k n_rb / 2. c-bearing RBs come first, d-bearing RBs second.
inline ConstructionParams<cplx> noncoherent_params(const InterlaceConfig& cfg) {
  const long k = cfg.rb_spacing();
  return {reference_phasor(), reference_phasor(), k, 1, k * cfg.n_rb / 2};
}

/// Adjacent variant: k = 2 (n_sc + n_null), l = 1, m = n_sc + n_null, so c- and
/// d-bearing RBs alternate.
inline ConstructionParams<cplx> noncoherent_adjacent_params(const InterlaceConfig& cfg) {
  const long k = cfg.rb_spacing();
  return {reference_phasor(), reference_phasor(), 2 * k, 1, k};
}

/// Coherent interlace: k = n_sc + n_null, l = 2, m = 1.
inline ConstructionParams<cplx> coherent_params(const InterlaceConfig& cfg, cplx omega1, cplx omega2) {
  return {omega1, omega2, cfg.rb_spacing(), 2, 1};
}

namespace detail {

inline void check_noncoherent(const InterlaceConfig& cfg, const ComplexPair& spread, const ComplexPair& rb_pair) {
  cfg.validate();
  if (cfg.n_rb < 2 || cfg.n_rb % 2 != 0) throw DomainError("non-coherent interlace: n_rb must be even and >= 2");
  if (static_cast<long>(spread.size()) != cfg.n_rb / 2) {
    throw DomainError("non-coherent interlace: spreading pair length must be n_rb / 2");
  }
  if (static_cast<long>(rb_pair.size()) != cfg.n_sc) {
    throw DomainError("non-coherent interlace: RB pair length must be n_sc");
  }
}

}  // namespace detail

/// Full (f, g) pair of the non-coherent construction; f is the transmitted
/// sequence, g its complementary mate. delta is the cyclic-shift resource,
/// applied to both RB sequences.
inline ComplexPair construct_noncoherent(const InterlaceConfig& cfg, const ComplexPair& spread,
                                         const ComplexPair& rb_pair, double delta, bool adjacent = false) {
  detail::check_noncoherent(cfg, spread, rb_pair);
  const auto params = adjacent ? noncoherent_adjacent_params(cfg) : noncoherent_params(cfg);
  return compose_gcp(spread, detail::modulated(rb_pair, delta), params);
}

inline SparseSpectrum build_noncoherent(const InterlaceConfig& cfg, const ComplexPair& spread,
                                        const ComplexPair& rb_pair, double delta) {
  return detail::extract_interlace(cfg, construct_noncoherent(cfg, spread, rb_pair, delta).a());
}

inline SparseSpectrum build_noncoherent_adjacent(const InterlaceConfig& cfg, const ComplexPair& spread,
                                                 const ComplexPair& rb_pair, double delta) {
  return detail::extract_interlace(cfg, construct_noncoherent(cfg, spread, rb_pair, delta, true).a());
}

/// Coherent construction. Within RB r, even local tones carry omega1 a_r c and
/// odd local tones carry omega2 b_r d. Fixing omega1 turns the even tones into
/// reference symbols; omega2 carries the data phasor. delta cyclically shifts
/// the half-RB pair for code-domain multiplexing.
inline ComplexPair construct_coherent(const InterlaceConfig& cfg, const ComplexPair& spread,
                                      const ComplexPair& half_pair, cplx omega1, cplx omega2, double delta = 0.0) {
  cfg.validate();
  if (cfg.n_sc % 2 != 0) throw DomainError("coherent interlace: n_sc must be even");
  if (static_cast<long>(spread.size()) != cfg.n_rb) {
    throw DomainError("coherent interlace: spreading pair length must be n_rb");
  }
  if (static_cast<long>(half_pair.size()) * 2 != cfg.n_sc) {
    throw DomainError("coherent interlace: half pair length must be n_sc / 2");
  }
  return compose_gcp(spread, detail::modulated(half_pair, delta), coherent_params(cfg, omega1, omega2));
}

inline SparseSpectrum build_coherent(const InterlaceConfig& cfg, const ComplexPair& spread,
                                     const ComplexPair& half_pair, cplx omega1, cplx omega2, double delta = 0.0) {
  return detail::extract_interlace(cfg, construct_coherent(cfg, spread, half_pair, omega1, omega2, delta).a());
}

/// Pilot tones of a coherent interlace built with omega1 = reference_phasor():
/// even local tones of every RB and their known values.
inline SparseSpectrum coherent_pilots(const InterlaceConfig& cfg, const ComplexPair& spread,
                                      const ComplexPair& half_pair, double delta = 0.0) {
  const auto full = build_coherent(cfg, spread, half_pair, reference_phasor(), reference_phasor(), delta);
  std::vector<Tone> pilots;
  for (const auto& t : full.entries()) {
    const long local = static_cast<long>(t.index) % cfg.rb_spacing();
    if (local % 2 == 0) pilots.push_back(t);
  }
  return SparseSpectrum(full.grid_size(), std::move(pilots));
}

/// Zadoff-Chu sequence exp(-i pi r n (n + 1) / length), n = 0 .. out_length - 1,
/// cyclically extended past length.
inline ComplexSequence zadoff_chu(long root, long length, long out_length) {
  if (length < 1 || out_length < 1) throw DomainError("zadoff_chu: lengths must be positive");
  std::vector<cplx> x(static_cast<std::size_t>(out_length));
  for (long i = 0; i < out_length; ++i) {
    const long n = i % length;
    // Reduce r n (n+1) mod 2L exactly before converting to a phase.
    const long num = (root % (2 * length)) * ((n * (n + 1)) % (2 * length)) % (2 * length);
    x[static_cast<std::size_t>(i)] = std::polar(1.0, -std::numbers::pi * static_cast<double>(num) / static_cast<double>(length));
  }
  return ComplexSequence(std::move(x));
}

inline constexpr long kZcLength = 113;

struct ZcCandidate {
  long root = 0;
  double papr_db = 0.0;
  SparseSpectrum spectrum;
};

/// All roots 1..112 of the length-113 ZC sequence, cyclically extended to the
/// interlace's 120 occupied tones, ranked by PAPR (ties by root); the best
/// set_size are returned.
inline std::vector<ZcCandidate> zadoff_chu_set(const InterlaceConfig& cfg, std::size_t set_size,
                                               std::size_t n_idft = kDefaultIdftSize) {
  cfg.validate();
  if (cfg.occupied() != 120) throw DomainError("zadoff_chu_set: interlace must have 120 occupied tones");
  if (set_size > static_cast<std::size_t>(kZcLength - 1)) throw DomainError("zadoff_chu_set: set larger than root count");
  std::vector<ZcCandidate> all;
  for (long r = 1; r < kZcLength; ++r) {
    auto spec = SparseSpectrum::on_interlace(cfg, zadoff_chu(r, kZcLength, cfg.occupied()));
    const double p = papr_db(spec, n_idft);
    all.push_back({r, p, std::move(spec)});
  }
  std::stable_sort(all.begin(), all.end(), [](const ZcCandidate& x, const ZcCandidate& y) { return x.papr_db < y.papr_db; });
  all.resize(set_size);
  return all;
}

/// Comparison scheme: RB k carries cyclic_modulate(base, k).
inline SparseSpectrum cycling_baseline(const InterlaceConfig& cfg, const ComplexSequence& base) {
  cfg.validate();
  if (static_cast<long>(base.size()) != cfg.n_sc) throw DomainError("cycling_baseline: base length must be n_sc");
  std::vector<cplx> values;
  values.reserve(static_cast<std::size_t>(cfg.occupied()));
  for (long rb = 0; rb < cfg.n_rb; ++rb) {
    const auto shifted = cyclic_modulate(base, static_cast<double>(rb));
    values.insert(values.end(), shifted.begin(), shifted.end());
  }
  return SparseSpectrum::on_interlace(cfg, ComplexSequence(std::move(values)));
}

/// Values on RB rb of an interlace spectrum, in local tone order.
inline ComplexSequence rb_values(const InterlaceConfig& cfg, const SparseSpectrum& spec, long rb) {
  if (rb < 0 || rb >= cfg.n_rb) throw DomainError("rb_values: RB index out of range");
  std::vector<cplx> out;
  const long lo = cfg.rb_start(rb);
  for (const auto& t : spec.entries()) {
    const long i = static_cast<long>(t.index);
    if (i >= lo && i < lo + cfg.n_sc) out.push_back(t.value);
  }
  return ComplexSequence(std::move(out));
}

/// Largest fractional-shift correlation between the two spectra's values on
/// the same RB, over all RBs of the interlace.
inline double per_rb_xcorr_max(const InterlaceConfig& cfg, const SparseSpectrum& x, const SparseSpectrum& y, long u) {
  const FractionalCorrelator corr(static_cast<std::size_t>(cfg.n_sc), u);
  double best = 0.0;
  for (long rb = 0; rb < cfg.n_rb; ++rb) best = std::max(best, corr.max(rb_values(cfg, x, rb), rb_values(cfg, y, rb)));
  return best;
}

}  // namespace ncgcp
