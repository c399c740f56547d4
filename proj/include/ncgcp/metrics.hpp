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
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

#include "ncgcp/errors.hpp"
#include "ncgcp/fft.hpp"
#include "ncgcp/seqcore.hpp"
#include "ncgcp/spectrum.hpp"

namespace ncgcp {

/// IDFT size used for PAPR, CM and peak cross-correlation throughout.
inline constexpr std::size_t kDefaultIdftSize = 4096;

/// The 3 dB complementary-sequence PAPR bound, 10 log10(2).
inline const double kPaprBoundDb = 10.0 * std::log10(2.0);

/// Time-domain samples of one OFDM symbol.
class Waveform {
 public:
  Waveform() = default;
  explicit Waveform(std::vector<cplx> samples) : samples_(std::move(samples)) {}

  std::span<const cplx> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }

  double energy() const {
    return std::accumulate(samples_.begin(), samples_.end(), 0.0,
                           [](double s, const cplx& v) { return s + std::norm(v); });
  }
  double mean_power() const { return samples_.empty() ? 0.0 : energy() / static_cast<double>(samples_.size()); }
  double peak_power() const {
    double p = 0.0;
    for (const auto& v : samples_) p = std::max(p, std::norm(v));
    return p;
  }

 private:
  std::vector<cplx> samples_;
};

/// Maps the spectrum onto an n_idft-point grid and applies the unnormalized
/// inverse DFT, i.e. samples poly(f) at z = exp(i 2 pi t / n_idft).
inline Waveform synthesize(const SparseSpectrum& spec, std::size_t n_idft = kDefaultIdftSize) {
  if (n_idft < spec.grid_size()) throw DomainError("synthesize: n_idft smaller than the spectrum grid");
  if (!std::has_single_bit(n_idft)) throw DomainError("synthesize: n_idft must be a power of two");
  std::vector<cplx> grid(n_idft);
  for (const auto& t : spec.entries()) grid[t.index] = t.value;
  return Waveform(fft::inverse_dft(grid, n_idft));
}

/// 10 log10(peak / mean power).
inline double papr_db(const Waveform& w) {
  const double mean = w.mean_power();
  if (!(mean > 0.0)) throw DomainError("papr_db: zero-power waveform");
  return 10.0 * std::log10(w.peak_power() / mean);
}

inline double papr_db(const SparseSpectrum& spec, std::size_t n_idft = kDefaultIdftSize) {
  return papr_db(synthesize(spec, n_idft));
}

/// Cubic metric: 20 log10(rms(|v|^3)) / 1.56 with v normalized to unit power.
inline double cm_db(const Waveform& w) {
  const double mean = w.mean_power();
  if (!(mean > 0.0)) throw DomainError("cm_db: zero-power waveform");
  double acc = 0.0;
  for (const auto& s : w.samples()) {
    const double p = std::norm(s) / mean;
    acc += p * p * p;
  }
  const double rms = std::sqrt(acc / static_cast<double>(w.size()));
  return 20.0 * std::log10(rms) / 1.56;
}

inline double cm_db(const SparseSpectrum& spec, std::size_t n_idft = kDefaultIdftSize) {
  return cm_db(synthesize(spec, n_idft));
}

/// max |IDFT_{n_idft}(x_i . conj(x_j))| / N: the peak cross-correlation over
/// all time shifts on an n_idft-point grid.
inline double peak_xcorr(const ComplexSequence& xi, const ComplexSequence& xj,
                         std::size_t n_idft = kDefaultIdftSize) {
  if (xi.size() != xj.size()) throw DomainError("peak_xcorr: length mismatch");
  if (xi.empty()) throw DomainError("peak_xcorr: empty sequence");
  if (n_idft < xi.size()) throw DomainError("peak_xcorr: n_idft shorter than the sequences");
  std::vector<cplx> prod(xi.size());
  for (std::size_t n = 0; n < xi.size(); ++n) prod[n] = xi[n] * std::conj(xj[n]);
  double peak = 0.0;
  for (const auto& v : fft::inverse_dft(prod, n_idft)) peak = std::max(peak, std::abs(v));
  return peak / static_cast<double>(xi.size());
}

/// |<c_i, cyclic_modulate(c_j, delta)>| / N evaluated on delta in
/// {0, 1/u, ..., (N u - 1)/u}, by direct inner products against a cached
/// twiddle table. exceeds() visits the grid coarse-to-fine and stops at the
/// first value above the threshold.
class FractionalCorrelator {
 public:
  FractionalCorrelator(std::size_t length, long u) : length_(length), points_(length * static_cast<std::size_t>(u)) {
    if (length == 0) throw DomainError("FractionalCorrelator: empty sequences");
    if (u < 1) throw DomainError("FractionalCorrelator: u must be >= 1");
    twiddle_.resize(points_);
    for (std::size_t t = 0; t < points_; ++t) {
      twiddle_[t] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(points_));
    }
    // Integer shifts first, then successively finer subdivisions.
    std::vector<bool> seen(points_, false);
    order_.reserve(points_);
    for (std::size_t step = std::bit_floor(points_); step >= 1; step /= 2) {
      for (std::size_t q = 0; q < points_; q += step) {
        if (!seen[q]) {
          seen[q] = true;
          order_.push_back(q);
        }
      }
    }
    for (std::size_t q = 0; q < points_; ++q) {
      if (!seen[q]) order_.push_back(q);
    }
  }

  std::size_t length() const noexcept { return length_; }
  std::size_t grid_points() const noexcept { return points_; }

  /// Correlation magnitude at delta = q / u, normalized by N.
  double at(std::span<const cplx> product, std::size_t q) const {
    cplx acc{};
    std::size_t phase = 0;
    for (std::size_t n = 0; n < product.size(); ++n) {
      acc += product[n] * twiddle_[phase];
      phase += q;
      if (phase >= points_) phase %= points_;
    }
    return std::abs(acc) / static_cast<double>(length_);
  }

  double max(const ComplexSequence& ci, const ComplexSequence& cj) const {
    const auto prod = product(ci, cj);
    double best = 0.0;
    for (std::size_t q = 0; q < points_; ++q) best = std::max(best, at(prod, q));
    return best;
  }

  /// True iff some grid shift has correlation strictly above beta.
  bool exceeds(const ComplexSequence& ci, const ComplexSequence& cj, double beta) const {
    const auto prod = product(ci, cj);
    for (std::size_t q : order_) {
      if (at(prod, q) > beta) return true;
    }
    return false;
  }

 private:
  std::vector<cplx> product(const ComplexSequence& ci, const ComplexSequence& cj) const {
    if (ci.size() != length_ || cj.size() != length_) throw DomainError("FractionalCorrelator: length mismatch");
    std::vector<cplx> prod(length_);
    for (std::size_t n = 0; n < length_; ++n) prod[n] = ci[n] * std::conj(cj[n]);
    return prod;
  }

  std::size_t length_;
  std::size_t points_;
  std::vector<cplx> twiddle_;
  std::vector<std::size_t> order_;
};

/// max over delta in {0, 1/u, ..., (N u - 1)/u} of |<c_i, c_j . s_delta>| / N.
inline double fractional_xcorr_max(const ComplexSequence& ci, const ComplexSequence& cj, long u) {
  if (ci.size() != cj.size()) throw DomainError("fractional_xcorr_max: length mismatch");
  return FractionalCorrelator(ci.size(), u).max(ci, cj);
}

struct CcdfCurve {
  std::vector<double> thresholds;
  std::vector<double> exceed_prob;
};

/// exceed_prob[t] = fraction of values strictly greater than thresholds[t].
inline CcdfCurve ccdf(std::span<const double> values, std::span<const double> thresholds) {
  if (values.empty()) throw DomainError("ccdf: no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  CcdfCurve out;
  out.thresholds.assign(thresholds.begin(), thresholds.end());
  out.exceed_prob.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t);
    out.exceed_prob.push_back(static_cast<double>(above) / static_cast<double>(sorted.size()));
  }
  return out;
}

/// Evenly spaced thresholds from lo to hi inclusive.
inline std::vector<double> threshold_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw DomainError("threshold_grid: bad range");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

}  // namespace ncgcp
