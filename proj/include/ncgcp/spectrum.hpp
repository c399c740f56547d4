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

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ncgcp/errors.hpp"
#include "ncgcp/sequence.hpp"

namespace ncgcp {

/// Interlace geometry: n_rb resource blocks of n_sc contiguous subcarriers,
/// consecutive blocks separated by n_null empty subcarriers. Subcarrier 0 is
/// the first tone of the first block.
struct InterlaceConfig {
  long n_rb = 10;
  long n_sc = 12;
  long n_null = 108;

  /// The 20 MHz LTE eLAA interlace: 10 RBs of 12 tones, 9 RBs apart.
  static constexpr InterlaceConfig lte() { return {10, 12, 108}; }

  long rb_spacing() const noexcept { return n_sc + n_null; }
  long span() const noexcept { return n_rb * n_sc + (n_rb - 1) * n_null; }
  long occupied() const noexcept { return n_rb * n_sc; }
  long rb_start(long rb) const noexcept { return rb * rb_spacing(); }

  void validate() const {
    if (n_rb < 1) throw DomainError("InterlaceConfig: n_rb must be >= 1");
    if (n_sc < 1) throw DomainError("InterlaceConfig: n_sc must be >= 1");
    if (n_null < 0) throw DomainError("InterlaceConfig: n_null must be >= 0");
  }

  std::vector<std::size_t> occupied_indices() const {
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(occupied()));
    for (long rb = 0; rb < n_rb; ++rb) {
      for (long t = 0; t < n_sc; ++t) out.push_back(static_cast<std::size_t>(rb_start(rb) + t));
    }
    return out;
  }

  friend bool operator==(const InterlaceConfig&, const InterlaceConfig&) = default;
};

struct Tone {
  std::size_t index = 0;
  cplx value{};
  friend bool operator==(const Tone&, const Tone&) = default;
};

/// Frequency-domain sequence as (subcarrier, value) entries on a grid of
/// grid_size subcarriers. Indices are strictly increasing.
class SparseSpectrum {
 public:
  SparseSpectrum() = default;

  SparseSpectrum(std::size_t grid_size, std::vector<Tone> entries)
      : grid_size_(grid_size), entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].index >= grid_size_) throw DomainError("SparseSpectrum: index outside grid");
      if (i > 0 && entries_[i].index <= entries_[i - 1].index) {
        throw DomainError("SparseSpectrum: indices must be strictly increasing");
      }
      if (!std::isfinite(entries_[i].value.real()) || !std::isfinite(entries_[i].value.imag())) {
        throw DomainError("SparseSpectrum: non-finite value");
      }
    }
  }

  /// Keeps the nonzero coefficients of a dense sequence.
  static SparseSpectrum from_dense(const ComplexSequence& dense) {
    std::vector<Tone> entries;
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (dense[i] != cplx{}) entries.push_back({i, dense[i]});
    }
    return SparseSpectrum(dense.size(), std::move(entries));
  }

  /// Places values, in order, onto the occupied tones of an interlace.
  static SparseSpectrum on_interlace(const InterlaceConfig& cfg, const ComplexSequence& values) {
    cfg.validate();
    if (static_cast<long>(values.size()) != cfg.occupied()) {
      throw DomainError("SparseSpectrum: " + std::to_string(values.size()) + " values for " +
                        std::to_string(cfg.occupied()) + " occupied tones");
    }
    const auto idx = cfg.occupied_indices();
    std::vector<Tone> entries(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) entries[i] = {idx[i], values[i]};
    return SparseSpectrum(static_cast<std::size_t>(cfg.span()), std::move(entries));
  }

  std::size_t grid_size() const noexcept { return grid_size_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Tone>& entries() const noexcept { return entries_; }

  ComplexSequence values() const {
    std::vector<cplx> v;
    v.reserve(entries_.size());
    for (const auto& e : entries_) v.push_back(e.value);
    return ComplexSequence(std::move(v));
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> v;
    v.reserve(entries_.size());
    for (const auto& e : entries_) v.push_back(e.index);
    return v;
  }

  ComplexSequence dense() const {
    std::vector<cplx> v(grid_size_);
    for (const auto& e : entries_) v[e.index] = e.value;
    return ComplexSequence(std::move(v));
  }

  double energy() const {
    double s = 0.0;
    for (const auto& e : entries_) s += std::norm(e.value);
    return s;
  }

  /// True iff the support is exactly the occupied tones of cfg.
  bool matches_interlace(const InterlaceConfig& cfg) const {
    if (static_cast<long>(grid_size_) != cfg.span()) return false;
    return indices() == cfg.occupied_indices();
  }

  friend bool operator==(const SparseSpectrum&, const SparseSpectrum&) = default;

 private:
  std::size_t grid_size_ = 0;
  std::vector<Tone> entries_;
};

}  // namespace ncgcp
