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
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ncgcp/errors.hpp"
#include "ncgcp/fixtures.hpp"
#include "ncgcp/interlace.hpp"
#include "ncgcp/parallel.hpp"

namespace ncgcp {

enum class LinkScheme { noncoherent, coherent, single_rb_noncoherent, single_rb_coherent };
enum class ChannelModel { flat, iid_per_rb };
/// equal_total_energy: the nominal SNR is the per-tone SNR of the full
/// interlace, and every scheme radiates that interlace's total energy, so a
/// single-RB transmission gets n_rb times the tone power. per_tone_equal:
/// every occupied tone gets the nominal SNR.
enum class Normalization { equal_total_energy, per_tone_equal };
/// joint: one correlation over all occupied tones. per_rb: one per RB,
/// combined non-coherently. automatic: joint for flat fading, per_rb otherwise.
enum class Combining { automatic, joint, per_rb };
enum class Decision { dtx, ack, nack };
enum class Hypothesis { dtx, ack, nack };

inline std::string to_string(LinkScheme s) {
  switch (s) {
    case LinkScheme::noncoherent: return "non-coherent";
    case LinkScheme::coherent: return "coherent";
    case LinkScheme::single_rb_noncoherent: return "single-rb-non-coherent";
    case LinkScheme::single_rb_coherent: return "single-rb-coherent";
  }
  return {};
}

inline std::string to_string(ChannelModel c) { return c == ChannelModel::flat ? "flat" : "iid_per_rb"; }

inline bool is_coherent(LinkScheme s) { return s == LinkScheme::coherent || s == LinkScheme::single_rb_coherent; }
inline bool is_single_rb(LinkScheme s) {
  return s == LinkScheme::single_rb_noncoherent || s == LinkScheme::single_rb_coherent;
}

inline std::vector<double> default_snr_grid() {
  std::vector<double> g;
  for (int s = -10; s <= 10; s += 2) g.push_back(s);
  return g;
}

struct SimConfig {
  LinkScheme scheme = LinkScheme::noncoherent;
  ChannelModel channel = ChannelModel::flat;
  std::vector<double> snr_grid_db = default_snr_grid();
  int n_rx = 2;
  double dtx_target = 0.01;
  std::size_t n_trials = 10000;
  std::size_t n_calibration_trials = 100000;
  std::uint64_t rng_seed = 1;
  Normalization normalization = Normalization::equal_total_energy;
  Combining combining = Combining::automatic;
  InterlaceConfig interlace = InterlaceConfig::lte();
  unsigned workers = 1;

  void validate() const {
    if (!(dtx_target > 0.0 && dtx_target < 1.0)) throw DomainError("SimConfig: dtx_target must lie in (0, 1)");
    if (n_rx < 1) throw DomainError("SimConfig: n_rx must be >= 1");
    if (n_trials < 1 || n_calibration_trials < 1) throw DomainError("SimConfig: trial counts must be >= 1");
    if (snr_grid_db.empty()) throw DomainError("SimConfig: empty SNR grid");
    for (double s : snr_grid_db) {
      if (!std::isfinite(s)) throw DomainError("SimConfig: non-finite SNR");
    }
    interlace.validate();
  }

  Combining effective_combining() const {
    if (combining != Combining::automatic) return combining;
    return channel == ChannelModel::flat ? Combining::joint : Combining::per_rb;
  }
};

/// Tone values of the ACK and NACK transmissions over the occupied tones,
/// listed RB by RB. For coherent schemes `reference` carries the known tone
/// values with a unit data phasor, and `pilot` marks the fixed-phasor tones.
struct LinkWaveforms {
  LinkScheme scheme;
  long n_rb;
  long n_sc;
  std::vector<std::size_t> indices;
  std::size_t grid_size;
  std::vector<cplx> ack;
  std::vector<cplx> nack;
  std::vector<cplx> reference;
  std::vector<bool> pilot;
  cplx ack_symbol{1.0};
  cplx nack_symbol{-1.0};

  std::size_t tones() const noexcept { return indices.size(); }
};

inline LinkWaveforms make_waveforms(LinkScheme scheme, const InterlaceConfig& interlace = InterlaceConfig::lte()) {
  const UciPayload ack{1, 1, 0};
  const UciPayload nack{1, 0, 0};
  LinkWaveforms w{};
  w.scheme = scheme;
  const InterlaceConfig cfg = is_single_rb(scheme) ? InterlaceConfig{1, interlace.n_sc, 0} : interlace;
  w.n_rb = cfg.n_rb;
  w.n_sc = cfg.n_sc;
  w.indices = cfg.occupied_indices();
  w.grid_size = static_cast<std::size_t>(cfg.span());
  const auto take = [](const SparseSpectrum& s) {
    const auto v = s.values();
    return std::vector<cplx>(v.begin(), v.end());
  };

  if (!is_coherent(scheme)) {
    const auto base = fixtures::reference_sets().front();
    const auto shift_ack = static_cast<double>(noncoherent_shift(cfg.n_sc, ack));
    const auto shift_nack = static_cast<double>(noncoherent_shift(cfg.n_sc, nack));
    if (scheme == LinkScheme::noncoherent) {
      const auto spread = fixtures::noncoherent_spreading().complex();
      w.ack = take(build_noncoherent(cfg, spread, base.complex(), shift_ack));
      w.nack = take(build_noncoherent(cfg, spread, base.complex(), shift_nack));
    } else {
      const auto c = base.a().complex();
      if (static_cast<long>(c.size()) != cfg.n_sc) throw DomainError("make_waveforms: single-RB base needs n_sc = 12");
      const auto a = cyclic_modulate(c, shift_ack);
      const auto n = cyclic_modulate(c, shift_nack);
      w.ack.assign(a.begin(), a.end());
      w.nack.assign(n.begin(), n.end());
    }
    return w;
  }

  const auto half = fixtures::coherent_half_pair().complex();
  const auto spread = scheme == LinkScheme::coherent ? fixtures::coherent_spreading().complex()
                                                     : QuaternaryPair::parse("+", "+").complex();
  w.ack_symbol = coherent_symbol(ack);
  w.nack_symbol = coherent_symbol(nack);
  w.ack = take(build_coherent(cfg, spread, half, reference_phasor(), w.ack_symbol));
  w.nack = take(build_coherent(cfg, spread, half, reference_phasor(), w.nack_symbol));
  w.reference = take(build_coherent(cfg, spread, half, reference_phasor(), 1.0));
  w.pilot.resize(w.tones());
  for (std::size_t t = 0; t < w.tones(); ++t) w.pilot[t] = (t % static_cast<std::size_t>(w.n_sc)) % 2 == 0;
  return w;
}

namespace detail {

// Received tones are laid out antenna-major: rx[r * tones + t].

inline double noncoherent_metric(const cplx* rx, int n_rx, const LinkWaveforms& w, const std::vector<cplx>& cand,
                                 bool joint) {
  const std::size_t tones = w.tones();
  const std::size_t group = joint ? tones : static_cast<std::size_t>(w.n_sc);
  double metric = 0.0;
  for (int r = 0; r < n_rx; ++r) {
    const cplx* y = rx + static_cast<std::size_t>(r) * tones;
    for (std::size_t g0 = 0; g0 < tones; g0 += group) {
      cplx acc{};
      for (std::size_t t = g0; t < g0 + group; ++t) acc += std::conj(cand[t]) * y[t];
      metric += std::norm(acc) / static_cast<double>(group);
    }
  }
  return metric;
}

struct CoherentStats {
  double energy;
  cplx combined;
};

inline CoherentStats coherent_stats(const cplx* rx, int n_rx, const LinkWaveforms& w, bool joint) {
  const std::size_t tones = w.tones();
  const std::size_t group = joint ? tones : static_cast<std::size_t>(w.n_sc);
  CoherentStats s{0.0, {}};
  for (int r = 0; r < n_rx; ++r) {
    const cplx* y = rx + static_cast<std::size_t>(r) * tones;
    for (std::size_t g0 = 0; g0 < tones; g0 += group) {
      cplx pc{}, dc{};
      std::size_t np = 0, nd = 0;
      for (std::size_t t = g0; t < g0 + group; ++t) {
        const cplx v = std::conj(w.reference[t]) * y[t];
        if (w.pilot[t]) {
          pc += v;
          ++np;
        } else {
          dc += v;
          ++nd;
        }
      }
      const cplx h = pc / static_cast<double>(np);
      s.energy += std::norm(pc) / static_cast<double>(np) + std::norm(dc) / static_cast<double>(nd);
      s.combined += std::conj(h) * dc;
    }
  }
  return s;
}

/// Statistic whose exceedance of the threshold means "ACK declared"; -inf when
/// the receiver would pick NACK regardless of the threshold.
inline double ack_statistic(const cplx* rx, int n_rx, const LinkWaveforms& w, bool joint) {
  constexpr double kNever = -std::numeric_limits<double>::infinity();
  if (is_coherent(w.scheme)) {
    const auto s = coherent_stats(rx, n_rx, w, joint);
    const bool ack = std::real(s.combined * std::conj(w.ack_symbol)) >= std::real(s.combined * std::conj(w.nack_symbol));
    return ack ? s.energy : kNever;
  }
  const double ma = noncoherent_metric(rx, n_rx, w, w.ack, joint);
  const double mn = noncoherent_metric(rx, n_rx, w, w.nack, joint);
  return ma >= mn ? ma : kNever;
}

inline Decision decide(const cplx* rx, int n_rx, const LinkWaveforms& w, bool joint, double threshold) {
  if (is_coherent(w.scheme)) {
    const auto s = coherent_stats(rx, n_rx, w, joint);
    if (s.energy < threshold) return Decision::dtx;
    return std::real(s.combined * std::conj(w.ack_symbol)) >= std::real(s.combined * std::conj(w.nack_symbol))
               ? Decision::ack
               : Decision::nack;
  }
  const double ma = noncoherent_metric(rx, n_rx, w, w.ack, joint);
  const double mn = noncoherent_metric(rx, n_rx, w, w.nack, joint);
  if (std::max(ma, mn) < threshold) return Decision::dtx;
  return ma >= mn ? Decision::ack : Decision::nack;
}

inline std::vector<cplx> gather(const std::vector<SparseSpectrum>& received, const LinkWaveforms& w) {
  if (received.empty()) throw DomainError("detect: no receive antennas");
  std::vector<cplx> rx;
  rx.reserve(received.size() * w.tones());
  for (const auto& s : received) {
    if (s.grid_size() != w.grid_size) throw DomainError("detect: grid size mismatch");
    // Tones absent from the sparse spectrum were received as exact zeros.
    std::size_t k = 0;
    const auto& e = s.entries();
    for (std::size_t idx : w.indices) {
      while (k < e.size() && e[k].index < idx) ++k;
      rx.push_back(k < e.size() && e[k].index == idx ? e[k].value : cplx{});
    }
  }
  return rx;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t kCalibrationStream = ~std::uint64_t{0};

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t hypothesis,
                                std::uint64_t trial) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ snr_index);
  s = splitmix64(s ^ hypothesis);
  return splitmix64(s ^ trial);
}

/// Draws one channel and noise realization and fills rx.
inline void transmit(std::mt19937_64& gen, const LinkWaveforms& w, const std::vector<cplx>* tx, double amplitude,
                     ChannelModel channel, int n_rx, std::vector<cplx>& gains, std::vector<cplx>& rx) {
  std::normal_distribution<double> half(0.0, std::sqrt(0.5));
  const std::size_t tones = w.tones();
  const std::size_t per_ant = channel == ChannelModel::flat ? 1 : static_cast<std::size_t>(w.n_rb);
  gains.resize(static_cast<std::size_t>(n_rx) * per_ant);
  for (auto& g : gains) {
    const double re = half(gen);
    g = {re, half(gen)};
  }
  rx.resize(static_cast<std::size_t>(n_rx) * tones);
  for (int r = 0; r < n_rx; ++r) {
    for (std::size_t t = 0; t < tones; ++t) {
      const double re = half(gen);
      cplx v{re, half(gen)};
      if (tx) {
        const std::size_t rb = per_ant == 1 ? 0 : t / static_cast<std::size_t>(w.n_sc);
        v += amplitude * gains[static_cast<std::size_t>(r) * per_ant + rb] * (*tx)[t];
      }
      rx[static_cast<std::size_t>(r) * tones + t] = v;
    }
  }
}

}  // namespace detail

/// Per-antenna received spectra for a noise-free transmission through the
/// given per-antenna, per-RB gains (gains[r][rb]); for tests and tooling.
inline std::vector<SparseSpectrum> received_spectra(const LinkWaveforms& w, const std::vector<cplx>& tx,
                                                    const std::vector<std::vector<cplx>>& gains) {
  std::vector<SparseSpectrum> out;
  for (const auto& g : gains) {
    if (static_cast<long>(g.size()) != w.n_rb) throw DomainError("received_spectra: need one gain per RB");
    std::vector<Tone> e;
    for (std::size_t t = 0; t < w.tones(); ++t) e.push_back({w.indices[t], g[t / static_cast<std::size_t>(w.n_sc)] * tx[t]});
    out.emplace_back(w.grid_size, std::move(e));
  }
  return out;
}

inline Decision detect_noncoherent(const std::vector<SparseSpectrum>& received, const LinkWaveforms& w,
                                   double threshold, Combining combining = Combining::per_rb) {
  if (is_coherent(w.scheme)) throw DomainError("detect_noncoherent: coherent waveform set");
  const auto rx = detail::gather(received, w);
  return detail::decide(rx.data(), static_cast<int>(received.size()), w, combining == Combining::joint, threshold);
}

inline Decision detect_coherent(const std::vector<SparseSpectrum>& received, const LinkWaveforms& w,
                                double threshold, Combining combining = Combining::per_rb) {
  if (!is_coherent(w.scheme)) throw DomainError("detect_coherent: non-coherent waveform set");
  const auto rx = detail::gather(received, w);
  return detail::decide(rx.data(), static_cast<int>(received.size()), w, combining == Combining::joint, threshold);
}

/// Per-tone amplitude at the given nominal SNR.
inline double tone_amplitude(const SimConfig& cfg, const LinkWaveforms& w, double snr_db) {
  double es = std::pow(10.0, snr_db / 10.0);
  if (cfg.normalization == Normalization::equal_total_energy) {
    es *= static_cast<double>(cfg.interlace.occupied()) / static_cast<double>(w.tones());
  }
  return std::sqrt(es);
}

/// Threshold giving an ACK-declaration rate of cfg.dtx_target on noise-only
/// trials, taken as the matching order statistic of the declaration statistic.
inline double calibrate_dtx_threshold(const SimConfig& cfg, double target) {
  if (target >= 1.0) return 0.0;
  if (!(target > 0.0)) throw DomainError("calibrate_dtx_threshold: target must be positive");
  const auto w = make_waveforms(cfg.scheme, cfg.interlace);
  const bool joint = cfg.effective_combining() == Combining::joint;
  const std::size_t n = cfg.n_calibration_trials;
  std::vector<double> stat(n);
  parallel_for(n, cfg.workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<cplx> gains, rx;
    for (auto t = begin; t < end; ++t) {
      std::mt19937_64 gen(detail::trial_seed(cfg.rng_seed, detail::kCalibrationStream, 0, t));
      detail::transmit(gen, w, nullptr, 0.0, cfg.channel, cfg.n_rx, gains, rx);
      stat[t] = detail::ack_statistic(rx.data(), cfg.n_rx, w, joint);
    }
  });
  std::sort(stat.begin(), stat.end(), std::greater<>());
  const auto k = static_cast<std::size_t>(std::llround(target * static_cast<double>(n)));
  if (k == 0) return std::nextafter(stat.front(), std::numeric_limits<double>::infinity());
  if (!std::isfinite(stat[k - 1])) {
    throw CalibrationError("calibrate_dtx_threshold: target exceeds the achievable ACK-declaration rate");
  }
  return stat[k - 1];
}

inline double calibrate_dtx_threshold(const SimConfig& cfg) {
  cfg.validate();
  return calibrate_dtx_threshold(cfg, cfg.dtx_target);
}

struct RateEstimate {
  std::size_t events = 0;
  std::size_t trials = 0;
  double rate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;

  double half_width() const noexcept { return 0.5 * (ci_hi - ci_lo); }
};

/// Wilson score interval at 95 %.
inline RateEstimate binomial_estimate(std::size_t events, std::size_t trials) {
  if (trials == 0) throw DomainError("binomial_estimate: zero trials");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(events) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  const double lo = events == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = events == trials ? 1.0 : std::min(1.0, centre + half);
  return {events, trials, p, lo, hi};
}

inline bool intervals_overlap(const RateEstimate& a, const RateEstimate& b) {
  return a.ci_lo <= b.ci_hi && b.ci_lo <= a.ci_hi;
}

struct SnrPoint {
  double snr_db;
  RateEstimate dtx_to_ack;
  RateEstimate nack_to_ack;
  RateEstimate ack_miss;
};

struct SimReport {
  SimConfig config;
  double threshold = 0.0;
  std::vector<SnrPoint> points;
};

/// Counts ACK declarations (or non-ACK declarations for the ACK hypothesis)
/// over n trials of one hypothesis at one SNR.
inline std::size_t run_trials(const SimConfig& cfg, const LinkWaveforms& w, double threshold, std::size_t snr_index,
                              double snr_db, Hypothesis h) {
  const bool joint = cfg.effective_combining() == Combining::joint;
  const double amp = tone_amplitude(cfg, w, snr_db);
  const std::vector<cplx>* tx = h == Hypothesis::ack ? &w.ack : h == Hypothesis::nack ? &w.nack : nullptr;
  const unsigned workers = std::max(1u, cfg.workers);
  std::vector<std::size_t> counts(workers, 0);
  const std::uint64_t chunk = (cfg.n_trials + workers - 1) / workers;
  parallel_for(workers, workers, [&](std::uint64_t wb, std::uint64_t we) {
    std::vector<cplx> gains, rx;
    for (auto k = wb; k < we; ++k) {
      std::size_t c = 0;
      for (std::uint64_t t = k * chunk; t < std::min<std::uint64_t>(cfg.n_trials, (k + 1) * chunk); ++t) {
        std::mt19937_64 gen(detail::trial_seed(cfg.rng_seed, snr_index, static_cast<std::uint64_t>(h), t));
        detail::transmit(gen, w, tx, amp, cfg.channel, cfg.n_rx, gains, rx);
        const Decision d = detail::decide(rx.data(), cfg.n_rx, w, joint, threshold);
        c += h == Hypothesis::ack ? d != Decision::ack : d == Decision::ack;
      }
      counts[k] = c;
    }
  });
  std::size_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

inline SimReport run_sim(const SimConfig& cfg) {
  cfg.validate();
  SimReport rep;
  rep.config = cfg;
  rep.threshold = calibrate_dtx_threshold(cfg);
  const auto w = make_waveforms(cfg.scheme, cfg.interlace);
  for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
    const double snr = cfg.snr_grid_db[i];
    SnrPoint p{snr, {}, {}, {}};
    p.dtx_to_ack = binomial_estimate(run_trials(cfg, w, rep.threshold, i, snr, Hypothesis::dtx), cfg.n_trials);
    p.nack_to_ack = binomial_estimate(run_trials(cfg, w, rep.threshold, i, snr, Hypothesis::nack), cfg.n_trials);
    p.ack_miss = binomial_estimate(run_trials(cfg, w, rep.threshold, i, snr, Hypothesis::ack), cfg.n_trials);
    rep.points.push_back(p);
  }
  return rep;
}

}  // namespace ncgcp
