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

#include <atomic>
#include <string>
#include <vector>

#include "ncgcp/golay.hpp"
#include "ncgcp/metrics.hpp"
#include "ncgcp/parallel.hpp"

namespace ncgcp {

struct SequenceSetPair {
  std::vector<QuaternarySequence> c;
  std::vector<QuaternarySequence> d;
  double beta = 0.715;
  long u = 128;

  std::size_t size() const noexcept { return c.size(); }
};

struct Admission {
  std::size_t seed_index;
  OrbitLabel label;
  std::size_t position;
};

struct SetSearchResult {
  SequenceSetPair sets;
  std::vector<Admission> log;
  std::size_t candidates_tested = 0;
};

namespace detail {

inline bool any_exceeds(const FractionalCorrelator& corr, const std::vector<ComplexSequence>& admitted,
                        const ComplexSequence& cand, double beta, unsigned workers) {
  if (workers <= 1 || admitted.size() < 2 * workers) {
    for (const auto& m : admitted) {
      if (corr.exceeds(cand, m, beta)) return true;
    }
    return false;
  }
  std::atomic<bool> hit{false};
  parallel_for(admitted.size(), workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (auto i = begin; i < end && !hit.load(std::memory_order_relaxed); ++i) {
      if (corr.exceeds(cand, admitted[i], beta)) hit = true;
    }
  });
  return hit;
}

}  // namespace detail

/// Greedy admission over the equivalence orbits of the seeds, in seed order.
inline SetSearchResult build_sets(const std::vector<QuaternaryPair>& seeds, double beta, long u,
                                  std::size_t k_target, unsigned workers = 1) {
  if (seeds.empty()) throw DomainError("build_sets: empty seed library");
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("build_sets: beta must lie in (0, 1]");
  if (u < 1) throw DomainError("build_sets: u must be >= 1");
  const std::size_t n = seeds.front().size();
  for (const auto& s : seeds) {
    if (s.size() != n) throw DomainError("build_sets: seeds of unequal length");
  }

  const FractionalCorrelator corr(n, u);
  SetSearchResult out;
  out.sets.beta = beta;
  out.sets.u = u;
  std::vector<ComplexSequence> cs, ds;
  for (std::size_t si = 0; si < seeds.size() && out.sets.size() < k_target; ++si) {
    for (const auto& member : equivalence_orbit(seeds[si])) {
      if (out.sets.size() >= k_target) break;
      ++out.candidates_tested;
      const auto c = member.pair.a().complex();
      const auto d = member.pair.b().complex();
      if (detail::any_exceeds(corr, cs, c, beta, workers)) continue;
      if (detail::any_exceeds(corr, ds, d, beta, workers)) continue;
      out.log.push_back({si, member.label, out.sets.size()});
      out.sets.c.push_back(member.pair.a());
      out.sets.d.push_back(member.pair.b());
      cs.push_back(c);
      ds.push_back(d);
    }
  }
  return out;
}

struct SetViolation {
  enum class Kind { not_gcp, length_mismatch, correlation_c, correlation_d };
  Kind kind;
  std::size_t i;
  std::size_t j;
  double value;

  std::string str() const {
    switch (kind) {
      case Kind::not_gcp: return "pair " + std::to_string(i) + " is not complementary";
      case Kind::length_mismatch: return "pair " + std::to_string(i) + " has mismatched length";
      case Kind::correlation_c: return "C[" + std::to_string(i) + "],C[" + std::to_string(j) + "] correlation " + std::to_string(value);
      case Kind::correlation_d: return "D[" + std::to_string(i) + "],D[" + std::to_string(j) + "] correlation " + std::to_string(value);
    }
    return {};
  }
};

struct SetReport {
  std::size_t pairs = 0;
  double max_c = 0.0;
  double max_d = 0.0;
  std::vector<SetViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

inline SetReport verify_sets(const SequenceSetPair& sets, unsigned workers = 1) {
  SetReport r;
  r.pairs = sets.size();
  if (sets.c.size() != sets.d.size()) {
    r.violations.push_back({SetViolation::Kind::length_mismatch, std::min(sets.c.size(), sets.d.size()), 0, 0.0});
    return r;
  }
  if (sets.c.empty()) return r;
  const std::size_t n = sets.c.front().size();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets.c[i].size() != n || sets.d[i].size() != n) {
      r.violations.push_back({SetViolation::Kind::length_mismatch, i, i, 0.0});
      return r;
    }
    if (!is_gcp(sets.c[i], sets.d[i])) r.violations.push_back({SetViolation::Kind::not_gcp, i, i, 0.0});
  }

  const FractionalCorrelator corr(n, sets.u);
  std::vector<ComplexSequence> cs, ds;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    cs.push_back(sets.c[i].complex());
    ds.push_back(sets.d[i].complex());
  }
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) jobs.emplace_back(i, j);
  }
  std::vector<double> vc(jobs.size()), vd(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (auto t = begin; t < end; ++t) {
      vc[t] = corr.max(cs[jobs[t].first], cs[jobs[t].second]);
      vd[t] = corr.max(ds[jobs[t].first], ds[jobs[t].second]);
    }
  });
  for (std::size_t t = 0; t < jobs.size(); ++t) {
    r.max_c = std::max(r.max_c, vc[t]);
    r.max_d = std::max(r.max_d, vd[t]);
    if (vc[t] > sets.beta) r.violations.push_back({SetViolation::Kind::correlation_c, jobs[t].first, jobs[t].second, vc[t]});
    if (vd[t] > sets.beta) r.violations.push_back({SetViolation::Kind::correlation_d, jobs[t].first, jobs[t].second, vd[t]});
  }
  return r;
}

}  // namespace ncgcp
