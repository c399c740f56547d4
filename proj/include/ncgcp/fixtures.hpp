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

// Reference sequences shipped with the library. The same data is available as
// JSON under data/ for the command-line tool.

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "ncgcp/golay.hpp"

namespace ncgcp::fixtures {

/// 30 length-12 GCPs (c_i, d_i) whose pairwise fractional-shift correlation
/// within each column stays at or below 0.715.
inline constexpr std::array<std::pair<std::string_view, std::string_view>, 30> kReferenceSets = {{
    {"+-ij+---++++", "-+-++-++jj++"},
    {"+-ji+---++++", "-+-++-++ii++"},
    {"++++i+-j+--+", "++--i++i+-+-"},
    {"+--+i-+j++++", "-+-+j++j--++"},
    {"++++j+-i+--+", "++--j++j+-+-"},
    {"+--+j-+i++++", "-+-+i++i--++"},
    {"++++i-+j+--+", "++--i--i+-+-"},
    {"+--+i+-j++++", "-+-+j--j--++"},
    {"++++j-+i+--+", "++--j--j+-+-"},
    {"+--+j+-i++++", "-+-+i--i--++"},
    {"++-+-j+j-+++", "--+-j-i--+++"},
    {"++-+-i+i-+++", "--+-i-j--+++"},
    {"+++--i-j-+--", "+++-j+j-+-++"},
    {"+++--j-i-+--", "+++-i+i-+-++"},
    {"++-++j-j-+++", "--+-j+i+-+++"},
    {"++-++i-i-+++", "--+-i+j+-+++"},
    {"+++-+i+j-+--", "+++-j-j++-++"},
    {"+++-+j+i-+--", "+++-i-i++-++"},
    {"+++-ii+-++-+", "+++---ji--+-"},
    {"+-++-+jj-+++", "-+--ji---+++"},
    {"+++-jj-+++-+", "+++-++ij--+-"},
    {"+-+++-ii-+++", "-+--ij++-+++"},
    {"+++i-+--i+-+", "+++i-+++j-+-"},
    {"+++j-+--j+-+", "+++j-+++i-+-"},
    {"++-+++ji---+", "++-+jj+-+++-"},
    {"+---ji+++-++", "-+++-+ii+-++"},
    {"++-+--ij---+", "++-+ii-++++-"},
    {"+---ij--+-++", "-++++-jj+-++"},
    {"++-+i+-i--++", "++-+i++j++--"},
    {"++--j-+j+-++", "--++i++j+-++"}
}};

/// Length-5 spreading pair for the non-coherent interlace.
inline constexpr std::string_view kNoncoherentA = "+++ji";
inline constexpr std::string_view kNoncoherentB = "+i-+j";

/// Length-12 per-RB pair used in the non-coherent construction example.
inline constexpr std::string_view kNoncoherentC = "++++---+ij-+";
inline constexpr std::string_view kNoncoherentD = "++ii++-++-+-";

/// Coherent scheme: length-10 spreading pair and length-6 half-RB pair.
inline constexpr std::string_view kCoherentA = "+++++-+--+";
inline constexpr std::string_view kCoherentB = "++--+++-+-";
inline constexpr std::string_view kCoherentC = "+++i-+";
inline constexpr std::string_view kCoherentD = "++j-+-";

inline std::vector<QuaternaryPair> reference_sets() {
  std::vector<QuaternaryPair> out;
  out.reserve(kReferenceSets.size());
  for (const auto& [c, d] : kReferenceSets) out.push_back(QuaternaryPair::parse(c, d));
  return out;
}

inline QuaternaryPair noncoherent_spreading() { return QuaternaryPair::parse(kNoncoherentA, kNoncoherentB); }
inline QuaternaryPair noncoherent_rb_pair() { return QuaternaryPair::parse(kNoncoherentC, kNoncoherentD); }
inline QuaternaryPair coherent_spreading() { return QuaternaryPair::parse(kCoherentA, kCoherentB); }
inline QuaternaryPair coherent_half_pair() { return QuaternaryPair::parse(kCoherentC, kCoherentD); }

}  // namespace ncgcp::fixtures
