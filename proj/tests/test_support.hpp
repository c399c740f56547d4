// Shared helpers for the unit tests: seeded generators and direct oracles that
// do not go through the library's own evaluation paths.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "ncgcp/sequence.hpp"

namespace ncgcp::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(0x5eedc0de);
  return engine;
}

inline ComplexSequence random_complex(std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng()), g(rng())};
  return ComplexSequence(std::move(v));
}

inline ComplexSequence random_unimodular(std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<cplx> v(n);
  for (auto& x : v) x = std::polar(1.0, u(rng()));
  return ComplexSequence(std::move(v));
}

inline QuaternarySequence random_quaternary(std::size_t n) {
  std::uniform_int_distribution<int> u(0, 3);
  std::vector<std::uint8_t> e(n);
  for (auto& x : e) x = static_cast<std::uint8_t>(u(rng()));
  return QuaternarySequence(std::move(e));
}

inline cplx random_unit() {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, u(rng()));
}

/// sum_n a_n z^n term by term with explicit powers.
template <class Seq>
cplx direct_poly(const Seq& a, cplx z) {
  cplx acc{};
  for (std::size_t n = 0; n < a.size(); ++n) acc += cplx(a[n]) * std::pow(z, static_cast<double>(n));
  return acc;
}

inline cplx direct_poly(const GaussianSequence& a, cplx z) {
  cplx acc{};
  for (std::size_t n = 0; n < a.size(); ++n) acc += to_complex(a[n]) * std::pow(z, static_cast<double>(n));
  return acc;
}

/// Direct APAC from the definition, independent of apac_vector.
inline cplx direct_apac(const ComplexSequence& a, long k) {
  const long n = static_cast<long>(a.size());
  if (k < 0) return std::conj(direct_apac(a, -k));
  cplx acc{};
  for (long i = 0; i + k < n; ++i) acc += std::conj(a[i]) * a[i + k];
  return acc;
}

// Direct fractional-shift correlation, phase evaluated per term.
inline double direct_fractional_max(const ComplexSequence& a, const ComplexSequence& b, long u) {
  const double n = static_cast<double>(a.size());
  double best = 0.0;
  for (long q = 0; q < static_cast<long>(a.size()) * u; ++q) {
    const double delta = static_cast<double>(q) / static_cast<double>(u);
    cplx acc{};
    for (std::size_t t = 0; t < a.size(); ++t) {
      acc += a[t] * std::conj(b[t] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) * delta / n));
    }
    best = std::max(best, std::abs(acc) / n);
  }
  return best;
}

}  // namespace ncgcp::test
