#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "ncgcp/fixtures.hpp"
#include "ncgcp/metrics.hpp"
#include "test_support.hpp"

using namespace ncgcp;
using Catch::Approx;

namespace {

SparseSpectrum random_sparse(std::size_t grid, std::size_t count) {
  std::vector<std::size_t> idx(grid);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), test::rng());
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  const auto vals = test::random_complex(count);
  std::vector<Tone> entries;
  for (std::size_t i = 0; i < count; ++i) entries.push_back({idx[i], vals[i]});
  return SparseSpectrum(grid, std::move(entries));
}

}  // namespace

TEST_CASE("sparse spectrum validation", "[metrics]") {
  CHECK_THROWS_AS(SparseSpectrum(4, {{2, 1.0}, {2, 1.0}}), DomainError);
  CHECK_THROWS_AS(SparseSpectrum(4, {{3, 1.0}, {1, 1.0}}), DomainError);
  CHECK_THROWS_AS(SparseSpectrum(4, {{4, 1.0}}), DomainError);
  const auto s = SparseSpectrum::from_dense(ComplexSequence{0.0, 1.0, 0.0, 2.0});
  CHECK(s.indices() == std::vector<std::size_t>{1, 3});
  CHECK(s.dense() == ComplexSequence{0.0, 1.0, 0.0, 2.0});
}

TEST_CASE("synthesize single and two-tone spectra", "[metrics]") {
  const auto one = synthesize(SparseSpectrum(8, {{3, 1.0}}), 64);
  for (const auto& v : one.samples()) REQUIRE(std::abs(std::abs(v) - 1.0) < 1e-12);
  CHECK(papr_db(one) == Approx(0.0).margin(1e-9));

  const auto two = synthesize(SparseSpectrum(8, {{3, 1.0}, {4, 1.0}}), 64);
  CHECK(two.peak_power() == Approx(4.0));
  CHECK(two.mean_power() == Approx(2.0));
  CHECK(papr_db(two) == Approx(10.0 * std::log10(2.0)).epsilon(1e-12));
  CHECK(kPaprBoundDb == Approx(3.0103).margin(1e-4));
}

TEST_CASE("synthesize matches direct polynomial evaluation", "[metrics]") {
  for (int trial = 0; trial < 5; ++trial) {
    const auto spec = random_sparse(200, 37);
    const std::size_t n = 256;
    const auto w = synthesize(spec, n);
    const auto dense = spec.dense();
    for (std::size_t t = 0; t < n; ++t) {
      const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n));
      REQUIRE(std::abs(w.samples()[t] - test::direct_poly(dense, z)) < 1e-9);
    }
    // Parseval for the unnormalized inverse DFT.
    REQUIRE(w.energy() == Approx(static_cast<double>(n) * spec.energy()).epsilon(1e-9));
  }
}

TEST_CASE("synthesize preconditions", "[metrics]") {
  const SparseSpectrum spec(100, {{5, 1.0}});
  CHECK_THROWS_AS(synthesize(spec, 64), DomainError);
  CHECK_THROWS_AS(synthesize(spec, 200), DomainError);
  CHECK_THROWS_AS(papr_db(Waveform(std::vector<cplx>(16))), DomainError);
  CHECK_THROWS_AS(cm_db(Waveform(std::vector<cplx>(16))), DomainError);
}

TEST_CASE("papr is invariant to global phase and scaling", "[metrics][property]") {
  const auto spec = random_sparse(300, 40);
  const double base = papr_db(spec, 1024);
  for (int trial = 0; trial < 10; ++trial) {
    const cplx s = test::random_unit() * (0.1 + trial);
    std::vector<Tone> e = spec.entries();
    for (auto& t : e) t.value *= s;
    const SparseSpectrum scaled(spec.grid_size(), std::move(e));
    REQUIRE(papr_db(scaled, 1024) == Approx(base).epsilon(1e-10));
    REQUIRE(cm_db(scaled, 1024) == Approx(cm_db(spec, 1024)).epsilon(1e-10));
  }
}

TEST_CASE("cubic metric", "[metrics]") {
  // Exactly unit-modulus samples give exactly 0 dB.
  std::vector<cplx> qpsk(4096);
  for (std::size_t i = 0; i < qpsk.size(); ++i) qpsk[i] = to_complex(QuaternarySequence::unit(static_cast<std::uint8_t>(i * 7 % 4)));
  CHECK(cm_db(Waveform(qpsk)) == 0.0);
  CHECK(cm_db(synthesize(SparseSpectrum(8, {{3, 1.0}}), 64)) == Approx(0.0).margin(1e-12));

  const auto w = synthesize(random_sparse(100, 20), 512);
  std::vector<cplx> scaled(w.samples().begin(), w.samples().end());
  for (auto& v : scaled) v *= 3.7;
  CHECK(cm_db(Waveform(scaled)) == Approx(cm_db(w)).epsilon(1e-12));
  CHECK(cm_db(w) > 0.0);
}

TEST_CASE("peak cross-correlation", "[metrics]") {
  const auto x = test::random_unimodular(12);
  CHECK(peak_xcorr(x, x, 4096) == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(peak_xcorr(x, test::random_unimodular(11)), DomainError);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = test::random_unimodular(12);
    const auto b = test::random_unimodular(12);
    REQUIRE(std::abs(peak_xcorr(a, b) - peak_xcorr(b, a)) < 1e-12);
  }
}

TEST_CASE("fractional cross-correlation", "[metrics]") {
  const auto c = fixtures::reference_sets();
  const auto c1 = c[0].a().complex();
  const auto c2 = c[1].a().complex();
  CHECK(fractional_xcorr_max(c1, c1, 128) == Approx(1.0).epsilon(1e-12));
  CHECK(fractional_xcorr_max(c1, c2, 128) <= 0.715);

  // The n_idft = N u inverse DFT computes exactly the same inner products.
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = test::random_unimodular(12);
    const auto b = test::random_unimodular(12);
    const long u = 1 + trial % 9;
    REQUIRE(std::abs(fractional_xcorr_max(a, b, u) - peak_xcorr(a, b, 12 * static_cast<std::size_t>(u))) < 1e-9);
    // A finer grid is a superset of the coarser one.
    REQUIRE(fractional_xcorr_max(a, b, 2 * u) >= fractional_xcorr_max(a, b, u) - 1e-12);
  }

  const FractionalCorrelator corr(12, 128);
  const double m = corr.max(c1, c2);
  CHECK(corr.exceeds(c1, c2, m - 1e-9));
  CHECK_FALSE(corr.exceeds(c1, c2, m));
  CHECK_THROWS_AS(FractionalCorrelator(12, 0), DomainError);
}

TEST_CASE("ccdf", "[metrics]") {
  const std::vector<double> same(10, 2.5);
  const std::vector<double> th = {2.5 - 1e-9, 2.5, 3.0};
  const auto c = ccdf(same, th);
  CHECK(c.exceed_prob == std::vector<double>{1.0, 0.0, 0.0});
  CHECK_THROWS_AS(ccdf(std::vector<double>{}, th), DomainError);

  std::vector<double> vals(200);
  std::normal_distribution<double> g;
  for (auto& v : vals) v = g(test::rng());
  const auto grid = threshold_grid(-4.0, 4.0, 0.1);
  const auto curve = ccdf(vals, grid);
  for (std::size_t i = 1; i < curve.exceed_prob.size(); ++i) REQUIRE(curve.exceed_prob[i] <= curve.exceed_prob[i - 1]);
}
