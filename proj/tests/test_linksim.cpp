#include <catch2/catch_amalgamated.hpp>

#include "ncgcp/linksim.hpp"
#include "test_support.hpp"

using namespace ncgcp;
using Catch::Approx;

namespace {

constexpr LinkScheme kAllSchemes[] = {LinkScheme::noncoherent, LinkScheme::coherent, LinkScheme::single_rb_noncoherent,
                                      LinkScheme::single_rb_coherent};

std::vector<std::vector<cplx>> random_gains(int n_rx, long n_rb, bool flat) {
  std::vector<std::vector<cplx>> g(static_cast<std::size_t>(n_rx));
  for (auto& a : g) {
    const cplx shared = test::random_complex(1)[0];
    for (long rb = 0; rb < n_rb; ++rb) a.push_back(flat ? shared : test::random_complex(1)[0]);
  }
  return g;
}

Decision detect(const LinkWaveforms& w, const std::vector<SparseSpectrum>& rx, double thr, Combining c) {
  return is_coherent(w.scheme) ? detect_coherent(rx, w, thr, c) : detect_noncoherent(rx, w, thr, c);
}

}  // namespace

TEST_CASE("Wilson interval closed forms", "[linksim]") {
  const double z2 = 1.959963984540054 * 1.959963984540054;
  const auto none = binomial_estimate(0, 100);
  CHECK(none.ci_lo == 0.0);
  CHECK(none.ci_hi == Approx(z2 / (100.0 + z2)).epsilon(1e-12));
  const auto all = binomial_estimate(100, 100);
  CHECK(all.ci_lo == Approx(100.0 / (100.0 + z2)).epsilon(1e-12));
  CHECK(all.ci_hi == 1.0);
  const auto half = binomial_estimate(50, 100);
  CHECK(half.ci_lo + half.ci_hi == Approx(1.0));
  CHECK(half.half_width() == Approx(std::sqrt(z2 * (0.25 / 100.0 + z2 / 40000.0)) / (1.0 + z2 / 100.0)));
  CHECK_THROWS_AS(binomial_estimate(0, 0), DomainError);
}

TEST_CASE("link waveforms", "[linksim]") {
  for (auto s : kAllSchemes) {
    const auto w = make_waveforms(s);
    const std::size_t tones = is_single_rb(s) ? 12 : 120;
    REQUIRE(w.tones() == tones);
    cplx dot{};
    for (std::size_t t = 0; t < tones; ++t) {
      REQUIRE(std::abs(std::abs(w.ack[t]) - 1.0) < 1e-12);
      dot += w.ack[t] * std::conj(w.nack[t]);
    }
    // ACK and NACK are orthogonal on every RB.
    REQUIRE(std::abs(dot) < 1e-9);
    if (is_coherent(s)) {
      for (std::size_t t = 0; t < tones; ++t) {
        const cplx sym = w.pilot[t] ? cplx{1.0} : w.ack_symbol;
        REQUIRE(std::abs(w.ack[t] - sym * w.reference[t]) < 1e-12);
      }
    }
  }
}

TEST_CASE("equal-energy normalization", "[linksim]") {
  SimConfig cfg;
  const auto inter = make_waveforms(LinkScheme::noncoherent);
  const auto single = make_waveforms(LinkScheme::single_rb_noncoherent);
  CHECK(tone_amplitude(cfg, inter, 0.0) == Approx(1.0));
  CHECK(std::pow(tone_amplitude(cfg, single, 0.0), 2) * 12.0 == Approx(120.0));
  cfg.normalization = Normalization::per_tone_equal;
  CHECK(tone_amplitude(cfg, single, 3.0) == Approx(std::sqrt(std::pow(10.0, 0.3))));
}

TEST_CASE("noiseless detection", "[linksim]") {
  for (auto s : kAllSchemes) {
    const auto w = make_waveforms(s);
    for (int trial = 0; trial < 20; ++trial) {
      const bool flat = trial % 2 == 0;
      const auto g = random_gains(2, w.n_rb, flat);
      REQUIRE(detect(w, received_spectra(w, w.ack, g), 1e-6, Combining::per_rb) == Decision::ack);
      REQUIRE(detect(w, received_spectra(w, w.nack, g), 1e-6, Combining::per_rb) == Decision::nack);
      if (flat) REQUIRE(detect(w, received_spectra(w, w.ack, g), 1e-6, Combining::joint) == Decision::ack);
    }
    const std::vector<SparseSpectrum> zero(2, SparseSpectrum(w.grid_size, {}));
    REQUIRE(detect(w, zero, 1e-12, Combining::per_rb) == Decision::dtx);
    REQUIRE(detect(w, zero, 1e-12, Combining::joint) == Decision::dtx);
  }
  const auto w = make_waveforms(LinkScheme::noncoherent);
  CHECK_THROWS_AS(detect_coherent({}, make_waveforms(LinkScheme::coherent), 1.0), DomainError);
  CHECK_THROWS_AS(detect_coherent(received_spectra(w, w.ack, random_gains(1, 10, true)), w, 1.0), DomainError);
  CHECK_THROWS_AS(detect_noncoherent({SparseSpectrum(100, {})}, w, 1.0), DomainError);
}

TEST_CASE("threshold calibration", "[linksim]") {
  SimConfig cfg;
  cfg.n_calibration_trials = 4000;
  CHECK(calibrate_dtx_threshold(cfg, 1.0) == 0.0);
  CHECK_THROWS_AS(calibrate_dtx_threshold(cfg, 0.9), CalibrationError);

  // Below one expected event the threshold clears every noise-only trial.
  cfg.n_trials = 4000;
  const double high = calibrate_dtx_threshold(cfg, 1e-5);
  const auto w = make_waveforms(cfg.scheme);
  CHECK(run_trials(cfg, w, high, detail::kCalibrationStream, 0.0, Hypothesis::dtx) == 0);

  // On the calibration stream itself the order statistic is exact.
  const double thr = calibrate_dtx_threshold(cfg);
  CHECK(run_trials(cfg, w, thr, detail::kCalibrationStream, 0.0, Hypothesis::dtx) == 40);
  CHECK(thr > 0.0);

  SimConfig bad;
  bad.dtx_target = 0.0;
  CHECK_THROWS_AS(calibrate_dtx_threshold(bad), DomainError);
  bad.dtx_target = 0.01;
  bad.n_rx = 0;
  CHECK_THROWS_AS(run_sim(bad), DomainError);
  bad.n_rx = 2;
  bad.snr_grid_db.clear();
  CHECK_THROWS_AS(run_sim(bad), DomainError);
}

TEST_CASE("run_sim is deterministic across worker counts", "[linksim]") {
  for (auto s : {LinkScheme::noncoherent, LinkScheme::coherent}) {
    SimConfig cfg;
    cfg.scheme = s;
    cfg.channel = ChannelModel::iid_per_rb;
    cfg.snr_grid_db = {-6.0, 0.0};
    cfg.n_trials = 1500;
    cfg.n_calibration_trials = 5000;
    const auto a = run_sim(cfg);
    cfg.workers = 3;
    const auto b = run_sim(cfg);
    REQUIRE(a.threshold == b.threshold);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      REQUIRE(a.points[i].dtx_to_ack.events == b.points[i].dtx_to_ack.events);
      REQUIRE(a.points[i].nack_to_ack.events == b.points[i].nack_to_ack.events);
      REQUIRE(a.points[i].ack_miss.events == b.points[i].ack_miss.events);
    }
  }
}

TEST_CASE("high-SNR limit is error free", "[linksim]") {
  for (auto s : kAllSchemes) {
    for (auto ch : {ChannelModel::flat, ChannelModel::iid_per_rb}) {
      SimConfig cfg;
      cfg.scheme = s;
      cfg.channel = ch;
      cfg.snr_grid_db = {60.0};
      cfg.n_trials = 500;
      cfg.n_calibration_trials = 5000;
      const auto r = run_sim(cfg);
      REQUIRE(r.points[0].ack_miss.events == 0);
      REQUIRE(r.points[0].nack_to_ack.events == 0);
    }
  }
}
