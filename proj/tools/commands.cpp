#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <numeric>

#include "manifest.hpp"
#include "ncgcp/fixtures.hpp"
#include "ncgcp/interlace.hpp"
#include "ncgcp/io.hpp"
#include "ncgcp/linksim.hpp"
#include "ncgcp/metrics.hpp"
#include "ncgcp/setsearch.hpp"

namespace ncgcp::cli {
namespace {

using io::format_fixed;
using io::json;

constexpr double kBoundSlack = 1e-6;
constexpr double kBetaReference = 0.715;
constexpr long kUReference = 128;
constexpr double kZcPaprTarget = 6.0;
constexpr double kZcPaprTol = 0.3;
constexpr double kZcRhoTarget = 0.95;
constexpr double kZcRhoTol = 0.03;
constexpr double kDtxTol = 0.002;

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  std::string command_line;
};

/// CSV text builder; every number goes through format_fixed.
class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { add(header); }

  template <class... Cells>
  void row(const Cells&... cells) {
    add({cell(cells)...});
  }

  void add(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + cells[i];
    text_ += "\n";
  }

  const std::string& text() const { return text_; }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double v) { return format_fixed(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }

  std::string text_;
};

bool to_stdout(const std::string& path) { return path.empty() || path == "-"; }

void emit(const Ctx& ctx, const std::string& path, const std::string& text, RunManifest m) {
  if (to_stdout(path)) {
    ctx.out << text;
    return;
  }
  io::write_text(path, text);
  m.outputs.push_back(path);
  m.write_sidecar(path);
}

RunManifest manifest(const Ctx& ctx, const std::string& command) {
  RunManifest m;
  m.command = command;
  m.parameters["command_line"] = ctx.command_line;
  return m;
}

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

int report_checks(const Ctx& ctx, const std::vector<Check>& checks) {
  bool ok = true;
  for (const auto& c : checks) {
    ctx.out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    if (!c.pass) {
      ctx.err << "check failed: " << c.name << ": " << c.detail << "\n";
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

json checks_json(const std::vector<Check>& checks) {
  json j = json::array();
  for (const auto& c : checks) j.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return j;
}

// ------------------------------------------------------------------ sweeps

struct MetricRow {
  std::string family;
  std::string variant;
  long index;
  double shift;
  int omega1;
  int omega2;
  double value;
};

using SpectrumMetric = std::function<double(const SparseSpectrum&)>;

std::vector<MetricRow> reference_sweep(const SpectrumMetric& metric) {
  const auto cfg = InterlaceConfig::lte();
  const auto spread = fixtures::noncoherent_spreading().complex();
  const auto table = fixtures::reference_sets();
  std::vector<MetricRow> rows;
  for (bool adjacent : {false, true}) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto pair = table[i].complex();
      for (int s = 0; s < cfg.n_sc; ++s) {
        const auto spec = adjacent ? build_noncoherent_adjacent(cfg, spread, pair, s) : build_noncoherent(cfg, spread, pair, s);
        rows.push_back({"proposed", adjacent ? "k240" : "k120", static_cast<long>(i + 1), static_cast<double>(s), 0, 0,
                        metric(spec)});
      }
    }
  }
  const auto cspread = fixtures::coherent_spreading().complex();
  const auto half = fixtures::coherent_half_pair().complex();
  for (int w1 = 0; w1 < 4; ++w1) {
    for (int w2 = 0; w2 < 4; ++w2) {
      rows.push_back({"proposed", "coherent", 0, 0.0, w1, w2,
                      metric(build_coherent(cfg, cspread, half, q2_symbol(w1), q2_symbol(w2)))});
    }
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    rows.push_back({"cycling", "c", static_cast<long>(i + 1), 0.0, 0, 0, metric(cycling_baseline(cfg, table[i].a().complex()))});
    rows.push_back({"cycling", "d", static_cast<long>(i + 1), 0.0, 0, 0, metric(cycling_baseline(cfg, table[i].b().complex()))});
  }
  for (const auto& z : zadoff_chu_set(cfg, 30)) rows.push_back({"zc", "113to120", z.root, 0.0, 0, 0, metric(z.spectrum)});
  return rows;
}

std::vector<double> family_values(const std::vector<MetricRow>& rows, const std::string& family) {
  std::vector<double> v;
  for (const auto& r : rows) {
    if (r.family == family) v.push_back(r.value);
  }
  return v;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

std::string sweep_csv(const std::vector<MetricRow>& rows, const std::string& column) {
  Csv csv({"family", "variant", "index", "shift", "omega1", "omega2", column});
  for (const auto& r : rows) csv.row(r.family, r.variant, r.index, r.shift, r.omega1, r.omega2, r.value);
  return csv.text();
}

std::string ccdf_csv(const std::vector<std::pair<std::string, std::vector<double>>>& series, const std::vector<double>& grid) {
  std::vector<std::string> header{"threshold"};
  std::vector<CcdfCurve> curves;
  for (const auto& [name, values] : series) {
    header.push_back(name);
    curves.push_back(ccdf(values, grid));
  }
  Csv csv(header);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> cells{format_fixed(grid[i])};
    for (const auto& c : curves) cells.push_back(format_fixed(c.exceed_prob[i]));
    csv.add(cells);
  }
  return csv.text();
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

int reproduce_metric(const Ctx& ctx, const std::string& which, const std::string& dir) {
  const bool papr = which == "papr";
  const SpectrumMetric metric = papr ? SpectrumMetric([](const SparseSpectrum& s) { return papr_db(s); })
                                     : SpectrumMetric([](const SparseSpectrum& s) { return cm_db(s); });
  const auto rows = reference_sweep(metric);
  const auto proposed = family_values(rows, "proposed");
  const auto cycling = family_values(rows, "cycling");
  const auto zc = family_values(rows, "zc");

  std::vector<Check> checks;
  if (papr) {
    const double pmax = max_of(proposed);
    checks.push_back({"proposed PAPR bound", pmax <= kPaprBoundDb + kBoundSlack,
                      "max " + format_fixed(pmax) + " dB <= " + format_fixed(kPaprBoundDb) + " dB"});
    const double zmax = max_of(zc);
    checks.push_back({"ZC best-30 PAPR", std::abs(zmax - kZcPaprTarget) <= kZcPaprTol,
                      "max " + format_fixed(zmax) + " dB within " + format_fixed(kZcPaprTarget) + " +/- " + format_fixed(kZcPaprTol)});
  } else {
    const double pmax = max_of(proposed);
    const double cmin = min_of(cycling);
    checks.push_back({"proposed CM below cycling", pmax < cmin,
                      "proposed max " + format_fixed(pmax) + " dB < cycling min " + format_fixed(cmin) + " dB; mean gap " +
                          format_fixed(mean_of(cycling) - mean_of(proposed)) + " dB"});
  }

  const std::string column = papr ? "papr_db" : "cm_db";
  const auto grid = papr ? threshold_grid(0.0, 8.0, 0.05) : threshold_grid(0.0, 4.0, 0.02);
  RunManifest m = manifest(ctx, "reproduce " + which);
  m.parameters["n_idft"] = kDefaultIdftSize;
  m.results["checks"] = checks_json(checks);
  m.results["proposed_max"] = io::round_sig(max_of(proposed));
  m.results["cycling_max"] = io::round_sig(max_of(cycling));
  m.results["zc_max"] = io::round_sig(max_of(zc));
  emit(ctx, join_path(dir, which + ".csv"), sweep_csv(rows, column), m);
  emit(ctx, join_path(dir, which + "_ccdf.csv"),
       ccdf_csv({{"proposed", proposed}, {"cycling", cycling}, {"zc", zc}}, grid), m);
  return report_checks(ctx, checks);
}

int reproduce_xcorr(const Ctx& ctx, const std::string& dir, unsigned workers) {
  const auto cfg = InterlaceConfig::lte();
  SequenceSetPair table;
  for (const auto& p : fixtures::reference_sets()) {
    table.c.push_back(p.a());
    table.d.push_back(p.b());
  }
  table.beta = kBetaReference;
  table.u = kUReference;
  const auto report = verify_sets(table, workers);

  const FractionalCorrelator corr(12, kUReference);
  Csv csv({"family", "set", "i", "j", "rho"});
  std::vector<double> prop, zc_rho;
  for (const char* set : {"c", "d"}) {
    const auto& seqs = set[0] == 'c' ? table.c : table.d;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      for (std::size_t j = i + 1; j < seqs.size(); ++j) {
        const double r = corr.max(seqs[i].complex(), seqs[j].complex());
        prop.push_back(r);
        csv.row("proposed", set, i + 1, j + 1, r);
      }
    }
  }
  const auto zc = zadoff_chu_set(cfg, 30);
  for (std::size_t i = 0; i < zc.size(); ++i) {
    for (std::size_t j = i + 1; j < zc.size(); ++j) {
      const double r = per_rb_xcorr_max(cfg, zc[i].spectrum, zc[j].spectrum, kUReference);
      zc_rho.push_back(r);
      csv.row("zc", "113to120", static_cast<long>(zc[i].root), static_cast<long>(zc[j].root), r);
    }
  }
  const double pmax = max_of(prop);
  const double zmax = max_of(zc_rho);
  std::vector<Check> checks{
      {"proposed sets verify", report.ok(), std::to_string(report.violations.size()) + " violations"},
      {"proposed max rho", pmax <= kBetaReference + 1e-9, "max " + format_fixed(pmax) + " <= " + format_fixed(kBetaReference)},
      {"ZC max rho", std::abs(zmax - kZcRhoTarget) <= kZcRhoTol,
       "max " + format_fixed(zmax) + " within " + format_fixed(kZcRhoTarget) + " +/- " + format_fixed(kZcRhoTol)}};
  RunManifest m = manifest(ctx, "reproduce xcorr");
  m.parameters["u"] = kUReference;
  m.results["checks"] = checks_json(checks);
  m.results["proposed_max"] = io::round_sig(pmax);
  m.results["zc_max"] = io::round_sig(zmax);
  emit(ctx, join_path(dir, "xcorr.csv"), csv.text(), m);
  emit(ctx, join_path(dir, "xcorr_ccdf.csv"), ccdf_csv({{"proposed", prop}, {"zc", zc_rho}}, threshold_grid(0.0, 1.0, 0.005)),
       m);
  return report_checks(ctx, checks);
}

// -------------------------------------------------------------------- link

std::vector<std::string> sim_header(bool with_labels) {
  std::vector<std::string> h;
  if (with_labels) h = {"scheme", "channel"};
  for (const char* c : {"snr_db", "dtx_to_ack", "nack_to_ack", "ack_miss", "ci_dtx_to_ack_lo", "ci_dtx_to_ack_hi",
                        "ci_nack_to_ack_lo", "ci_nack_to_ack_hi", "ci_ack_miss_lo", "ci_ack_miss_hi"}) {
    h.push_back(c);
  }
  return h;
}

void sim_rows(Csv& csv, const SimReport& r, bool with_labels) {
  for (const auto& p : r.points) {
    std::vector<std::string> cells;
    if (with_labels) cells = {to_string(r.config.scheme), to_string(r.config.channel)};
    for (double v : {p.snr_db, p.dtx_to_ack.rate, p.nack_to_ack.rate, p.ack_miss.rate, p.dtx_to_ack.ci_lo, p.dtx_to_ack.ci_hi,
                     p.nack_to_ack.ci_lo, p.nack_to_ack.ci_hi, p.ack_miss.ci_lo, p.ack_miss.ci_hi}) {
      cells.push_back(format_fixed(v));
    }
    csv.add(cells);
  }
}

json sim_parameters(const SimConfig& c) {
  json grid = json::array();
  for (double s : c.snr_grid_db) grid.push_back(s);
  return {{"scheme", to_string(c.scheme)},
          {"channel", to_string(c.channel)},
          {"snr_grid_db", grid},
          {"n_rx", c.n_rx},
          {"dtx_target", c.dtx_target},
          {"n_trials", c.n_trials},
          {"n_calibration_trials", c.n_calibration_trials},
          {"normalization", c.normalization == Normalization::equal_total_energy ? "equal_total_energy" : "per_tone_equal"},
          {"combining", c.effective_combining() == Combining::joint ? "joint" : "per_rb"}};
}

bool monotone_within_ci(const std::vector<RateEstimate>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[j].ci_lo > v[i].ci_hi) return false;
    }
  }
  return true;
}

int reproduce_sim(const Ctx& ctx, bool coherent, const std::string& dir, std::size_t trials, std::uint64_t seed,
                  unsigned workers) {
  const LinkScheme inter = coherent ? LinkScheme::coherent : LinkScheme::noncoherent;
  const LinkScheme single = coherent ? LinkScheme::single_rb_coherent : LinkScheme::single_rb_noncoherent;
  std::vector<SimReport> reports;
  Csv csv(sim_header(true));
  json params = json::array();
  for (auto ch : {ChannelModel::flat, ChannelModel::iid_per_rb}) {
    for (auto s : {inter, single}) {
      SimConfig c;
      c.scheme = s;
      c.channel = ch;
      c.n_trials = trials;
      c.rng_seed = seed;
      c.workers = workers;
      reports.push_back(run_sim(c));
      sim_rows(csv, reports.back(), true);
      params.push_back(sim_parameters(c));
    }
  }

  std::vector<Check> checks;
  for (const auto& r : reports) {
    std::size_t ev = 0, n = 0;
    std::vector<RateEstimate> nack, miss;
    for (const auto& p : r.points) {
      ev += p.dtx_to_ack.events;
      n += p.dtx_to_ack.trials;
      nack.push_back(p.nack_to_ack);
      miss.push_back(p.ack_miss);
    }
    const double dtx = static_cast<double>(ev) / static_cast<double>(n);
    const std::string label = to_string(r.config.scheme) + "/" + to_string(r.config.channel);
    checks.push_back({"DTX-to-ACK " + label, std::abs(dtx - r.config.dtx_target) <= kDtxTol, "pooled rate " + format_fixed(dtx)});
    checks.push_back({"monotone " + label, monotone_within_ci(nack) && monotone_within_ci(miss),
                      "NACK-to-ACK and ACK-miss nonincreasing within 95% CI"});
  }
  bool overlap = true;
  bool ordered = true;
  for (std::size_t i = 0; i < reports[0].points.size(); ++i) {
    overlap &= intervals_overlap(reports[0].points[i].ack_miss, reports[1].points[i].ack_miss);
    if (reports[2].points[i].snr_db >= 0.0) ordered &= reports[2].points[i].ack_miss.rate <= reports[3].points[i].ack_miss.rate;
  }
  checks.push_back({"flat interlace vs single-RB", overlap, "ACK-miss 95% CIs overlap at every SNR"});
  checks.push_back({"iid interlace vs single-RB", ordered, "interlace ACK-miss <= single-RB at SNR >= 0 dB"});

  const std::string name = coherent ? "sim-coherent" : "sim-noncoherent";
  RunManifest m = manifest(ctx, "reproduce " + name);
  m.rng_seed = seed;
  m.parameters["configs"] = params;
  json thresholds = json::array();
  for (const auto& r : reports) thresholds.push_back(io::round_sig(r.threshold));
  m.results["thresholds"] = thresholds;
  m.results["checks"] = checks_json(checks);
  emit(ctx, join_path(dir, name + ".csv"), csv.text(), m);
  return report_checks(ctx, checks);
}

// ----------------------------------------------------------------- parsing

LinkScheme parse_scheme(const std::string& s) {
  if (s == "non-coherent") return LinkScheme::noncoherent;
  if (s == "coherent") return LinkScheme::coherent;
  if (s == "single-rb-non-coherent") return LinkScheme::single_rb_noncoherent;
  return LinkScheme::single_rb_coherent;
}

std::vector<double> snr_grid(double from, double to, double step) {
  if (!(step > 0.0) || to < from) throw DomainError("SNR grid: need step > 0 and to >= from");
  std::vector<double> g;
  const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9));
  for (long i = 0; i <= n; ++i) g.push_back(from + static_cast<double>(i) * step);
  return g;
}

/// Spectra named on the command line plus imported sequences mapped onto
/// contiguous tones starting at subcarrier 0.
std::vector<std::pair<std::string, SparseSpectrum>> gather_spectra(const std::vector<std::string>& spectra,
                                                                   const std::string& sequences, RunManifest& m) {
  std::vector<std::pair<std::string, SparseSpectrum>> out;
  for (const auto& path : spectra) {
    out.emplace_back(path, io::load_spectrum(path));
    m.inputs.push_back(path);
  }
  if (!sequences.empty()) {
    const auto lib = io::load_sequences(sequences);
    m.inputs.push_back(sequences);
    for (const auto& s : lib.sequences) {
      out.emplace_back(s.set + "[" + std::to_string(s.index) + "]", SparseSpectrum::from_dense(s.values));
    }
  }
  if (out.empty()) throw ValidationError("no input: give --spectrum or --sequences");
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complementary-sequence interlace toolkit", "ncgcp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  unsigned workers = default_workers();
  app.add_option("--workers", workers, "Worker threads (default: NCGCP_THREADS or hardware)")->check(CLI::PositiveNumber);

  // build-interlace
  auto* build = app.add_subcommand("build-interlace", "Synthesize one interlace spectrum");
  std::string b_scheme = "non-coherent";
  long b_nrb = 10, b_nsc = 12, b_nnull = 108;
  std::size_t b_index = 1;
  double b_shift = 0.0;
  int b_bits = 0, b_value = 0, b_w1 = 0, b_w2 = 0;
  std::string b_out;
  build->add_option("--scheme", b_scheme)->check(CLI::IsMember({"non-coherent", "adjacent", "coherent"}));
  build->add_option("--nrb", b_nrb);
  build->add_option("--nsc", b_nsc);
  build->add_option("--nnull", b_nnull);
  build->add_option("--seq-index", b_index, "Reference-set row 1..30 for the per-RB pair")->check(CLI::Range(1, 30));
  build->add_option("--shift", b_shift, "Cyclic shift delta (user offset when --bits is set)");
  build->add_option("--bits", b_bits, "Payload bits 1 or 2; 0 disables the payload map")->check(CLI::Range(0, 2));
  build->add_option("--value", b_value, "Payload value");
  build->add_option("--omega1", b_w1, "Coherent pilot phasor index 0..3")->check(CLI::Range(0, 3));
  build->add_option("--omega2", b_w2, "Coherent data phasor index 0..3")->check(CLI::Range(0, 3));
  build->add_option("--out", b_out, "Output JSON (default stdout)");

  // eval-papr / eval-cm
  struct EvalOpts {
    std::vector<std::string> spectra;
    std::string sequences;
    std::size_t n_idft = kDefaultIdftSize;
    std::string out;
  };
  EvalOpts e_papr, e_cm;
  auto add_eval = [&](const char* name, const char* desc, EvalOpts& o) {
    auto* sc = app.add_subcommand(name, desc);
    sc->add_option("--spectrum", o.spectra, "Spectrum JSON files")->check(CLI::ExistingFile);
    sc->add_option("--sequences", o.sequences, "Sequence file, each mapped onto contiguous tones")->check(CLI::ExistingFile);
    sc->add_option("--nidft", o.n_idft);
    sc->add_option("--out", o.out, "Output CSV (default stdout)");
    return sc;
  };
  auto* papr_cmd = add_eval("eval-papr", "PAPR of spectra or sequences", e_papr);
  auto* cm_cmd = add_eval("eval-cm", "Cubic metric of spectra or sequences", e_cm);

  // eval-xcorr
  auto* xcorr = app.add_subcommand("eval-xcorr", "Pairwise fractional-shift cross-correlation within each set");
  std::string x_seq, x_set, x_out, x_ccdf;
  long x_u = kUReference;
  xcorr->add_option("--sequences", x_seq)->required()->check(CLI::ExistingFile);
  xcorr->add_option("--set", x_set, "Restrict to one named set");
  xcorr->add_option("--u", x_u)->check(CLI::PositiveNumber);
  xcorr->add_option("--out", x_out, "Pairwise CSV (default stdout)");
  xcorr->add_option("--ccdf", x_ccdf, "CCDF CSV of the pairwise values");

  // search-sets
  auto* search = app.add_subcommand("search-sets", "Greedy set search over equivalence orbits");
  double s_beta = kBetaReference;
  long s_u = kUReference;
  std::size_t s_k = 30, s_len = 12;
  std::string s_seed, s_cache, s_out;
  search->add_option("--beta", s_beta);
  search->add_option("--u", s_u);
  search->add_option("--k", s_k);
  search->add_option("--length", s_len, "Library length when no seed file is given");
  search->add_option("--seed-file", s_seed)->check(CLI::ExistingFile);
  search->add_option("--cache-dir", s_cache, "Directory for the enumerated library cache")->check(CLI::ExistingDirectory);
  search->add_option("--out", s_out, "Output JSON (default stdout)");

  // simulate-link
  auto* sim = app.add_subcommand("simulate-link", "Monte-Carlo DTX/ACK/NACK detection");
  std::string l_scheme = "non-coherent", l_channel = "flat", l_norm = "equal-total-energy", l_comb = "auto", l_out;
  double l_from = -10.0, l_to = 10.0, l_step = 2.0, l_target = 0.01;
  std::size_t l_trials = 10000, l_cal = 100000;
  std::uint64_t l_seed = 1;
  int l_rx = 2;
  sim->add_option("--scheme", l_scheme)
      ->check(CLI::IsMember({"non-coherent", "coherent", "single-rb-non-coherent", "single-rb-coherent"}));
  sim->add_option("--channel", l_channel)->check(CLI::IsMember({"flat", "iid_per_rb"}));
  sim->add_option("--snr-from", l_from);
  sim->add_option("--snr-to", l_to);
  sim->add_option("--snr-step", l_step);
  sim->add_option("--trials", l_trials);
  sim->add_option("--calibration-trials", l_cal);
  sim->add_option("--dtx-target", l_target);
  sim->add_option("--rx", l_rx);
  sim->add_option("--seed", l_seed);
  sim->add_option("--normalization", l_norm)->check(CLI::IsMember({"equal-total-energy", "per-tone-equal"}));
  sim->add_option("--combining", l_comb)->check(CLI::IsMember({"auto", "joint", "per-rb"}));
  sim->add_option("--out", l_out, "Output CSV (default stdout)");

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "Regenerate a reference dataset with embedded acceptance checks");
  std::string r_fig, r_dir = ".";
  std::size_t r_trials = 10000;
  std::uint64_t r_seed = 1;
  repro->add_option("target", r_fig)->required()->check(CLI::IsMember({"papr", "cm", "xcorr", "sim-noncoherent", "sim-coherent"}));
  repro->add_option("--out-dir", r_dir)->check(CLI::ExistingDirectory);
  repro->add_option("--trials", r_trials, "Trials per SNR point and hypothesis");
  repro->add_option("--seed", r_seed);

  // import-sequences
  auto* import = app.add_subcommand("import-sequences", "Validate a sequence file and write a normalized fixture");
  std::string i_in, i_out;
  import->add_option("input", i_in)->required();
  import->add_option("--out", i_out, "Normalized fixture JSON");

  // enumerate-gcps
  auto* enumerate = app.add_subcommand("enumerate-gcps", "All quaternary GCPs of one length, canonical form");
  std::size_t n_len = 12;
  std::string n_cache, n_out;
  enumerate->add_option("--length", n_len)->check(CLI::Range(1, 12));
  enumerate->add_option("--cache-dir", n_cache)->check(CLI::ExistingDirectory);
  enumerate->add_option("--out", n_out, "Output JSON (default stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  std::string line = "ncgcp";
  for (const auto& a : args) line += " " + a;
  const Ctx ctx{out, err, line};

  try {
    if (*build) {
      const InterlaceConfig cfg{b_nrb, b_nsc, b_nnull};
      cfg.validate();
      RunManifest m = manifest(ctx, "build-interlace");
      SparseSpectrum spec(1, {});
      json info;
      if (b_scheme == "coherent") {
        const cplx w2 = b_bits > 0 ? coherent_symbol({b_bits, b_value, 0}) : q2_symbol(b_w2);
        spec = build_coherent(cfg, fixtures::coherent_spreading().complex(), fixtures::coherent_half_pair().complex(),
                              q2_symbol(b_w1), w2, b_shift);
        info = {{"omega1", b_w1}, {"omega2", io::to_json(w2)}, {"shift", b_shift}};
      } else {
        double delta = b_shift;
        if (b_bits > 0) delta = static_cast<double>(noncoherent_shift(b_nsc, {b_bits, b_value, static_cast<long>(b_shift)}));
        const auto spread = fixtures::noncoherent_spreading().complex();
        const auto pair = fixtures::reference_sets().at(b_index - 1).complex();
        spec = b_scheme == "adjacent" ? build_noncoherent_adjacent(cfg, spread, pair, delta)
                                      : build_noncoherent(cfg, spread, pair, delta);
        info = {{"seq_index", b_index}, {"shift", delta}};
      }
      json doc{{"scheme", b_scheme},
               {"interlace", {{"n_rb", b_nrb}, {"n_sc", b_nsc}, {"n_null", b_nnull}}},
               {"parameters", info},
               {"papr_db", io::round_sig(papr_db(spec))},
               {"cm_db", io::round_sig(cm_db(spec))},
               {"spectrum", io::to_json(spec)}};
      if (!to_stdout(b_out)) {
        m.outputs.push_back(b_out);
        doc["manifest"] = m.to_json();
      }
      if (to_stdout(b_out)) out << io::dump(doc);
      else io::write_text(b_out, io::dump(doc));
      err << "PAPR " << format_fixed(papr_db(spec)) << " dB, CM " << format_fixed(cm_db(spec)) << " dB\n";
      return 0;
    }

    for (auto [cmd, opts, is_papr] : {std::tuple{papr_cmd, &e_papr, true}, std::tuple{cm_cmd, &e_cm, false}}) {
      if (!*cmd) continue;
      RunManifest m = manifest(ctx, is_papr ? "eval-papr" : "eval-cm");
      m.parameters["n_idft"] = opts->n_idft;
      const auto items = gather_spectra(opts->spectra, opts->sequences, m);
      Csv csv({"source", is_papr ? "papr_db" : "cm_db"});
      for (const auto& [name, spec] : items) csv.row(name, is_papr ? papr_db(spec, opts->n_idft) : cm_db(spec, opts->n_idft));
      emit(ctx, opts->out, csv.text(), m);
      return 0;
    }

    if (*xcorr) {
      const auto lib = io::load_sequences(x_seq);
      RunManifest m = manifest(ctx, "eval-xcorr");
      m.inputs.push_back(x_seq);
      m.parameters["u"] = x_u;
      Csv csv({"set", "i", "j", "rho"});
      std::vector<double> all;
      bool any = false;
      for (const auto& name : lib.set_names) {
        if (!x_set.empty() && name != x_set) continue;
        any = true;
        const auto vals = lib.values(name);
        const FractionalCorrelator corr(vals.front().size(), x_u);
        double best = 0.0;
        for (std::size_t i = 0; i < vals.size(); ++i) {
          for (std::size_t j = i + 1; j < vals.size(); ++j) {
            const double r = corr.max(vals[i], vals[j]);
            best = std::max(best, r);
            all.push_back(r);
            csv.row(name, i, j, r);
          }
        }
        m.results["max_" + name] = io::round_sig(best);
        err << "set " << name << ": " << vals.size() << " sequences, max rho " << format_fixed(best) << "\n";
      }
      if (!any) throw ValidationError("no set named '" + x_set + "'");
      emit(ctx, x_out, csv.text(), m);
      if (!x_ccdf.empty() && !all.empty()) emit(ctx, x_ccdf, ccdf_csv({{"rho", all}}, threshold_grid(0.0, 1.0, 0.005)), m);
      return 0;
    }

    if (*search) {
      RunManifest m = manifest(ctx, "search-sets");
      std::vector<QuaternaryPair> seeds;
      if (!s_seed.empty()) {
        seeds = io::load_seed_pairs(s_seed);
        m.inputs.push_back(s_seed);
      } else if (!s_cache.empty()) {
        seeds = io::cached_enumeration(s_len, s_cache, workers);
      } else {
        seeds = enumerate_gcps(s_len, workers);
      }
      m.parameters["beta"] = s_beta;
      m.parameters["u"] = s_u;
      m.parameters["k"] = s_k;
      m.parameters["seeds"] = seeds.size();
      const auto result = build_sets(seeds, s_beta, s_u, s_k, workers);
      const auto report = verify_sets(result.sets, workers);
      json doc = io::to_json(result, report);
      if (!to_stdout(s_out)) {
        m.outputs.push_back(s_out);
        doc["manifest"] = m.to_json();
        io::write_text(s_out, io::dump(doc));
      } else {
        out << io::dump(doc);
      }
      err << "admitted " << result.sets.size() << " of " << s_k << " pairs from " << seeds.size() << " seeds; max rho C "
          << format_fixed(report.max_c) << ", D " << format_fixed(report.max_d) << "\n";
      return 0;
    }

    if (*sim) {
      SimConfig c;
      c.scheme = parse_scheme(l_scheme);
      c.channel = l_channel == "flat" ? ChannelModel::flat : ChannelModel::iid_per_rb;
      c.snr_grid_db = snr_grid(l_from, l_to, l_step);
      c.n_trials = l_trials;
      c.n_calibration_trials = l_cal;
      c.dtx_target = l_target;
      c.n_rx = l_rx;
      c.rng_seed = l_seed;
      c.workers = workers;
      c.normalization = l_norm == "per-tone-equal" ? Normalization::per_tone_equal : Normalization::equal_total_energy;
      c.combining = l_comb == "joint" ? Combining::joint : l_comb == "per-rb" ? Combining::per_rb : Combining::automatic;
      const auto rep = run_sim(c);
      Csv csv(sim_header(false));
      sim_rows(csv, rep, false);
      RunManifest m = manifest(ctx, "simulate-link");
      m.rng_seed = l_seed;
      m.parameters["config"] = sim_parameters(c);
      m.results["threshold"] = io::round_sig(rep.threshold);
      emit(ctx, l_out, csv.text(), m);
      err << "calibrated threshold " << format_fixed(rep.threshold) << "\n";
      return 0;
    }

    if (*repro) {
      if (r_fig == "papr" || r_fig == "cm") return reproduce_metric(ctx, r_fig, r_dir);
      if (r_fig == "xcorr") return reproduce_xcorr(ctx, r_dir, workers);
      return reproduce_sim(ctx, r_fig == "sim-coherent", r_dir, r_trials, r_seed, workers);
    }

    if (*import) {
      const auto lib = io::load_sequences(i_in);
      json sets = json::object();
      for (const auto& name : lib.set_names) {
        json arr = json::array();
        for (const auto* s : lib.set(name)) arr.push_back(s->symbols ? json(s->symbols->str()) : io::to_json(s->values));
        sets[name] = std::move(arr);
        out << name << ": " << lib.set(name).size() << " sequences of length " << lib.set(name).front()->values.size() << "\n";
      }
      out << "loaded " << lib.sequences.size() << " sequences\n";
      if (!i_out.empty()) {
        RunManifest m = manifest(ctx, "import-sequences");
        m.inputs.push_back(i_in);
        m.outputs.push_back(i_out);
        json doc{{"name", lib.name}, {"sets", std::move(sets)}, {"manifest", m.to_json()}};
        io::write_text(i_out, io::dump(doc));
      }
      return 0;
    }

    if (*enumerate) {
      const auto pairs = n_cache.empty() ? enumerate_gcps(n_len, workers) : io::cached_enumeration(n_len, n_cache, workers);
      json doc{{"length", n_len}, {"count", pairs.size()}, {"pairs", io::pairs_to_json(pairs)}};
      if (to_stdout(n_out)) {
        out << io::dump(doc);
      } else {
        RunManifest m = manifest(ctx, "enumerate-gcps");
        m.outputs.push_back(n_out);
        doc["manifest"] = m.to_json();
        io::write_text(n_out, io::dump(doc));
      }
      err << pairs.size() << " pairs of length " << n_len << "\n";
      return 0;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CalibrationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ncgcp::cli
