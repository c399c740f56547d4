#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "commands.hpp"
#include "manifest.hpp"
#include "ncgcp/io.hpp"

using namespace ncgcp;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("ncgcp_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

const std::string kReferenceFile = std::string(NCGCP_DATA_DIR) + "/reference_sets.json";

}  // namespace

TEST_CASE("sha256 digest", "[cli]") {
  const auto dir = scratch("sha");
  io::write_text((dir / "abc.txt").string(), "abc");
  CHECK(cli::sha256_file((dir / "abc.txt").string()) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  io::write_text((dir / "empty.txt").string(), "");
  CHECK(cli::sha256_file((dir / "empty.txt").string()) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"reproduce", "nonsense"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("reproduce papr is byte stable", "[cli]") {
  const auto a = scratch("papr_a");
  const auto b = scratch("papr_b");
  const auto ra = run({"reproduce", "papr", "--out-dir", a.string()});
  const auto rb = run({"reproduce", "papr", "--out-dir", b.string()});
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  CHECK_THAT(ra.out, Catch::Matchers::ContainsSubstring("PASS proposed PAPR bound"));
  CHECK(io::read_text((a / "papr.csv").string()) == io::read_text((b / "papr.csv").string()));
  CHECK(io::read_text((a / "papr_ccdf.csv").string()) == io::read_text((b / "papr_ccdf.csv").string()));
  const auto manifest = io::json::parse(io::read_text((a / "papr.csv.manifest.json").string()));
  CHECK(manifest["command"] == "reproduce papr");
  CHECK(manifest["version"] == cli::kVersion);

  // Proposed-scheme rows stay within the bound, as written to disk.
  std::istringstream csv(io::read_text((a / "papr.csv").string()));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "family,variant,index,shift,omega1,omega2,papr_db");
  std::size_t proposed = 0;
  while (std::getline(csv, line)) {
    if (line.rfind("proposed,", 0) != 0) continue;
    ++proposed;
    REQUIRE(std::stod(line.substr(line.rfind(',') + 1)) <= 3.0103 + 1e-6);
  }
  CHECK(proposed == 30 * 12 * 2 + 16);
}

TEST_CASE("reproduce cm and xcorr", "[cli]") {
  const auto dir = scratch("cmx");
  const auto cm = run({"reproduce", "cm", "--out-dir", dir.string()});
  CHECK(cm.code == 0);
  const auto x = run({"reproduce", "xcorr", "--out-dir", dir.string()});
  CHECK(x.code == 0);
  CHECK_THAT(x.out, Catch::Matchers::ContainsSubstring("PASS ZC max rho"));
  CHECK(fs::exists(dir / "xcorr_ccdf.csv"));
}

TEST_CASE("import-sequences", "[cli]") {
  const auto dir = scratch("import");
  const auto ok = run({"import-sequences", kReferenceFile, "--out", (dir / "fixture.json").string()});
  REQUIRE(ok.code == 0);
  CHECK_THAT(ok.out, Catch::Matchers::ContainsSubstring("loaded 60 sequences"));
  const auto fixture = io::json::parse(io::read_text((dir / "fixture.json").string()));
  CHECK(fixture["sets"]["c"].size() == 30);
  CHECK(fixture["manifest"]["inputs"][0]["sha256"] == cli::sha256_file(kReferenceFile));

  io::write_text((dir / "empty.json").string(), "");
  const auto empty = run({"import-sequences", (dir / "empty.json").string()});
  CHECK(empty.code == 2);
  CHECK_THAT(empty.err, Catch::Matchers::ContainsSubstring("empty file"));

  io::write_text((dir / "zero.json").string(), "{\n  \"x\": [\n    [[1, 0], [0, 1]],\n    [[1, 0], [0, 0]]\n  ]\n}\n");
  const auto zero = run({"import-sequences", (dir / "zero.json").string()});
  CHECK(zero.code == 2);
  CHECK_THAT(zero.err, Catch::Matchers::ContainsSubstring("zero.json:4:"));
  CHECK_THAT(zero.err, Catch::Matchers::ContainsSubstring("not unimodular"));

  CHECK(run({"import-sequences", (dir / "missing.json").string()}).code == 2);
}

TEST_CASE("build-interlace and eval-papr agree", "[cli]") {
  const auto dir = scratch("build");
  const auto spec = (dir / "s.json").string();
  REQUIRE(run({"build-interlace", "--scheme", "adjacent", "--seq-index", "7", "--bits", "2", "--value", "2", "--out", spec}).code == 0);
  const auto doc = io::json::parse(io::read_text(spec));
  CHECK(doc["parameters"]["shift"] == 9.0);
  CHECK(doc["papr_db"].get<double>() <= 3.0103 + 1e-6);
  const auto s = io::load_spectrum(spec);
  CHECK(s.size() == 120);
  const auto eval = run({"eval-papr", "--spectrum", spec});
  REQUIRE(eval.code == 0);
  CHECK(eval.out == "source,papr_db\n" + spec + "," + io::format_fixed(papr_db(s)) + "\n");

  const auto coh = run({"build-interlace", "--scheme", "coherent", "--omega1", "1", "--omega2", "3"});
  REQUIRE(coh.code == 0);
  CHECK(io::json::parse(coh.out)["papr_db"].get<double>() <= 3.0103 + 1e-6);

  CHECK(run({"build-interlace", "--nrb", "9"}).code == 2);
  CHECK(run({"eval-papr"}).code == 2);
}

TEST_CASE("eval-xcorr", "[cli]") {
  const auto r = run({"eval-xcorr", "--sequences", kReferenceFile, "--set", "d", "--u", "128"});
  REQUIRE(r.code == 0);
  CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("set d: 30 sequences, max rho 0.714398415"));
  std::size_t rows = 0;
  for (char c : r.out) rows += c == '\n';
  CHECK(rows == 1 + 30 * 29 / 2);
  CHECK(run({"eval-xcorr", "--sequences", kReferenceFile, "--set", "zz"}).code == 2);
}

TEST_CASE("search-sets from a seed file", "[cli]") {
  const auto dir = scratch("search");
  const auto out = (dir / "sets.json").string();
  const auto r = run({"search-sets", "--seed-file", kReferenceFile, "--beta", "0.715", "--u", "128", "--k", "30", "--out", out});
  REQUIRE(r.code == 0);
  const auto doc = io::json::parse(io::read_text(out));
  CHECK(doc["count"] == 30);
  CHECK(doc["certificate"]["violations"].empty());
  CHECK(doc["certificate"]["max_c"].get<double>() <= 0.715);
  CHECK(doc["admission_log"].size() == 30);
  CHECK(doc["manifest"]["inputs"][0]["sha256"] == cli::sha256_file(kReferenceFile));
}

TEST_CASE("enumerate-gcps", "[cli]") {
  const auto r = run({"enumerate-gcps", "--length", "3"});
  REQUIRE(r.code == 0);
  CHECK(io::json::parse(r.out)["count"] == 4);
  CHECK(run({"enumerate-gcps", "--length", "13"}).code == 2);
  const auto dir = scratch("enum");
  REQUIRE(run({"enumerate-gcps", "--length", "5", "--cache-dir", dir.string()}).code == 0);
  CHECK(fs::exists(dir / "gcp-5.json"));
}

TEST_CASE("simulate-link is reproducible", "[cli]") {
  const std::vector<std::string> base = {"simulate-link", "--scheme", "coherent", "--channel", "iid_per_rb", "--snr-from", "-4",
                                         "--snr-to", "0", "--snr-step", "2", "--trials", "1000", "--calibration-trials",
                                         "5000", "--seed", "7"};
  const auto a = run(base);
  auto more = base;
  more.insert(more.begin(), {"--workers", "3"});
  const auto b = run(more);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("snr_db,dtx_to_ack,nack_to_ack,ack_miss,", 0) == 0);
  std::size_t rows = 0;
  for (char c : a.out) rows += c == '\n';
  CHECK(rows == 4);
  auto bad = base;
  bad.back() = "7";
  bad.insert(bad.end(), {"--dtx-target", "1.5"});
  CHECK(run(bad).code == 2);
}
