#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <numbers>
#include <set>

#include "ncgcp/fixtures.hpp"
#include "ncgcp/golay.hpp"
#include "test_support.hpp"

using namespace ncgcp;

namespace {

ExactPair qp(std::string_view a, std::string_view b) { return QuaternaryPair::parse(a, b).exact(); }
GaussianSequence q(std::string_view s) { return QuaternarySequence::parse(s).gaussian(); }

// All quaternary pairs by direct all-pairs search, canonicalized the same way
// as the library. Feasible up to length 5 (4^8 pair tests).
std::set<std::pair<std::string, std::string>> brute_force_gcps(std::size_t n) {
  std::vector<QuaternarySequence> all;
  const std::uint64_t count = std::uint64_t{1} << (2 * (n - 1));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint8_t> e(n, 0);
    std::uint64_t v = idx;
    for (std::size_t pos = n; pos-- > 1;) {
      e[pos] = static_cast<std::uint8_t>(v & 3u);
      v >>= 2;
    }
    all.emplace_back(std::move(e));
  }
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& a : all) {
    for (const auto& b : all) {
      if (!(a < b)) continue;
      bool ok = true;
      for (long k = 1; k < static_cast<long>(n) && ok; ++k) {
        const cplx s = test::direct_apac(a.complex(), k) + test::direct_apac(b.complex(), k);
        ok = std::abs(s) < 1e-9;
      }
      if (ok) out.emplace(a.str(), b.str());
    }
  }
  return out;
}

}  // namespace

TEST_CASE("GolayPair certification", "[golay]") {
  CHECK_NOTHROW(ExactPair::certify(q("++"), q("+-")));
  CHECK_THROWS_AS(ExactPair::certify(q("++"), q("++")), DomainError);
  CHECK_THROWS_AS(ExactPair::certify(q("++"), q("+")), DomainError);
  CHECK_FALSE(ComplexPair::try_certify(ComplexSequence{1.0, 1.0}, ComplexSequence{1.0, 1.0}).has_value());
}

TEST_CASE("construction parameters are validated", "[golay]") {
  ConstructionParams<cplx> p;
  CHECK_NOTHROW(p.validate());
  p.omega1 = 2.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.omega1 = 1.0;
  p.k = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.k = 1;
  p.m = -1;
  CHECK_THROWS_AS(p.validate(), DomainError);
  ConstructionParams<Gaussian> g{{1, 1}, {1, 0}, 1, 1, 0};
  CHECK_THROWS_AS(g.validate(), DomainError);
}

TEST_CASE("construction reduces to Golay concatenation", "[golay]") {
  const auto ab = qp("+", "+");
  const auto cd = qp("++", "+-");
  const auto out = compose_gcp(ab, cd, ConstructionParams<Gaussian>{1, 1, 1, 1, 2});
  CHECK(out.a() == q("+++-"));
  // g = d~ followed by -c~
  CHECK(out.b() == q("-+--"));
  CHECK(is_gcp(out.a(), out.b()));
}

TEST_CASE("construction reduces to Golay interleaving", "[golay]") {
  const auto out = compose_gcp(qp("++", "+-"), qp("+", "+"), ConstructionParams<Gaussian>{1, 1, 2, 1, 1});
  CHECK(out.a() == q("+++-"));
  CHECK(is_gcp(out.a(), out.b()));
}

TEST_CASE("construction with the LTE non-coherent parameters", "[golay]") {
  const auto ab = fixtures::noncoherent_spreading().exact();
  const auto cd = QuaternaryPair::parse(fixtures::kReferenceSets[0].first, fixtures::kReferenceSets[0].second).exact();
  const auto out = compose_gcp(ab, cd, ConstructionParams<Gaussian>{1, 1, 120, 1, 600});
  const auto& f = out.a();
  REQUIRE(f.size() == 1092);
  std::size_t occupied = 0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    const bool in_rb = (n % 120) < 12;
    if (in_rb) {
      REQUIRE(norm(f[n]) == 1);
      ++occupied;
    } else {
      REQUIRE(f[n] == Gaussian{});
    }
  }
  CHECK(occupied == 120);
  CHECK(is_gcp(out.a(), out.b()));
}

TEST_CASE("construction with overlapping supports", "[golay]") {
  // k = l = 1 and m = 0 make both branches land on the same coefficients.
  const auto out = compose_gcp(qp("++", "+-"), qp("++", "+-"), ConstructionParams<Gaussian>{1, 1, 1, 1, 0});
  CHECK(out.a() == GaussianSequence{2, 0, 2});
  CHECK(is_gcp(out.a(), out.b()));
}

TEST_CASE("scaled exact construction with Q2 phasors", "[golay]") {
  // (1+i) = sqrt(2) e^{i pi/4}; a common scale keeps the pair exact.
  const auto ab = fixtures::coherent_spreading().exact();
  const auto cd = fixtures::coherent_half_pair().exact();
  for (Gaussian w1 : {Gaussian{1, 1}, Gaussian{-1, 1}, Gaussian{-1, -1}, Gaussian{1, -1}}) {
    for (Gaussian w2 : {Gaussian{1, 1}, Gaussian{-1, 1}, Gaussian{-1, -1}, Gaussian{1, -1}}) {
      const auto out = compose_gcp(ab, cd, ConstructionParams<Gaussian>{w1, w2, 120, 2, 1});
      REQUIRE(is_gcp(out.a(), out.b()));
      REQUIRE(apac(out.a(), 0) == apac(out.b(), 0));
    }
  }
}

TEST_CASE("random constructions remain complementary", "[golay][property]") {
  std::vector<QuaternaryPair> seeds;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto lib = enumerate_gcps(n);
    seeds.insert(seeds.end(), lib.begin(), lib.end());
  }
  std::uniform_int_distribution<std::size_t> pick(0, seeds.size() - 1);
  std::uniform_int_distribution<long> kl(1, 16);
  std::uniform_int_distribution<long> mm(0, 64);
  for (int trial = 0; trial < 200; ++trial) {
    const auto ab = seeds[pick(test::rng())].complex();
    const auto cd = seeds[pick(test::rng())].complex();
    ConstructionParams<cplx> p{test::random_unit(), test::random_unit(), kl(test::rng()), kl(test::rng()),
                               mm(test::rng())};
    const auto out = compose_gcp(ab, cd, p);
    REQUIRE(is_gcp(out.a(), out.b(), 1e-9));
    REQUIRE(out.a().size() == out.b().size());
  }
}

TEST_CASE("peak power of constructed sequences is bounded by the pair energy", "[golay][property]") {
  const auto ab = fixtures::noncoherent_spreading().complex();
  const auto cd = fixtures::noncoherent_rb_pair().complex();
  const cplx w = std::polar(1.0, std::numbers::pi / 4);
  const auto out = compose_gcp(ab, cd, ConstructionParams<cplx>{w, w, 120, 1, 600});
  const double bound = std::real(apac(out.a(), 0) + apac(out.b(), 0));
  CHECK(bound == Catch::Approx(240.0));
  for (int t = 0; t < 4096; t += 3) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * t / 4096.0);
    REQUIRE(std::norm(poly_eval(out.a(), z)) <= bound * (1 + 1e-12));
    REQUIRE(std::norm(poly_eval(out.a(), z)) + std::norm(poly_eval(out.b(), z)) ==
            Catch::Approx(bound).epsilon(1e-10));
  }
}

TEST_CASE("equivalence orbit", "[golay]") {
  const auto seed = QuaternaryPair::parse("++", "+-");
  const auto orbit = equivalence_orbit(seed);
  REQUIRE(orbit.size() == 8);
  CHECK(orbit.front().pair == seed);
  CHECK(orbit.front().label == OrbitLabel{});
  std::set<std::string> labels;
  for (const auto& m : orbit) {
    CHECK(is_gcp(m.pair.a(), m.pair.b()));
    labels.insert(m.label.str());
  }
  CHECK(labels.size() == 8);

  const auto t1 = fixtures::reference_sets().front();
  const auto orbit1 = equivalence_orbit(t1);
  for (const auto& m : orbit1) CHECK(is_gcp(m.pair.a(), m.pair.b()));

  // The orbit of any member is the same set of pairs.
  std::set<std::pair<std::string, std::string>> base;
  for (const auto& m : orbit1) base.emplace(m.pair.a().str(), m.pair.b().str());
  for (const auto& m : orbit1) {
    std::set<std::pair<std::string, std::string>> other;
    for (const auto& n : equivalence_orbit(m.pair)) other.emplace(n.pair.a().str(), n.pair.b().str());
    CHECK(other == base);
  }

  // Generic version on float pairs.
  const auto orbit_c = equivalence_orbit(t1.complex());
  REQUIRE(orbit_c.size() == 8);
  for (const auto& m : orbit_c) CHECK(is_gcp(m.pair.a(), m.pair.b(), 1e-9));
}

TEST_CASE("enumerate_gcps small lengths", "[golay]") {
  const auto one = enumerate_gcps(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].a().str() == "+");
  CHECK(one[0].b().str() == "+");

  const auto two = enumerate_gcps(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == QuaternaryPair::parse("++", "+-"));
  CHECK(two[1] == QuaternaryPair::parse("+i", "+j"));

  CHECK_THROWS_AS(enumerate_gcps(0), DomainError);
  CHECK_THROWS_AS(enumerate_gcps(13), CapacityError);
}

TEST_CASE("enumerate_gcps agrees with all-pairs brute force", "[golay]") {
  for (std::size_t n = 2; n <= 5; ++n) {
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& p : enumerate_gcps(n, 3)) got.emplace(p.a().str(), p.b().str());
    INFO("length " << n);
    CHECK(got == brute_force_gcps(n));
  }
}

TEST_CASE("enumerate_gcps regression counts", "[golay]") {
  // Frozen from the exhaustive enumeration (cross-checked against the
  // all-pairs brute force above for n <= 5).
  const std::map<std::size_t, std::size_t> expected = {
      {1, 1}, {2, 2}, {3, 4}, {4, 16}, {5, 16}, {6, 64}, {7, 0}, {8, 208}, {9, 0}, {10, 384}, {11, 16},
  };
  for (const auto& [n, count] : expected) {
    INFO("length " << n);
    CHECK(enumerate_gcps(n).size() == count);
  }
}

TEST_CASE("enumerate_gcps output is canonical and certified", "[golay]") {
  const auto lib = enumerate_gcps(6);
  for (std::size_t i = 0; i < lib.size(); ++i) {
    const auto& p = lib[i];
    REQUIRE(p.a().exponent(0) == 0);
    REQUIRE(p.b().exponent(0) == 0);
    REQUIRE(p.a() < p.b());
    REQUIRE(p.canonical() == p);
    REQUIRE(is_gcp(p.a(), p.b()));
    if (i > 0) REQUIRE(lib[i - 1] < p);
  }
  const auto serial = enumerate_gcps(6, 1);
  CHECK(enumerate_gcps(6, 4) == serial);
}

TEST_CASE("enumerate_gcps(10) contains the coherent spreading pair", "[golay]") {
  const auto lib = enumerate_gcps(10);
  const auto want = fixtures::coherent_spreading().canonical();
  CHECK(std::binary_search(lib.begin(), lib.end(), want));
}

TEST_CASE("is_complementary_sequence", "[golay]") {
  CHECK(is_complementary_sequence(QuaternarySequence::parse("++")));
  const auto c1 = QuaternarySequence::parse(fixtures::kReferenceSets[0].first);
  const auto mate = find_complementary_mate(c1);
  REQUIRE(mate.has_value());
  CHECK(is_gcp(c1, *mate));
  CHECK_THROWS_AS(is_complementary_sequence(test::random_quaternary(13)), CapacityError);

  // Cross-check against the enumeration: a sequence is a CS iff its phase
  // normalization appears in some enumerated pair.
  for (std::size_t n = 1; n <= 6; ++n) {
    std::set<std::string> members;
    for (const auto& p : enumerate_gcps(n)) {
      members.insert(p.a().str());
      members.insert(p.b().str());
    }
    const std::uint64_t count = std::uint64_t{1} << (2 * (n - 1));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint8_t> e(n, 0);
      std::uint64_t v = idx;
      for (std::size_t pos = n; pos-- > 1;) {
        e[pos] = static_cast<std::uint8_t>(v & 3u);
        v >>= 2;
      }
      const QuaternarySequence s(std::move(e));
      INFO(s.str());
      REQUIRE(is_complementary_sequence(s) == (members.count(s.str()) > 0));
      REQUIRE(is_complementary_sequence(s.rotated(2)) == (members.count(s.str()) > 0));
    }
  }
  CHECK_FALSE(is_complementary_sequence(QuaternarySequence::parse("+++")));
}
