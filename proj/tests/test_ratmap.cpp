#include "doctest.h"
#include "fibercoh/ratmap.hpp"
#include "fibercoh/strands.hpp"
#include "helpers.hpp"

using namespace testing;

namespace {

RationalMap rmap(const RingPtr& r, const std::vector<std::string>& g) { return RationalMap::make(Ps(r, g)); }

const FiberPoint kHere = FiberPoint::rational({});

}  // namespace

TEST_CASE("Hilbert series of quotients") {
  auto r = make_std_ring({"x", "y", "z"});
  auto a = hilbert_series(r, Ps(r, {"x", "y"}));
  CHECK(a.dimension() == 1);
  CHECK(a.multiplicity() == 1);
  auto b = hilbert_series(r, Ps(r, {"x^2"}));
  CHECK(b.dimension() == 2);
  CHECK(b.multiplicity() == 2);
  auto c = hilbert_series(r, Ps(r, {"x", "y", "z"}));
  CHECK(c.dimension() == 0);
  CHECK(c.length() == 1);
  CHECK(hilbert_series(r, Ps(r, {"1"})).dimension() == -1);
  CHECK(hilbert_series(r, {}).value(3) == 10);

  // Strand-by-strand agreement with linear algebra on random ideals.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Poly> gens;
    for (int i = 0; i < 2 + trial % 2; ++i) gens.push_back(random_form(r, Degree{1 + (trial + i) % 3, 0}, rng, 0.5));
    auto hs = hilbert_series(r, gens);
    std::vector<Poly> nz;
    for (auto& g : gens)
      if (!g.is_zero()) nz.push_back(g);
    if (nz.empty()) continue;
    auto q = quotient_presentation(nz);
    for (int n = 0; n <= 6; ++n) CHECK(hs.value(n) == presentation_strand_dim(q, Degree{n, 0}));
  }
}

TEST_CASE("finite differences and limits") {
  CHECK(finite_differences({1, 4, 9, 16}, 1) == std::vector<std::int64_t>{3, 5, 7});
  CHECK(finite_differences({1, 4, 9, 16}, 2) == std::vector<std::int64_t>{2, 2});
  auto e = limit_estimate({1, 4, 9, 16}, 2);
  CHECK(e.stable);
  CHECK(e.value == 2);
  CHECK_FALSE(limit_estimate({1, 2, 4, 8}, 1).stable);
  CHECK_FALSE(limit_estimate({1, 2}, 1).stable);
}

TEST_CASE("image ideals and degrees") {
  auto r = make_std_ring({"x0", "x1"});
  auto conic = image_ideal(rmap(r, {"x0^2", "x0*x1", "x1^2"}), kHere);
  REQUIRE(conic.gens.size() == 1);
  CHECK(conic.gens[0] == P(conic.ring, "y0*y2 - y1^2").monic());
  CHECK(image_ideal(rmap(r, {"x0", "x1"}), kHere).gens.empty());
  auto cubic = image_ideal(rmap(r, {"x0^3", "x0^2*x1", "x0*x1^2", "x1^3"}), kHere);
  CHECK(ideal_equal(cubic.gens, Ps(cubic.ring, {"y0*y2 - y1^2", "y0*y3 - y1*y2", "y1*y3 - y2^2"})));

  CHECK(generically_finite(rmap(r, {"x0^2", "x0*x1", "x1^2"}), kHere));
  CHECK(generically_finite(rmap(r, {"x0^2", "x0*x1"}), kHere));
  CHECK_FALSE(generically_finite(rmap(r, {"x0^2", "x0^2"}), kHere));
  CHECK_THROWS_AS(image_degree(rmap(r, {"x0^2", "x0^2"}), kHere), Error);

  CHECK(image_degree(rmap(r, {"x0^2", "x0*x1", "x1^2"}), kHere) == 2);
  CHECK(image_degree(rmap(r, {"x0^3", "x0^2*x1", "x0*x1^2", "x1^3"}), kHere) == 3);
  CHECK(image_degree(rmap(r, {"x0", "x1"}), kHere) == 1);

  CHECK_THROWS_AS(RationalMap::make(Ps(r, {"x0^2", "x1"})), Error);
}

TEST_CASE("map degrees on P1") {
  auto r = make_std_ring({"x0", "x1"});
  struct Case {
    std::vector<std::string> g;
    std::int64_t deg_y, deg_g, e_sat;
  };
  std::vector<Case> cases = {
      {{"x0^2", "x0*x1", "x1^2"}, 2, 1, 2},
      {{"x0^2", "x1^2"}, 1, 2, 2},
      {{"x0^3", "x0^2*x1", "x0*x1^2", "x1^3"}, 3, 1, 3},
      {{"x0", "x1"}, 1, 1, 1},
      {{"x0^2", "x0*x1"}, 1, 1, 1},
      {{"x0^3", "x1^3"}, 1, 3, 3},
  };
  for (const auto& c : cases) {
    auto m = rmap(r, c.g);
    auto d = map_degree_data(m, kHere, 6);
    CHECK(d.stable);
    CHECK(d.deg_image == c.deg_y);
    CHECK(d.deg_map == c.deg_g);
    CHECK(d.e_sat == c.e_sat);
    CHECK(d.identity_holds);
    CHECK(preimage_count(m, kHere, 11) == c.deg_g);
  }
  // (x0^2, x1^2): H^1 strands grow like k.
  auto d = map_degree_data(rmap(r, {"x0^2", "x1^2"}), kHere, 6);
  for (const auto& row : d.power_table) CHECK(row.h1 == static_cast<std::int64_t>(row.k));
  CHECK_THROWS_AS(map_degree(rmap(r, {"x0^2", "x1^2"}), kHere, 2), Error);
}

TEST_CASE("map degrees on P2") {
  auto r = make_std_ring({"x0", "x1", "x2"});
  auto v = rmap(r, {"x0^2", "x0*x1", "x0*x2", "x1^2", "x1*x2", "x2^2"});
  auto d = map_degree_data(v, kHere, 4);
  CHECK(d.stable);
  CHECK(d.deg_image == 4);
  CHECK(d.deg_map == 1);
  CHECK(d.identity_holds);
  CHECK(preimage_count(v, kHere, 3) == 1);

  auto sq = rmap(r, {"x0^2", "x1^2", "x2^2"});
  auto e = map_degree_data(sq, kHere, 4);
  CHECK(e.deg_image == 1);
  CHECK(e.deg_map == 4);
  CHECK(preimage_count(sq, kHere, 3) == 4);
}

TEST_CASE("j-multiplicity") {
  auto r = make_std_ring({"x", "y"});
  auto a = j_multiplicity_data(Ps(r, {"x^2", "x*y", "y^2"}), kHere, 6);
  CHECK(a.limit.stable);
  CHECK(a.j == 4);
  CHECK(a.primary);
  CHECK(a.samuel_stable);
  CHECK(a.samuel == 4);
  CHECK(j_multiplicity(Ps(r, {"x"}), kHere, 6) == 0);
  CHECK(j_multiplicity(Ps(r, {"x", "y"}), kHere, 6) == 1);
  // (x^2, xy) = x m: H^0(J^n / J^{n+1}) = x m^{n-1} / x m^{n+1} has length 2n + 1.
  auto b = j_multiplicity_data(Ps(r, {"x^2", "x*y"}), kHere, 6);
  CHECK_FALSE(b.primary);
  CHECK(b.limit.stable);
  CHECK(b.lengths == std::vector<std::int64_t>{3, 5, 7, 9, 11, 13});
  CHECK(b.j == 2);
}

TEST_CASE("constancy of rational map invariants") {
  auto r = make_std_ring({"x0", "x1"}, {}, {"t"});
  auto m = rmap(r, {"x0^2", "x0*x1", "t*x1^2"});
  auto gen = ratmap_report(m, FiberPoint::generic(), 6, 1);
  CHECK(gen.finite);
  CHECK(gen.deg_image == 2);
  CHECK(gen.deg_map == 1);
  auto zero = ratmap_report(m, FiberPoint::rational({0}), 6, 1);
  CHECK(zero.deg_image == 1);
  CHECK(zero.deg_map == 1);

  SamplerSpec spec;
  spec.seed = 4;
  spec.grid_radius = 1;
  spec.random_count = 2;
  auto rep = constancy_report(m, spec, 6);
  CHECK_FALSE(rep.verdict.constant);
  REQUIRE(rep.reports.size() == rep.verdict.samples.size());
  for (std::size_t i = 0; i < rep.reports.size(); ++i) {
    bool at_zero = rep.verdict.samples[i].label == FiberPoint::rational({0}).label(*r);
    CHECK(rep.verdict.samples[i].matches_reference == !at_zero);
    if (rep.reports[i].finite) CHECK(rep.reports[i].oracle_deg_map == rep.reports[i].deg_map);
  }

  auto flat = rmap(r, {"x0^2", "x1^2"});
  CHECK(constancy_report(flat, spec, 6).verdict.constant);
  CHECK_THROWS_AS(constancy_report(rmap(r, {"t*x0", "t*x0"}), spec, 6), Error);
}
