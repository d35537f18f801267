#include "doctest.h"
#include "fibercoh/linalg.hpp"
#include "fibercoh/fiber.hpp"
#include "helpers.hpp"

using namespace testing;

namespace {

std::vector<std::size_t> ranks(const FreeComplex& c) {
  std::vector<std::size_t> out;
  for (const auto& f : c.modules) out.push_back(f.rank());
  return out;
}

}  // namespace

TEST_CASE("univariate helpers") {
  UPoly a{mpq_class(-2), mpq_class(0), mpq_class(1)};  // w^2 - 2
  CHECK(upoly_rational_roots(a).empty());
  UPoly b{mpq_class(0), mpq_class(-1), mpq_class(1)};  // w^2 - w
  auto roots = upoly_rational_roots(b);
  REQUIRE(roots.size() == 2);
  CHECK(upoly_squarefree(b));
  CHECK(!upoly_squarefree(upoly_mul(b, b)));
  ExtField k(UPoly{mpq_class(1), mpq_class(1), mpq_class(1)});  // w^2 + w + 1
  UPoly w{mpq_class(0), mpq_class(1)};
  CHECK(k.mul(w, k.inv(w)) == k.one());
  CHECK(k.mul(k.mul(w, w), w) == k.one());  // w is a primitive cube root of unity
}

TEST_CASE("rank and nullspace over QQ") {
  PrimeField q(CoeffField{});
  DenseMatrix<PrimeField> a{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  CHECK(matrix_rank(q, a, 3) == 2);
  auto n = nullspace(q, a, 3);
  REQUIRE(n.size() == 1);
  for (const auto& row : a) {
    mpq_class s = 0;
    for (std::size_t j = 0; j < 3; ++j) s += row[j] * n[0][j];
    CHECK(s == 0);
  }
}

TEST_CASE("fraction-free rank with certificate") {
  auto r = make_std_ring({"x"}, {}, {"t"});
  std::vector<std::vector<Poly>> a{{P(r, "t"), P(r, "1")}, {P(r, "t^2"), P(r, "t")}};
  auto b = bareiss(r, a, 2);
  CHECK(b.rank == 1);
  std::vector<std::vector<Poly>> c{{P(r, "t"), P(r, "0")}, {P(r, "0"), P(r, "t-1")}};
  auto d = bareiss(r, c, 2);
  CHECK(d.rank == 2);
  CHECK(evaluate_base_rational(d.minor, {mpq_class(0)}) == 0);
  CHECK(evaluate_base_rational(d.minor, {mpq_class(1)}) == 0);
  CHECK(evaluate_base_rational(d.minor, {mpq_class(2)}) != 0);
}

TEST_CASE("Koszul resolutions") {
  auto r = make_std_ring({"x", "y"});
  auto res = free_resolution(quotient_presentation(Ps(r, {"x", "y"})));
  CHECK(res.complete);
  CHECK(ranks(res) == std::vector<std::size_t>{1, 2, 1});
  CHECK(res.modules[1].shifts == std::vector<Degree>{{1, 0}, {1, 0}});
  CHECK(res.modules[2].shifts == std::vector<Degree>{{2, 0}});
  res.check();
  CHECK(is_minimal(res));

  auto r3 = make_std_ring({"x", "y", "z"});
  auto res3 = free_resolution(quotient_presentation(Ps(r3, {"x", "y", "z"})));
  CHECK(ranks(res3) == std::vector<std::size_t>{1, 3, 3, 1});
  res3.check();

  auto fr = free_resolution(free_module_presentation(F(r, {0})));
  CHECK(fr.length() == 0);
  CHECK(fr.complete);
}

TEST_CASE("minimalization") {
  auto r = make_std_ring({"x", "y"});
  // R --1--> R is contractible.
  FreeComplex triv;
  triv.modules = {F(r, {0}), F(r, {0})};
  triv.maps = {GradedMatrix(triv.modules[1], triv.modules[0], {V(r, {"1"})})};
  auto m = minimalize(triv);
  CHECK(m.length() == 0);
  CHECK(m.modules[0].rank() == 0);

  auto kos = free_resolution(quotient_presentation(Ps(r, {"x", "y"})));
  CHECK(ranks(minimalize(kos)) == ranks(kos));

  // Koszul (+) [R(-1) --1--> R(-1)] placed in positions 2 -> 1.
  FreeComplex pad;
  pad.modules = {F(r, {}), F(r, {1}), F(r, {1})};
  pad.maps = {GradedMatrix::zero(pad.modules[1], pad.modules[0]),
              GradedMatrix(pad.modules[2], pad.modules[1], {V(r, {"1"})})};
  auto sum = direct_sum(kos, pad);
  sum.check();
  CHECK(ranks(sum) == std::vector<std::size_t>{1, 3, 2});
  CHECK(!is_minimal(sum));
  auto mm = minimalize(sum);
  CHECK(ranks(mm) == std::vector<std::size_t>{1, 2, 1});
  CHECK(betti_table(mm) == betti_table(kos));
  mm.check();

  auto rz = make_std_ring({"x"}, {}, {"t"});
  FreeComplex zc;
  zc.modules = {F(rz, {0})};
  CHECK_THROWS_AS(minimalize(zc), Error);
}

TEST_CASE("Betti numbers do not depend on the monomial order") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    auto a = make_std_ring({"x", "y", "z"});
    auto b = make_std_ring({"x", "y", "z"}, {}, {}, {}, BlockOrderKind::Lex);
    std::vector<std::string> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_form(a, Degree{2, 0}, rng).to_string());
    auto ra = free_resolution(quotient_presentation(Ps(a, gens)));
    auto rb = free_resolution(quotient_presentation(Ps(b, gens)));
    CHECK(betti_table(ra) == betti_table(rb));
  }
}

TEST_CASE("dual complexes") {
  auto r = make_std_ring({"x"});
  FreeComplex c;
  c.modules = {F(r, {0}), F(r, {1})};
  c.maps = {GradedMatrix(c.modules[1], c.modules[0], {V(r, {"x"})})};
  auto d = dual_complex(c, Degree{-1, 0});
  CHECK(d.modules[0].shifts == std::vector<Degree>{{1, 0}});
  CHECK(d.modules[1].shifts == std::vector<Degree>{{0, 0}});
  CHECK(d.maps[0].entry(0, 0) == P(r, "x"));
  d.maps[0].validate();

  auto r2 = make_std_ring({"x", "y"});
  auto kos = free_resolution(quotient_presentation(Ps(r2, {"x", "y"})));
  auto dd = dual_of_dual(dual_complex(kos, Degree{0, 0}), Degree{0, 0});
  REQUIRE(dd.modules.size() == kos.modules.size());
  for (std::size_t i = 0; i < dd.modules.size(); ++i) CHECK(dd.modules[i] == kos.modules[i]);
  for (std::size_t i = 0; i < dd.maps.size(); ++i) CHECK(dd.maps[i].dense() == kos.maps[i].dense());

  FreeComplex zero;
  CHECK(dual_complex(zero, Degree{0, 0}).modules.empty());
}

TEST_CASE("top cokernel") {
  auto r = make_std_ring({"x", "y"});
  auto kos = free_resolution(quotient_presentation(Ps(r, {"x", "y"})));
  auto d3 = d_top_cokernel(kos, 2);
  CHECK(d3.rows() == 0);

  FreeComplex partial;
  partial.modules = kos.modules;
  partial.maps = kos.maps;
  partial.complete = false;
  CHECK_THROWS_AS(d_top_cokernel(partial, 2), Error);

  // Over QQ[t]/(t(t-1))[x], R/(t x) has the periodic resolution R <- R(-1) <- R(-1) <- ...
  // with maps t x, t - 1, t, so D^3 = coker(t or t - 1) is nonzero.
  auto q = make_std_ring({"x"}, {}, {"t"}, {"t^2 - t"});
  auto res = free_resolution(quotient_presentation(Ps(q, {"t*x"})), 3);
  res.check();
  CHECK(res.length() == 3);
  auto d = d_top_cokernel(res, 2);
  REQUIRE(d.rows() == 1);
  CHECK(!groebner_basis(d.columns, d.target).is_everything());
}

TEST_CASE("Ext modules") {
  auto r = make_std_ring({"x1", "x2"});
  auto m = quotient_presentation(Ps(r, {"x1"}));
  auto ext = ext_modules(m, Degree{-2, 0}, 2);
  REQUIRE(ext.size() == 3);
  auto is_zero_module = [](const ModulePresentation& p) {
    return p.rows() == 0 || groebner_basis(p.columns, p.target).is_everything();
  };
  CHECK(is_zero_module(ext[0]));
  CHECK(is_zero_module(ext[2]));
  // Ext^1 = (R/(x1))(-1): Hilbert function 1 in each degree >= 1, 0 below.
  auto gb = groebner_basis(ext[1].columns, ext[1].target);
  for (int d = -1; d <= 4; ++d) {
    std::size_t count = 0;
    for (std::size_t c = 0; c < ext[1].rows(); ++c)
      for (const auto& mono : r->monomials_of_degree(Degree{d, 0} - ext[1].target.shifts[c])) {
        Vec v = Vec::basis(r, static_cast<std::uint32_t>(c), Poly(r, TermList{Term{mono, mpq_class(1)}}));
        if (gb.normal_form(v) == v) ++count;
      }
    CHECK(count == (d >= 1 ? 1u : 0u));
  }

  auto fm = ext_modules(free_module_presentation(F(r, {0})), Degree{-2, 0}, 2);
  CHECK(fm[0].rows() == 1);
  CHECK(fm[0].target.shifts[0] == Degree{2, 0});
  CHECK(is_zero_module(fm[1]));

  auto k = quotient_presentation(Ps(r, {"x1", "x2"}));
  auto ek = ext_modules(k, Degree{-2, 0}, 2);
  CHECK(is_zero_module(ek[0]));
  CHECK(is_zero_module(ek[1]));
  auto g2 = groebner_basis(ek[2].columns, ek[2].target);
  REQUIRE(ek[2].rows() == 1);
  CHECK(ek[2].target.shifts[0] == Degree{0, 0});
  CHECK(g2.contains(V(r, {"x1"})));
  CHECK(g2.contains(V(r, {"x2"})));
  CHECK(!g2.contains(V(r, {"1"})));
}

TEST_CASE("Betti table CSV") {
  auto r = make_std_ring({"x", "y"});
  auto kos = free_resolution(quotient_presentation(Ps(r, {"x", "y"})));
  CHECK(betti_table(kos).to_csv(*r) == "i,0,1,2\n0,1,0,0\n1,0,2,0\n2,0,0,1\n");
}
