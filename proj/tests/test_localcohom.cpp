#include <functional>

#include "doctest.h"
#include "fibercoh/localcohom.hpp"
#include "helpers.hpp"

using namespace testing;

namespace {

const FiberPoint kQ = FiberPoint::generic();

// Number of alpha with alpha_i >= 1 and sum alpha_i w_i = n.
std::size_t count_inverse_monomials(const std::vector<int>& w, long n) {
  std::function<std::size_t(std::size_t, long)> rec = [&](std::size_t k, long rem) -> std::size_t {
    if (k == w.size()) return rem == 0 ? 1 : 0;
    std::size_t total = 0;
    for (long a = 1; a * w[k] <= rem; ++a) total += rec(k + 1, rem - a * w[k]);
    return total;
  };
  return rec(0, n);
}

ModulePresentation katzman_module(const RingPtr& k) {
  return GradedMatrix(FreeModule(k, {Degree{2, 2}}), FreeModule(k, {Degree{0, 0}}),
                      {Vec::from_components(k, {P(k, katzman_form())})});
}

}  // namespace

TEST_CASE("top local cohomology of the polynomial ring") {
  auto r = make_std_ring({"x1", "x2"});
  CHECK(top_cohomology_dim(*r, Degree{-2, 0}) == 1);
  CHECK(top_cohomology_dim(*r, Degree{-3, 0}) == 2);
  CHECK(top_cohomology_dim(*r, Degree{-1, 0}) == 0);

  std::mt19937_64 rng(3);
  for (int g = 0; g < 5; ++g) {
    std::uniform_int_distribution<int> wd(1, 4);
    std::vector<int> w{wd(rng), wd(rng), wd(rng)};
    auto rw = make_std_ring({"a", "b", "c"}, w);
    std::uniform_int_distribution<int> nd(-25, 2);
    for (int s = 0; s < 10; ++s) {
      long nu = nd(rng);
      CHECK(top_cohomology_dim(*rw, Degree{nu, 0}) == count_inverse_monomials(w, -nu));
    }
  }
}

TEST_CASE("top local cohomology under a Z^2 grading without y variables") {
  RingDescriptor d;
  d.grading_rank = 2;
  d.x_vars = {{"a", Degree{1, 1}}, {"b", Degree{2, -1}}};
  d.psi = {1, 0};
  auto r = Ring::make(d);
  CHECK(top_cohomology_dim(*r, Degree{-3, 0}) == 1);
  CHECK(top_cohomology_dim(*r, Degree{-4, -1}) == 1);
  CHECK(top_cohomology_dim(*r, Degree{-4, 0}) == 0);
  CHECK(top_cohomology_dim(*r, Degree{-6, 0}) == 1);
  auto t = cross_validate(free_module_presentation(FreeModule(r, {Degree{0, 0}})), {Degree{-3, 0}, Degree{-5, 1}}, kQ);
  CHECK(t.dim(2, Degree{-3, 0}) == 1);
  CHECK(t.dim(2, Degree{-5, 1}) == 1);
}

TEST_CASE("local cohomology by both routes") {
  auto r = make_std_ring({"x1", "x2"});
  auto window = degree_window(*r, -5, 2);
  auto free = cross_validate(free_module_presentation(F(r, {0})), window, kQ);
  CHECK(free.dim(2, Degree{-2, 0}) == 1);
  CHECK(free.dim(2, Degree{-3, 0}) == 2);
  for (const auto& d : window) {
    CHECK(free.dim(0, d) == 0);
    CHECK(free.dim(1, d) == 0);
  }

  auto line = cross_validate(quotient_presentation(Ps(r, {"x1"})), window, kQ);
  for (const auto& d : window) {
    CHECK(line.dim(1, d) == (d[0] <= -1 ? 1u : 0u));
    CHECK(line.dim(2, d) == 0);
  }

  auto point = cross_validate(quotient_presentation(Ps(r, {"x1", "x2"})), window, kQ);
  for (const auto& d : window) {
    CHECK(point.dim(0, d) == (d[0] == 0 ? 1u : 0u));
    CHECK(point.dim(1, d) == 0);
    CHECK(point.dim(2, d) == 0);
  }

  auto shifted = cross_validate(free_module_presentation(F(r, {3})), degree_window(*r, -2, 2), kQ);
  CHECK(shifted.dim(2, Degree{1, 0}) == 1);
  CHECK(shifted.dim(2, Degree{0, 0}) == 2);

  ModulePresentation zero(F(r, {}), F(r, {}), {});
  CHECK(local_cohomology_dims_extdual(zero, window, kQ).entries.empty());
}

TEST_CASE("Ext degree bookkeeping for hypersurfaces") {
  // Ext^1(R/(f), R(-delta)) = (R/(f))(d - delta): [H^{r-1}]_mu has the dimension of [R/(f)]_{d - delta - mu}.
  auto r = make_std_ring({"x", "y", "z"});
  auto m = quotient_presentation(Ps(r, {"x^2 + y*z"}));
  auto window = degree_window(*r, -6, 1);
  auto t = cross_validate(m, window, kQ);
  for (const auto& mu : window) {
    const std::int64_t e = 2 - 3 - mu[0];
    const std::size_t expect = e < 0 ? 0 : (e + 2) * (e + 1) / 2 - (e >= 2 ? e * (e - 1) / 2 : 0);
    CHECK(t.dim(2, mu) == expect);
  }
}

TEST_CASE("invariants") {
  auto r = make_std_ring({"x", "y"});
  auto inv = cohomology_invariants(free_module_presentation(F(r, {0})), kQ);
  CHECK(inv.dim == 2);
  CHECK(inv.depth == 2);
  CHECK(!inv.a[0]);
  CHECK(!inv.a[1]);
  CHECK(*inv.a[2] == -2);
  CHECK(*inv.regularity == 0);

  auto inv1 = cohomology_invariants(quotient_presentation(Ps(r, {"x"})), kQ);
  CHECK(inv1.dim == 1);
  CHECK(inv1.depth == 1);
  CHECK(*inv1.a[1] == -1);
  CHECK(*inv1.regularity == 0);

  auto inv0 = cohomology_invariants(quotient_presentation(Ps(r, {"x", "y"})), kQ);
  CHECK(inv0.dim == 0);
  CHECK(inv0.depth == 0);
  CHECK(*inv0.a[0] == 0);
  CHECK(*inv0.regularity == 0);

  CHECK_THROWS_AS(cohomology_invariants(quotient_presentation(Ps(r, {"1"})), kQ), Error);

  // Window scan agrees with the Ext-based a-invariants.
  auto m = quotient_presentation(Ps(r, {"x^2", "x*y"}));
  auto im = cohomology_invariants(m, kQ);
  auto t = local_cohomology_dims_dualcomplex(m, degree_window(*r, -6, 4), kQ);
  for (int i = 0; i <= 2; ++i) {
    std::optional<std::int64_t> top;
    for (const auto& [key, e] : t.entries)
      if (key.first == i && e.dim > 0) top = std::max(top.value_or(key.second[0]), key.second[0]);
    if (im.a[static_cast<std::size_t>(i)] && *im.a[static_cast<std::size_t>(i)] >= -6)
      CHECK(top == im.a[static_cast<std::size_t>(i)]);
  }
  CHECK(im.depth == 0);
  CHECK(im.dim == 1);
}

TEST_CASE("sheaf cohomology") {
  auto r = make_std_ring({"x0", "x1"});
  auto rows = sheaf_cohomology_dims(free_module_presentation(F(r, {0})), -3, 3, kQ);
  for (const auto& row : rows) {
    CHECK(row.h[0] == static_cast<std::size_t>(row.n >= 0 ? row.n + 1 : 0));
    CHECK(row.h[1] == static_cast<std::size_t>(row.n <= -2 ? -row.n - 1 : 0));
  }
  auto pt = sheaf_cohomology_dims(quotient_presentation(Ps(r, {"x0"})), -3, 3, kQ);
  for (const auto& row : pt) {
    CHECK(row.h[0] == 1);
    CHECK(row.h[1] == 0);
  }
  auto shifted = sheaf_cohomology_dims(free_module_presentation(F(r, {4})), 0, 3, kQ);
  for (const auto& row : shifted) CHECK(row.h[0] == 0);

  auto w = make_std_ring({"x", "y"}, {1, 2});
  CHECK_THROWS_AS(sheaf_cohomology_dims(free_module_presentation(F(w, {0})), 0, 1, kQ), Error);
}

TEST_CASE("Katzman strands") {
  auto k = katzman_ring();
  auto m = katzman_module(k);
  auto dim_at = [&](const FiberPoint& p, int d) {
    return local_cohomology_dims_dualcomplex(m, {Degree{-d, d}}, p).dim(2, Degree{-d, d});
  };
  // d = 2: tau_1 = -(s + t).
  const auto generic2 = dim_at(FiberPoint::generic(), 2);
  CHECK(dim_at(FiberPoint::rational({1, 1}), 2) == generic2);
  CHECK(dim_at(FiberPoint::rational({2, 5}), 2) == generic2);
  CHECK(dim_at(FiberPoint::rational({1, -1}), 2) > generic2);
  CHECK(dim_at(FiberPoint::rational({3, -3}), 2) > generic2);
  // d = 3: tau_2 = s^2 + s t + t^2 has only non-rational zeros.
  const auto generic3 = dim_at(FiberPoint::generic(), 3);
  CHECK(dim_at(FiberPoint::rational({1, 1}), 3) == generic3);
  CHECK(dim_at(FiberPoint::rational({1, -1}), 3) == generic3);
  CHECK(dim_at(FiberPoint::algebraic({"1", "w"}, "w", "w^2 + w + 1"), 3) > generic3);
  MESSAGE("generic dims " << generic2 << " " << generic3);
}
