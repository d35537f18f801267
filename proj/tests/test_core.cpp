#include "doctest.h"
#include "helpers.hpp"

using namespace testing;

TEST_CASE("ring construction validates gradings") {
  auto r = make_std_ring({"x1", "x2"});
  CHECK(r->standard_graded());
  CHECK(r->delta() == Degree{2, 0});

  RingDescriptor bad;
  bad.x_vars = {{"x1", {-1, 0}}};
  CHECK_THROWS_AS(Ring::make(bad), Error);
  try {
    Ring::make(bad);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PositivityViolation);
  }

  RingDescriptor katz;
  katz.grading_rank = 2;
  katz.base_kind = BaseKind::Polynomial;
  katz.base_vars = {"s", "t"};
  katz.x_vars = {{"u", {1, 0}}, {"v", {1, 0}}};
  katz.y_vars = {{"x", {0, 1}}, {"y", {0, 1}}};
  auto k = Ring::make(katz);
  CHECK(k->bigraded());
  CHECK(P(k, "s*x^2*v^2").degree() == Degree{2, 2});
  CHECK(P(k, "s*x^2*v^2 - (t+s)*x*y*u*v + t*y^2*u^2").degree() == Degree{2, 2});

  RingDescriptor wrong = katz;
  wrong.y_vars = {{"x", {1, 1}}, {"y", {0, 1}}};
  try {
    Ring::make(wrong);
    FAIL("expected BadBigrading");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadBigrading);
  }
}

TEST_CASE("polynomial arithmetic and degrees") {
  auto r = make_std_ring({"x", "y"});
  CHECK(P(r, "(x+y)*(x-y)") == P(r, "x^2-y^2"));
  CHECK(P(r, "x+y") * P(r, "x-y") == P(r, "x^2 - y^2"));
  CHECK(P(r, "x + x^2").degree() == std::nullopt);

  auto w = make_std_ring({"x1", "x2"});
  CHECK(P(w, "x1^2*x2").degree() == Degree{3, 0});

  auto rt = make_std_ring({"x1"}, {}, {"t"});
  CHECK(P(rt, "t*x1^2").degree() == Degree{2, 0});
  CHECK(P(rt, "t^3 + t").degree() == Degree{0, 0});
}

TEST_CASE("quotient base normal forms") {
  auto r = make_std_ring({"x"}, {}, {"t"}, {"t*(t-1)"});
  CHECK(P(r, "t*t") == P(r, "t"));
  CHECK(P(r, "t^5*x - x") == P(r, "t*x - x"));
  // Idempotence of the normal form.
  Poly p = P(r, "t^7 + 3*t^2*x + x");
  CHECK(Poly(r, p.terms()) == p);
}

TEST_CASE("ring axioms on random inputs") {
  auto r = make_std_ring({"x", "y", "z"}, {1, 2, 3});
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Poly a = random_form(r, {1 + trial % 3, 0}, rng);
    Poly b = random_form(r, {2, 0}, rng);
    Poly c = random_form(r, {3, 0}, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) - b == a);
    if (!a.is_zero() && !b.is_zero()) CHECK(*(a * b).degree() == *a.degree() + *b.degree());
  }
}

TEST_CASE("parser round trip and errors") {
  auto r = make_std_ring({"x", "y"});
  CHECK(P(r, "3/2*x^2 - y*x + 1/3*y^2").to_string() == P(r, P(r, "3/2*x^2 - y*x + 1/3*y^2").to_string()).to_string());
  try {
    P(r, "x + w");
    FAIL("expected UndeclaredName");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndeclaredName);
  }
  CHECK_THROWS_AS(P(r, "x + "), Error);
}

TEST_CASE("prime field arithmetic") {
  RingDescriptor d;
  d.characteristic = 7;
  d.x_vars = {{"x", {1, 0}}, {"y", {1, 0}}};
  auto r = Ring::make(d);
  CHECK(P(r, "4*x + 5*x") == P(r, "2*x"));
  CHECK(P(r, "1/3*x") == P(r, "5*x"));
  d.characteristic = 8;
  CHECK_THROWS_AS(Ring::make(d), Error);
}
