#pragma once

#include <random>
#include <string>
#include <vector>

#include "fibercoh/error.hpp"
#include "fibercoh/groebner.hpp"
#include "fibercoh/poly_io.hpp"
#include "fibercoh/ring.hpp"

namespace testing {

using namespace fibercoh;

// Z-graded ring over QQ (or k[z] / k[z]/J) with the given x variables and degrees.
inline RingPtr make_std_ring(const std::vector<std::string>& xs, const std::vector<int>& degs = {},
                             const std::vector<std::string>& zs = {}, const std::vector<std::string>& j = {},
                             BlockOrderKind order = BlockOrderKind::GRevLex) {
  RingDescriptor d;
  for (std::size_t i = 0; i < xs.size(); ++i)
    d.x_vars.push_back({xs[i], Degree{degs.empty() ? 1 : degs[i], 0}});
  d.base_vars = zs;
  d.base_ideal = j;
  d.base_kind = zs.empty() ? BaseKind::Field : (j.empty() ? BaseKind::Polynomial : BaseKind::Quotient);
  d.order = order;
  return Ring::make(d);
}

inline Poly P(const RingPtr& r, const std::string& s) { return parse_poly(r, s); }

inline std::vector<Poly> Ps(const RingPtr& r, const std::vector<std::string>& v) {
  std::vector<Poly> out;
  for (const auto& s : v) out.push_back(P(r, s));
  return out;
}

inline Vec V(const RingPtr& r, const std::vector<std::string>& comps) {
  return Vec::from_components(r, Ps(r, comps));
}

inline FreeModule F(const RingPtr& r, const std::vector<int>& shifts) {
  std::vector<Degree> s;
  for (int x : shifts) s.push_back(Degree{x, 0});
  return FreeModule(r, s);
}

// Random homogeneous polynomial of the given degree with small integer coefficients.
inline Poly random_form(const RingPtr& r, const Degree& deg, std::mt19937_64& rng, double density = 0.6) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_real_distribution<double> u(0, 1);
  TermList t;
  for (const auto& m : r->monomials_of_degree(deg))
    if (u(rng) < density) t.push_back(Term{m, mpq_class(coeff(rng))});
  return Poly(r, t);
}

inline bool same_ideal(const std::vector<Poly>& a, const std::vector<Poly>& b) { return ideal_equal(a, b); }

}  // namespace testing

namespace testing {

// Katzman ambient: A = QQ[s,t], x-block u,v of bidegree (1,0), y-block x,y of bidegree (0,1).
inline RingPtr katzman_ring() {
  RingDescriptor d;
  d.grading_rank = 2;
  d.x_vars = {{"u", Degree{1, 0}}, {"v", Degree{1, 0}}};
  d.y_vars = {{"x", Degree{0, 1}}, {"y", Degree{0, 1}}};
  d.base_vars = {"s", "t"};
  d.base_kind = BaseKind::Polynomial;
  return Ring::make(d);
}

inline const char* katzman_form() { return "s*x^2*v^2 - (t+s)*x*y*u*v + t*y^2*u^2"; }

}  // namespace testing
