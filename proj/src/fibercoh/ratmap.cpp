#include "fibercoh/ratmap.hpp"

#include <mutex>
#include <random>

#include "fibercoh/error.hpp"

namespace fibercoh {

namespace {

struct FiberForms {
  RingPtr ring;
  std::vector<Poly> forms;  // nonzero specialized forms
  std::vector<Poly> all;    // all specialized forms, zeros included
};

FiberForms at_fiber(const RationalMap& map, const FiberPoint& fiber) {
  FiberMap fm(map.ring, fiber);
  FiberForms f;
  f.ring = fm.target();
  f.all = fm(map.forms);
  for (const auto& g : f.all)
    if (!g.is_zero()) f.forms.push_back(g);
  return f;
}

std::vector<Poly> irrelevant(const RingPtr& ring) {
  std::vector<Poly> m;
  for (auto i : ring->x_indices()) m.push_back(Poly::variable(ring, i));
  return m;
}

std::int64_t to_int(const mpz_class& z) {
  if (!z.fits_slong_p()) fail(ErrorCode::Internal, "integer overflow in a Hilbert function value");
  return z.get_si();
}

// dim [J]_n = dim R_n - dim [R/J]_n.
std::int64_t ideal_dim(const RingPtr& ring, const std::vector<Poly>& j, std::int64_t n) {
  HilbertSeries whole = hilbert_series(ring, {});
  return to_int(whole.value(n) - hilbert_series(ring, j).value(n));
}

Poly evaluate_x(const Poly& p, const std::vector<mpq_class>& values) {
  const Ring& ring = *p.ring();
  TermList out;
  for (const auto& t : p.terms()) {
    mpq_class c = t.c;
    for (std::size_t k = 0; k < ring.num_x(); ++k)
      for (unsigned e = 0; e < t.m.exp[ring.x_indices()[k]]; ++e) c *= values[k];
    if (sgn(c) != 0) out.push_back(Term{ring.z_part(t.m), c});
  }
  return Poly(p.ring(), std::move(out));
}

void require_finite(const RationalMap& map, const FiberPoint& fiber) {
  if (!generically_finite(map, fiber))
    fail(ErrorCode::NotGenericallyFinite, "the map is not generically finite at " + fiber.label(*map.ring));
}

}  // namespace

RationalMap RationalMap::make(const std::vector<Poly>& forms) {
  if (forms.empty()) fail(ErrorCode::InvalidArgument, "a rational map needs at least one form");
  RationalMap m;
  m.ring = forms[0].ring();
  if (!m.ring->standard_graded()) fail(ErrorCode::NotStandardGraded, "rational maps need a standard graded source");
  if (m.ring->num_x() < 2) fail(ErrorCode::InvalidArgument, "the source must be P^r with r >= 1");
  for (const auto& g : forms) {
    check_same_ring(*g.ring(), *m.ring);
    if (g.is_zero()) continue;
    auto d = g.degree();
    if (!d) fail(ErrorCode::Inhomogeneous, "form " + g.to_string() + " is not homogeneous");
    if (m.d == 0) m.d = (*d)[0];
    if ((*d)[0] != m.d) fail(ErrorCode::InvalidArgument, "forms of a rational map must share one degree");
  }
  if (m.d <= 0) fail(ErrorCode::InvalidArgument, "forms of a rational map must have positive degree");
  m.forms = forms;
  return m;
}

unsigned default_power_cutoff(const Ring& ring) { return ring.num_x() == 2 ? 6 : 4; }

ImageIdeal image_ideal(const RationalMap& map, const FiberPoint& fiber) {
  FiberForms f = at_fiber(map, fiber);
  RingDescriptor big = f.ring->descriptor();
  RingDescriptor yd = big;
  yd.x_vars.clear();
  std::set<std::string> used;
  std::vector<std::string> ys;
  for (std::size_t i = 0; i < f.all.size(); ++i) {
    ys.push_back(fresh_variable_name(*f.ring, "y", used));
    big.x_vars.push_back({ys.back(), Degree{map.d, 0}});
    yd.x_vars.push_back({ys.back(), Degree{1, 0}});
  }
  RingPtr bring = Ring::make(big);
  std::vector<Poly> rel;
  for (std::size_t i = 0; i < f.all.size(); ++i)
    rel.push_back(Poly::variable(bring, *bring->index_of(ys[i])) - transport(f.all[i], bring));
  std::vector<std::size_t> xs;
  for (auto i : f.ring->x_indices()) xs.push_back(*bring->index_of(f.ring->var_name(i)));
  ImageIdeal out;
  out.ring = Ring::make(yd);
  for (const auto& p : eliminate(rel, xs)) out.gens.push_back(transport(p, out.ring));
  out.hilbert = hilbert_series(out.ring, out.gens);
  return out;
}

bool generically_finite(const RationalMap& map, const FiberPoint& fiber) {
  return image_ideal(map, fiber).hilbert.dimension() == static_cast<std::int64_t>(map.ring->num_x());
}

std::int64_t image_degree(const RationalMap& map, const FiberPoint& fiber) {
  ImageIdeal im = image_ideal(map, fiber);
  if (im.hilbert.dimension() != static_cast<std::int64_t>(map.ring->num_x()))
    fail(ErrorCode::NotGenericallyFinite, "the map is not generically finite at " + fiber.label(*map.ring));
  return to_int(im.hilbert.multiplicity());
}

LimitEstimate limit_estimate(const std::vector<std::int64_t>& seq, std::size_t r) {
  LimitEstimate e;
  e.differences = finite_differences(seq, r);
  const std::size_t n = e.differences.size();
  if (n > 0) e.value = e.differences.back();
  e.stable = n >= 2 && e.differences[n - 1] == e.differences[n - 2];
  return e;
}

MapDegreeResult map_degree_data(const RationalMap& map, const FiberPoint& fiber, unsigned k_max) {
  MapDegreeResult res;
  res.deg_image = image_degree(map, fiber);
  FiberForms f = at_fiber(map, fiber);
  const auto m = irrelevant(f.ring);
  std::vector<std::int64_t> h1, sat;
  for (unsigned k = 1; k <= k_max; ++k) {
    auto jk = ideal_power(f.forms, k);
    auto sk = ideal_saturation(jk, m);
    PowerRow row;
    row.k = k;
    const std::int64_t deg = static_cast<std::int64_t>(k) * map.d;
    row.power_dim = ideal_dim(f.ring, jk, deg);
    row.saturated_dim = ideal_dim(f.ring, sk, deg);
    row.h1 = row.saturated_dim - row.power_dim;
    h1.push_back(row.h1);
    sat.push_back(row.saturated_dim);
    res.power_table.push_back(row);
  }
  res.h1_limit = limit_estimate(h1, map.r());
  res.sat_limit = limit_estimate(sat, map.r());
  const std::int64_t c = res.h1_limit.value;
  const bool divisible = res.deg_image > 0 && c % res.deg_image == 0;
  res.deg_map = 1 + c / std::max<std::int64_t>(res.deg_image, 1);
  res.e_sat = res.sat_limit.value;
  res.stable = res.h1_limit.stable && res.sat_limit.stable && divisible;
  res.identity_holds = res.e_sat == res.deg_image * res.deg_map;
  return res;
}

std::int64_t map_degree(const RationalMap& map, const FiberPoint& fiber, unsigned k_max) {
  auto r = map_degree_data(map, fiber, k_max);
  if (!r.h1_limit.stable || r.h1_limit.value % r.deg_image != 0)
    fail(ErrorCode::Unstable, "map degree estimates did not settle by k = " + std::to_string(k_max) +
                                  "; raise the power cutoff");
  return r.deg_map;
}

std::int64_t saturated_fiber_multiplicity(const RationalMap& map, const FiberPoint& fiber, unsigned n_max) {
  auto r = map_degree_data(map, fiber, n_max);
  if (!r.sat_limit.stable)
    fail(ErrorCode::Unstable, "saturated fiber Hilbert function did not settle by n = " + std::to_string(n_max));
  return r.e_sat;
}

std::int64_t preimage_count(const RationalMap& map, const FiberPoint& fiber, std::uint64_t seed) {
  require_finite(map, fiber);
  FiberForms f = at_fiber(map, fiber);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-5, 5);
  std::vector<Poly> q;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 100) fail(ErrorCode::Internal, "no random point outside the base locus");
    std::vector<mpq_class> p;
    for (std::size_t i = 0; i < f.ring->num_x(); ++i) p.push_back(coord(rng));
    q.clear();
    bool any = false;
    for (const auto& g : f.all) {
      q.push_back(evaluate_x(g, p));
      any = any || !q.back().is_zero();
    }
    if (any) break;
  }
  std::vector<Poly> eqs;
  for (std::size_t i = 0; i < f.all.size(); ++i)
    for (std::size_t j = i + 1; j < f.all.size(); ++j) {
      Poly e = q[j] * f.all[i] - q[i] * f.all[j];
      if (!e.is_zero()) eqs.push_back(e);
    }
  auto fiber_ideal = ideal_saturation(ideal_saturation(eqs, f.forms), irrelevant(f.ring));
  HilbertSeries hs = hilbert_series(f.ring, fiber_ideal);
  if (hs.dimension() != 1) fail(ErrorCode::NotGenericallyFinite, "the preimage of a general point is not finite");
  return to_int(hs.multiplicity());
}

JMultiplicity j_multiplicity_data(const std::vector<Poly>& ideal, const FiberPoint& fiber, unsigned k_max) {
  JMultiplicity res;
  if (ideal.empty()) fail(ErrorCode::InvalidArgument, "empty ideal");
  FiberMap fm(ideal[0].ring(), fiber);
  RingPtr ring = fm.target();
  if (!ring->standard_graded()) fail(ErrorCode::NotStandardGraded, "j-multiplicity needs a standard graded ring");
  std::vector<Poly> j;
  for (const auto& g : fm(ideal))
    if (!g.is_zero()) j.push_back(g);
  const auto m = irrelevant(ring);
  const std::size_t dim = ring->num_x();
  if (j.empty()) {
    res.lengths.assign(k_max, 0);
    res.limit = limit_estimate(res.lengths, dim - 1);
    return res;
  }
  res.primary = hilbert_series(ring, j).dimension() == 0;
  std::vector<std::int64_t> samuel;
  auto cur = ideal_power(j, 1);
  if (res.primary) samuel.push_back(to_int(hilbert_series(ring, cur).length()));
  for (unsigned n = 1; n <= k_max; ++n) {
    auto next = ideal_product(cur, j);
    auto torsion = ideal_intersection(ideal_saturation(next, m), cur);
    HilbertSeries hs = hilbert_difference(hilbert_series(ring, next), hilbert_series(ring, torsion));
    res.lengths.push_back(to_int(hs.length()));
    if (res.primary) samuel.push_back(to_int(hilbert_series(ring, next).length()));
    cur = std::move(next);
  }
  res.limit = limit_estimate(res.lengths, dim - 1);
  res.j = res.limit.value;
  if (res.primary) {
    LimitEstimate e = limit_estimate(samuel, dim);
    res.samuel_stable = e.stable;
    res.samuel = e.value;
  }
  return res;
}

std::int64_t j_multiplicity(const std::vector<Poly>& ideal, const FiberPoint& fiber, unsigned k_max) {
  auto r = j_multiplicity_data(ideal, fiber, k_max);
  if (!r.limit.stable) fail(ErrorCode::Unstable, "j-multiplicity lengths did not settle by n = " + std::to_string(k_max));
  return r.j;
}

RatMapReport ratmap_report(const RationalMap& map, const FiberPoint& fiber, unsigned k_max, std::uint64_t seed) {
  RatMapReport rep;
  rep.fiber = fiber.label(*map.ring);
  rep.finite = generically_finite(map, fiber);
  auto jd = j_multiplicity_data(map.forms, fiber, k_max);
  rep.j = jd.j;
  if (!rep.finite) return rep;
  auto md = map_degree_data(map, fiber, k_max);
  rep.deg_image = md.deg_image;
  rep.deg_map = md.deg_map;
  rep.e_sat = md.e_sat;
  rep.stable = md.stable && jd.limit.stable;
  rep.identity_holds = md.identity_holds;
  rep.power_table = md.power_table;
  rep.oracle_deg_map = preimage_count(map, fiber, seed);
  return rep;
}

ConstancyReport constancy_report(const RationalMap& map, const SamplerSpec& spec, unsigned k_max) {
  if (!generically_finite(map, FiberPoint::generic()))
    fail(ErrorCode::GenericNotFinite, "the map is not generically finite at the generic point");
  std::mutex mu;
  std::map<std::string, RatMapReport> by_label;
  FiberQuantity q = [&](const FiberPoint& p) {
    RatMapReport r = ratmap_report(map, p, k_max, spec.seed);
    FiberTable t{{"finite", r.finite ? 1 : 0}, {"degY", r.deg_image}, {"degG", r.deg_map},
                 {"e_sat", r.e_sat}, {"j", r.j}};
    std::lock_guard<std::mutex> lock(mu);
    by_label[r.fiber] = std::move(r);
    return t;
  };
  ConstancyReport out;
  out.verdict = locally_constant_harness(q, Locus::empty(map.ring), spec);
  for (const auto& s : out.verdict.samples) out.reports.push_back(by_label[s.label]);
  return out;
}

}  // namespace fibercoh
