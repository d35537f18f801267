#include "fibercoh/loci.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <random>
#include <set>
#include <thread>

#include "fibercoh/error.hpp"
#include "fibercoh/linalg.hpp"

namespace fibercoh {

namespace {

constexpr std::size_t kMinorCap = 2000;

bool is_unit_ideal(const std::vector<Poly>& gens) {
  for (const auto& g : gens)
    if (!g.is_zero() && g.is_constant()) return true;
  return !gens.empty() && groebner_basis(gens).is_everything();
}

std::vector<Poly> nonzero(const std::vector<Poly>& gens) {
  std::vector<Poly> out;
  for (const auto& g : gens)
    if (!g.is_zero()) out.push_back(g);
  return out;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// Generators of the ideal of rho-minors (a single certificate minor when there are too many).
std::vector<Poly> minors_ideal(const RingPtr& ring, const std::vector<std::vector<Poly>>& a, std::size_t ncols,
                               std::size_t rho, bool& exact) {
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j)
      if (!a[i][j].is_zero()) {
        rows.push_back(i);
        break;
      }
  for (std::size_t j = 0; j < ncols; ++j)
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!a[i][j].is_zero()) {
        cols.push_back(j);
        break;
      }
  exact = true;
  if (binomial(rows.size(), rho) * binomial(cols.size(), rho) > static_cast<double>(kMinorCap)) {
    exact = false;
    return {bareiss(ring, a, ncols).minor};
  }
  std::vector<Poly> out;
  bool unit = false;
  for_each_subset(rows.size(), rho, [&](const std::vector<std::size_t>& rs) {
    for_each_subset(cols.size(), rho, [&](const std::vector<std::size_t>& cs) {
      std::vector<std::vector<Poly>> sub(rho, std::vector<Poly>(rho));
      for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < rho; ++j) sub[i][j] = a[rows[rs[i]]][cols[cs[j]]];
      auto b = bareiss(ring, sub, rho);
      if (b.rank == rho) {
        if (b.minor.is_constant()) unit = true;
        out.push_back(b.minor);
      }
      return !unit;
    });
    return !unit;
  });
  if (unit) return {Poly::constant(ring, 1)};
  return ideal_groebner_basis(out);
}

Locus nonfree_over_components(const ModulePresentation& m, const std::vector<Degree>& window) {
  Locus l = Locus::empty(m.ring());
  l.provenance.push_back("every local ring of A at a component is a field");
  for (const auto& comp : base_components(*m.ring())) {
    FiberMap fm(m.ring(), comp.point);
    ModulePresentation mf = fm(m);
    std::string dims;
    for (const auto& mu : window) {
      if (!dims.empty()) dims += ",";
      dims += std::to_string(presentation_strand_dim(mf, mu));
    }
    l.provenance.push_back("component " + comp.label + ": strand ranks [" + dims + "]");
  }
  return l;
}

std::vector<Degree> hull(const Ring& ring, const std::vector<Degree>& shifts, int slack) {
  if (shifts.empty()) return {};
  if (ring.grading_rank() == 1) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& s : shifts) {
      lo = std::min(lo, ring.psi(s));
      hi = std::max(hi, ring.psi(s));
    }
    return degree_window(ring, lo - slack, hi + slack);
  }
  Degree lo = shifts[0], hi = shifts[0];
  for (const auto& s : shifts)
    for (int k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], s[k]);
      hi[k] = std::max(hi[k], s[k]);
    }
  return degree_window(ring, lo[0] - slack, hi[0] + slack, lo[1] - slack, hi[1] + slack);
}

}  // namespace

Poly poly_gcd(const Poly& p, const Poly& q) {
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  auto l = ideal_intersection({p}, {q});
  if (l.size() != 1) fail(ErrorCode::Internal, "intersection of principal ideals is not principal");
  auto g = (p * q).divide_exact(l[0]);
  if (!g) fail(ErrorCode::Internal, "gcd computation failed");
  return g->monic();
}

Poly squarefree_part(const Poly& p) {
  Poly g = p;
  for (auto v : p.ring()->z_indices()) {
    Poly d = p.derivative(v);
    if (!d.is_zero()) g = poly_gcd(g, d);
  }
  auto q = p.divide_exact(g);
  if (!q) fail(ErrorCode::Internal, "squarefree part computation failed");
  return q->monic();
}

Locus Locus::empty(const RingPtr& ring) {
  Locus l;
  l.ring = ring;
  l.generators = {Poly::constant(ring, 1)};
  return l;
}

Locus Locus::everything(const RingPtr& ring) {
  Locus l;
  l.ring = ring;
  return l;
}

bool Locus::is_empty() const { return is_unit_ideal(generators); }

bool Locus::is_everything() const { return nonzero(generators).empty(); }

bool Locus::contains(const FiberPoint& p) const {
  if (p.is_generic()) return is_everything();
  FiberMap fm(ring, p);
  for (const auto& g : generators)
    if (!fm(g).is_zero()) return false;
  return true;
}

Locus locus_union(const Locus& a, const Locus& b) {
  if (a.is_empty()) {
    Locus out = b;
    out.provenance.insert(out.provenance.begin(), a.provenance.begin(), a.provenance.end());
    return out;
  }
  if (b.is_empty()) {
    Locus out = a;
    out.provenance.insert(out.provenance.end(), b.provenance.begin(), b.provenance.end());
    return out;
  }
  Locus out;
  out.ring = a.ring;
  out.provenance = a.provenance;
  out.provenance.insert(out.provenance.end(), b.provenance.begin(), b.provenance.end());
  if (a.is_everything() || b.is_everything()) {
    out.radical = true;
    return out;
  }
  out.generators = ideal_intersection(nonzero(a.generators), nonzero(b.generators));
  out.radical = a.radical && b.radical;
  return out;
}

Locus radicalize(const Locus& l) {
  Locus out = l;
  std::vector<Poly> gens = nonzero(l.generators);
  if (gens.empty()) {
    out.generators.clear();
    out.radical = true;
    return out;
  }
  if (is_unit_ideal(gens)) {
    out.generators = {Poly::constant(l.ring, 1)};
    out.radical = true;
    return out;
  }
  const Ring& ring = *l.ring;
  gens = ideal_groebner_basis(gens);
  out.generators = gens;
  if (ring.field().characteristic() != 0 || ring.has_base_ideal()) {
    out.radical = l.radical;
    return out;
  }
  if (gens.size() == 1) {
    out.generators = {squarefree_part(gens[0])};
    out.radical = true;
    return out;
  }
  // Zero-dimensional: every base variable has a pure power among the leading monomials.
  std::vector<std::size_t> zs = ring.z_indices();
  bool zero_dim = true;
  for (auto v : zs) {
    bool found = false;
    for (const auto& g : gens) {
      const Monomial& lm = g.leading_monomial();
      bool pure = lm.exp[v] > 0;
      for (auto w : zs)
        if (w != v && lm.exp[w] > 0) pure = false;
      if (pure) found = true;
    }
    if (!found) zero_dim = false;
  }
  if (!zero_dim) {
    out.radical = false;
    return out;
  }
  std::vector<Poly> ext = gens;
  for (auto v : zs) {
    std::vector<std::size_t> others;
    for (auto w : zs)
      if (w != v) others.push_back(w);
    auto elim = nonzero(eliminate(gens, others));
    if (elim.empty()) continue;
    ext.push_back(squarefree_part(elim[0]));
  }
  out.generators = ideal_groebner_basis(ext);
  out.radical = true;
  return out;
}

std::vector<Degree> complex_window(const FreeComplex& c, int i, int slack) {
  std::vector<Degree> shifts;
  for (int k = i - 1; k <= i + 1; ++k)
    for (const auto& s : c.module(k).shifts) shifts.push_back(s);
  if (!c.ring()) return {};
  return hull(*c.ring(), shifts, slack);
}

std::vector<Degree> presentation_window(const ModulePresentation& m, int slack) {
  std::vector<Degree> shifts = m.target.shifts;
  shifts.insert(shifts.end(), m.source.shifts.begin(), m.source.shifts.end());
  return hull(*m.ring(), shifts, slack);
}

std::vector<BaseComponent> base_components(const Ring& ring) {
  if (ring.base_kind() != BaseKind::Quotient || ring.base_is_field()) {
    BaseComponent c;
    c.label = "(0)";
    c.point = ring.num_z() == 0 ? FiberPoint::rational({}) : FiberPoint::generic();
    return {c};
  }
  if (ring.num_z() != 1 || ring.base_ideal_gb().size() != 1)
    fail(ErrorCode::UnsupportedBase, "components are only computed for a univariate defining ideal");
  const std::size_t z = ring.z_indices()[0];
  UPoly u;
  for (const auto& t : ring.base_ideal_gb()[0]) {
    const std::size_t e = t.m.exp[z];
    if (u.size() <= e) u.resize(e + 1);
    u[e] += t.c;
  }
  upoly_trim(u);
  if (!upoly_squarefree(u)) fail(ErrorCode::InvalidArgument, "the defining ideal of the base is not radical");
  auto roots = upoly_rational_roots(u);
  if (roots.size() + 1 != u.size())
    fail(ErrorCode::UnsupportedBase, "the defining polynomial of the base does not split over QQ");
  std::sort(roots.begin(), roots.end());
  std::vector<BaseComponent> out;
  for (const auto& a : roots) {
    BaseComponent c;
    const std::string name = ring.var_name(z);
    if (a == 0)
      c.label = "(" + name + ")";
    else if (a > 0)
      c.label = "(" + name + " - " + a.get_str() + ")";
    else
      c.label = "(" + name + " + " + mpq_class(-a).get_str() + ")";
    c.point = FiberPoint::rational({a});
    out.push_back(std::move(c));
  }
  return out;
}

Locus nonfree_locus(const ModulePresentation& m, const std::vector<Degree>& window) {
  RingPtr ring = m.ring();
  if (ring->num_z() == 0 || ring->base_is_field()) {
    Locus l = Locus::empty(ring);
    l.provenance.push_back("base is a field");
    return l;
  }
  if (ring->base_kind() == BaseKind::Quotient) return nonfree_over_components(m, window);
  Locus acc = Locus::empty(ring);
  BaseAlgebra alg(ring);
  for (const auto& mu : window) {
    StrandMatrix s = strand(m, mu);
    if (s.rows() == 0 || s.cols() == 0) continue;
    auto b = alg.rank_with_certificate(s.entries, s.cols());
    if (b.rank == 0) continue;
    bool exact = true;
    Locus l;
    l.ring = ring;
    l.generators = minors_ideal(ring, s.entries, s.cols(), b.rank, exact);
    l.radical = false;
    if (l.is_empty()) continue;
    l.provenance.push_back("rank " + std::to_string(b.rank) + " minors of the degree " +
                           format_degree(mu, ring->grading_rank()) + " strand" +
                           (exact ? "" : " (single certificate minor, minor count over cap)"));
    acc = locus_union(acc, l);
  }
  acc = radicalize(acc);
  if (acc.is_everything()) fail(ErrorCode::Internal, "non-free locus contains the generic point");
  return acc;
}

Locus duality_exclusion_locus(const ModulePresentation& m, int slack) {
  RingPtr ring = m.ring();
  const int r = static_cast<int>(ring->num_x());
  Locus acc = nonfree_locus(m, presentation_window(m, slack));
  auto tag = [](Locus l, const std::string& what) {
    for (auto& p : l.provenance) p = what + ": " + p;
    return l;
  };
  acc = tag(acc, "T_M");
  FreeComplex res = free_resolution(m, std::max(r + 1, default_resolution_length(*ring)));
  ModulePresentation d = d_top_cokernel(res, r);
  if (d.rows() > 0) acc = locus_union(acc, tag(nonfree_locus(d, presentation_window(d, slack)), "T_D"));
  auto ext = ext_modules(res, Degree{0, 0}, r);
  for (int j = 0; j <= r; ++j) {
    const auto& e = ext[static_cast<std::size_t>(j)];
    if (e.rows() == 0) continue;
    acc = locus_union(acc, tag(nonfree_locus(e, presentation_window(e, slack)), "T_Ext^" + std::to_string(j)));
  }
  return radicalize(acc);
}

Certificate dense_open_certificate(const Locus& l) {
  Certificate cert;
  const Ring& ring = *l.ring;
  auto comps = base_components(ring);
  const bool empty = l.is_empty();
  if (comps.size() == 1 && comps[0].label == "(0)") {
    if (empty) {
      cert.global = Poly::constant(l.ring, 1);
    } else {
      if (l.is_everything()) fail(ErrorCode::LocusIsEverything, "the locus is all of Spec(A)");
      for (const auto& g : l.generators)
        if (!g.is_zero()) {
          cert.global = g.monic();
          break;
        }
    }
    cert.components.push_back({"(0)", cert.global});
    return cert;
  }
  bool all = true, any = false;
  for (const auto& c : comps) {
    ComponentCertificate cc;
    cc.component = c.label;
    if (empty) {
      cc.a = Poly::constant(l.ring, 1);
    } else if (!l.contains(c.point)) {
      FiberMap fm(l.ring, c.point);
      for (const auto& g : l.generators)
        if (!fm(g).is_zero()) {
          cc.a = g;
          break;
        }
    }
    if (cc.a)
      any = true;
    else
      all = false;
    cert.components.push_back(std::move(cc));
  }
  if (!any) fail(ErrorCode::LocusIsEverything, "the locus contains every component of Spec(A)");
  if (all) cert.global = Poly::constant(l.ring, 1);
  return cert;
}

std::vector<FiberPoint> sample_fibers(const Ring& ring, const SamplerSpec& spec) {
  std::vector<FiberPoint> out;
  auto take = [&](const FiberPoint& p) {
    if (!spec.accept || spec.accept(p)) out.push_back(p);
  };
  if (ring.num_z() == 0) {
    take(FiberPoint::rational({}));
    return out;
  }
  if (ring.base_kind() == BaseKind::Quotient) {
    for (const auto& c : base_components(ring)) take(c.point);
    for (const auto& p : spec.extra) take(p);
    return out;
  }
  if (spec.include_generic) take(FiberPoint::generic());
  const std::size_t m = ring.num_z();
  std::set<std::vector<std::string>> seen;
  auto add = [&](const std::vector<mpq_class>& v) {
    FiberPoint p = FiberPoint::rational(v);
    if (seen.insert(p.values).second) take(p);
  };
  const int g = spec.grid_radius;
  if (g >= 0) {
    std::vector<mpq_class> cur(m);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == m) {
        add(cur);
        return;
      }
      for (int a = -g; a <= g; ++a) {
        cur[k] = a;
        rec(k + 1);
      }
    };
    rec(0);
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> dist(-spec.random_range, spec.random_range);
  for (int k = 0; k < spec.random_count; ++k) {
    std::vector<mpq_class> v(m);
    for (auto& x : v) x = dist(rng);
    add(v);
  }
  for (const auto& p : spec.extra) take(p);
  return out;
}

HarnessVerdict locally_constant_harness(const FiberQuantity& q, const Locus& l, const SamplerSpec& spec) {
  HarnessVerdict v;
  v.seed = spec.seed;
  const Ring& ring = *l.ring;
  std::vector<FiberPoint> points = sample_fibers(ring, spec);
  std::vector<FiberTable> tables(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      try {
        tables[k] = q(points[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(points.size())));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<BaseComponent> comps;
  if (ring.base_kind() == BaseKind::Quotient && !ring.base_is_field()) comps = base_components(ring);
  for (std::size_t k = 0; k < points.size(); ++k) {
    FiberSample s;
    s.point = points[k];
    s.label = points[k].label(ring);
    s.in_locus = l.contains(points[k]);
    s.table = std::move(tables[k]);
    s.component = "(0)";
    for (const auto& c : comps)
      if (c.point.values == points[k].values) s.component = c.label;
    v.samples.push_back(std::move(s));
  }
  // References: the generic point when sampled, otherwise the first sample outside the locus.
  for (const auto& s : v.samples)
    if (s.point.is_generic()) v.reference[s.component] = s.table;
  for (const auto& s : v.samples)
    if (!s.in_locus && !v.reference.count(s.component)) v.reference[s.component] = s.table;
  for (std::size_t k = 0; k < v.samples.size(); ++k) {
    auto& s = v.samples[k];
    auto it = v.reference.find(s.component);
    s.matches_reference = it != v.reference.end() && it->second == s.table;
    if (it == v.reference.end()) continue;
    if (!s.matches_reference) (s.in_locus ? v.jumps : v.violations).push_back(k);
  }
  for (const auto& s : v.samples)
    if (s.table != v.samples[0].table) v.constant = false;
  v.locally_constant = v.violations.empty();
  return v;
}

}  // namespace fibercoh
