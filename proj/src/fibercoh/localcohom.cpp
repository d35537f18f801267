#include "fibercoh/localcohom.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

#include "fibercoh/error.hpp"

namespace fibercoh {

namespace {

Monomial all_x(const Ring& ring) {
  Monomial m;
  for (auto i : ring.x_indices()) m.exp[i] = 1;
  return m;
}

struct BasisHash {
  std::size_t operator()(const StrandBasisElem& e) const { return MonomialHash()(e.m) * 31u + e.comp; }
};

std::vector<StrandBasisElem> top_basis(const FreeModule& f, const Degree& mu) {
  std::vector<StrandBasisElem> out;
  for (std::size_t c = 0; c < f.rank(); ++c)
    for (const auto& m : top_cohomology_basis(*f.ring, mu - f.shifts[c]))
      out.push_back(StrandBasisElem{static_cast<std::uint32_t>(c), m});
  return out;
}

bool is_zero_presentation(const ModulePresentation& m) {
  if (m.rows() == 0) return true;
  for (std::size_t c = 0; c < m.rows(); ++c)
    if (presentation_strand_dim(m, m.target.shifts[c]) > 0) return false;
  return true;
}

FreeComplex resolve_at(const ModulePresentation& m, const FiberPoint& fiber, ModulePresentation* evaluated = nullptr) {
  FiberMap fm(m.ring(), fiber);
  ModulePresentation mf = fm(m);
  FreeComplex res = free_resolution(mf);
  if (!res.complete) fail(ErrorCode::TooShort, "resolution did not terminate within the default length");
  if (evaluated) *evaluated = std::move(mf);
  return res;
}

// Smallest psi-degree of a nonzero element (nullopt for the zero module).
std::optional<std::int64_t> initial_psi_degree(const ModulePresentation& m) {
  std::optional<std::int64_t> best;
  const Ring& ring = *m.ring();
  std::set<Degree> seen;
  for (const auto& s : m.target.shifts) {
    if (!seen.insert(s).second) continue;
    const auto p = ring.psi(s);
    if (best && p >= *best) continue;
    if (presentation_strand_dim(m, s) > 0) best = p;
  }
  return best;
}

void require_no_y(const Ring& ring, const char* what) {
  if (ring.bigraded()) fail(ErrorCode::InvalidArgument, std::string(what) + " needs a ring without y variables");
}

}  // namespace

std::vector<Monomial> top_cohomology_basis(const Ring& ring, const Degree& nu) {
  std::vector<Monomial> out;
  if (ring.num_x() == 0) return out;
  const Monomial ones = all_x(ring);
  const Degree delta = ring.delta();
  if (!ring.bigraded()) {
    for (const auto& xm : ring.x_monomials_of_degree(-nu - delta)) out.push_back(xm * ones);
    return out;
  }
  for (const auto& ym : ring.y_monomials_of_count(static_cast<int>(nu[1]))) {
    const Degree xdeg = nu - ring.degree_of(ym);
    for (const auto& xm : ring.x_monomials_of_degree(-xdeg - delta)) out.push_back(xm * ones * ym);
  }
  return out;
}

std::size_t top_cohomology_dim(const Ring& ring, const Degree& nu) { return top_cohomology_basis(ring, nu).size(); }

StrandComplex top_cohomology_complex(const FreeComplex& c, const Degree& mu) {
  StrandComplex s;
  s.ring = c.ring();
  s.degree = mu;
  if (!s.ring) return s;
  const Ring& ring = *s.ring;
  std::vector<std::vector<StrandBasisElem>> bases;
  for (const auto& f : c.modules) {
    bases.push_back(top_basis(f, mu));
    s.dims.push_back(bases.back().size());
  }
  for (std::size_t k = 0; k < c.maps.size(); ++k) {
    const auto& src = bases[k + 1];
    const auto& tgt = bases[k];
    std::unordered_map<StrandBasisElem, std::size_t, BasisHash> rows;
    for (std::size_t i = 0; i < tgt.size(); ++i) rows.emplace(tgt[i], i);
    std::vector<std::vector<TermList>> acc(tgt.size(), std::vector<TermList>(src.size()));
    for (std::size_t col = 0; col < src.size(); ++col) {
      const Vec& v = c.maps[k].columns[src[col].comp];
      for (const auto& t : v.terms()) {
        const Monomial xy = ring.xy_part(t.m);
        Monomial e = src[col].m;
        bool survives = true;
        for (auto i : ring.x_indices()) {
          if (e.exp[i] <= xy.exp[i]) {
            survives = false;
            break;
          }
          e.exp[i] = static_cast<std::uint16_t>(e.exp[i] - xy.exp[i]);
        }
        if (!survives) continue;
        for (auto i : ring.y_indices()) e.exp[i] = static_cast<std::uint16_t>(e.exp[i] + xy.exp[i]);
        auto it = rows.find(StrandBasisElem{t.comp, e});
        if (it == rows.end()) fail(ErrorCode::Inhomogeneous, "differential is not homogeneous of degree zero");
        acc[it->second][col].push_back(Term{ring.z_part(t.m), t.c});
      }
    }
    std::vector<std::vector<Poly>> mat(tgt.size(), std::vector<Poly>(src.size()));
    for (std::size_t i = 0; i < tgt.size(); ++i)
      for (std::size_t j = 0; j < src.size(); ++j) mat[i][j] = Poly(s.ring, std::move(acc[i][j]));
    s.maps.push_back(std::move(mat));
  }
  return s;
}

const char* route_name(Route r) {
  switch (r) {
    case Route::DualComplex: return "A";
    case Route::ExtDual: return "B";
    case Route::Both: return "both";
  }
  return "?";
}

std::size_t CohomologyTable::dim(int i, const Degree& d) const {
  auto it = entries.find({i, d});
  return it == entries.end() ? 0 : it->second.dim;
}

bool CohomologyTable::operator==(const CohomologyTable& o) const {
  if (entries.size() != o.entries.size()) return false;
  for (const auto& [k, e] : entries) {
    auto it = o.entries.find(k);
    if (it == o.entries.end() || it->second.dim != e.dim) return false;
  }
  return true;
}

std::vector<Degree> degree_window(const Ring& ring, std::int64_t lo, std::int64_t hi, std::int64_t ylo,
                                  std::int64_t yhi) {
  std::vector<Degree> out;
  if (ring.grading_rank() == 1) {
    for (auto n = lo; n <= hi; ++n) out.push_back(Degree{n, 0});
    return out;
  }
  for (auto j = lo; j <= hi; ++j)
    for (auto v = ylo; v <= yhi; ++v) out.push_back(Degree{j, v});
  return out;
}

std::vector<Degree> default_cohomology_window(const ModulePresentation& m, const FiberPoint& fiber) {
  FreeComplex res = resolve_at(m, fiber);
  const Ring& ring = *res.ring();
  if (res.modules.empty() || res.modules[0].rank() == 0) return {};
  if (ring.grading_rank() == 1) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& f : res.modules)
      for (const auto& s : f.shifts) lo = std::min(lo, ring.psi(s));
    for (const auto& s : res.modules[0].shifts) hi = std::max(hi, ring.psi(s));
    return degree_window(ring, lo - ring.psi(ring.delta()), hi);
  }
  std::int64_t lo0 = std::numeric_limits<std::int64_t>::max(), lo1 = lo0;
  std::int64_t hi0 = std::numeric_limits<std::int64_t>::min(), hi1 = hi0;
  for (const auto& f : res.modules)
    for (const auto& s : f.shifts) {
      lo0 = std::min(lo0, s[0]);
      lo1 = std::min(lo1, s[1]);
    }
  for (const auto& s : res.modules[0].shifts) {
    hi0 = std::max(hi0, s[0]);
    hi1 = std::max(hi1, s[1]);
  }
  if (ring.bigraded()) return degree_window(ring, lo0 - ring.delta()[0], hi0, std::min<std::int64_t>(lo1, 0), hi1 + 1);
  return degree_window(ring, lo0 - ring.delta()[0], hi0, lo1 - ring.delta()[1], hi1);
}

CohomologyTable local_cohomology_dims_dualcomplex(const ModulePresentation& m, const std::vector<Degree>& window,
                                                  const FiberPoint& fiber) {
  CohomologyTable t;
  t.grading_rank = m.ring()->grading_rank();
  if (m.rows() == 0) return t;
  FreeComplex res = resolve_at(m, fiber);
  const int r = static_cast<int>(m.ring()->num_x());
  for (const auto& mu : window) {
    StrandComplex sc = top_cohomology_complex(res, mu);
    for (int i = 0; i <= r; ++i) {
      auto rep = strand_complex_homology(sc, r - i);
      t.entries[{i, mu}] = CohomologyEntry{i, mu, rep.dim_h, Route::DualComplex};
    }
  }
  return t;
}

CohomologyTable local_cohomology_dims_extdual(const ModulePresentation& m, const std::vector<Degree>& window,
                                              const FiberPoint& fiber) {
  require_no_y(*m.ring(), "the Ext duality route");
  CohomologyTable t;
  t.grading_rank = m.ring()->grading_rank();
  if (m.rows() == 0) return t;
  FreeComplex res = resolve_at(m, fiber);
  const int r = static_cast<int>(m.ring()->num_x());
  auto ext = ext_modules(res, -m.ring()->delta(), r);
  for (const auto& mu : window)
    for (int i = 0; i <= r; ++i)
      t.entries[{i, mu}] =
          CohomologyEntry{i, mu, presentation_strand_dim(ext[static_cast<std::size_t>(r - i)], -mu), Route::ExtDual};
  return t;
}

CohomologyTable cross_validate(const ModulePresentation& m, const std::vector<Degree>& window, const FiberPoint& fiber) {
  CohomologyTable a = local_cohomology_dims_dualcomplex(m, window, fiber);
  CohomologyTable b = local_cohomology_dims_extdual(m, window, fiber);
  for (auto& [key, e] : a.entries) {
    const std::size_t other = b.dim(key.first, key.second);
    if (other != e.dim)
      fail(ErrorCode::DualityMismatch, "H^" + std::to_string(key.first) + " in degree " +
                                           format_degree(key.second, a.grading_rank) + ": dual complex gives " +
                                           std::to_string(e.dim) + ", Ext duality gives " + std::to_string(other));
    e.route = Route::Both;
  }
  return a;
}

std::vector<Poly> annihilator(const ModulePresentation& m) {
  RingPtr ring = m.ring();
  if (m.rows() == 0) return {Poly::constant(ring, 1)};
  std::optional<std::vector<Poly>> ann;
  for (std::size_t c = 0; c < m.rows(); ++c) {
    // (im phi : e_c) = first coordinates of ker [e_c | phi].
    std::vector<Vec> cols{Vec::basis(ring, static_cast<std::uint32_t>(c), Poly::constant(ring, 1))};
    for (const auto& v : m.columns)
      if (v.ring() && !v.is_zero()) cols.push_back(v);
    GradedMatrix aug = GradedMatrix::from_columns(m.target, cols);
    GradedMatrix k = kernel(aug);
    std::vector<Poly> colon;
    for (const auto& v : k.columns) {
      Poly p = v.component(0);
      if (!p.is_zero()) colon.push_back(p);
    }
    ann = ann ? ideal_intersection(*ann, colon) : colon;
  }
  return *ann;
}

int krull_dimension(const ModulePresentation& m) {
  std::vector<Poly> ann = annihilator(m);
  const Ring& ring = *m.ring();
  std::vector<std::size_t> vars = ring.x_indices();
  vars.insert(vars.end(), ring.y_indices().begin(), ring.y_indices().end());
  if (ann.empty()) return static_cast<int>(vars.size());
  GroebnerBasis gb = groebner_basis(ann);
  if (gb.is_everything()) return -1;
  std::vector<Monomial> leads;
  for (const auto& [comp, lm] : gb.leading_terms()) {
    const Monomial xy = ring.xy_part(lm);
    if (xy.is_one()) return -1;
    leads.push_back(xy);
  }
  // Largest set of variables containing the support of no leading monomial.
  int best = 0;
  const std::size_t n = vars.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (const auto& lm : leads) {
      bool inside = true;
      for (std::size_t k = 0; k < n && inside; ++k)
        if (lm.exp[vars[k]] > 0 && !(mask & (1u << k))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

CohomologyInvariants cohomology_invariants(const ModulePresentation& m, const FiberPoint& fiber) {
  require_no_y(*m.ring(), "cohomology invariants");
  ModulePresentation mf;
  FreeComplex res = resolve_at(m, fiber, &mf);
  if (is_zero_presentation(mf)) fail(ErrorCode::ZeroModule, "module vanishes at this fiber");
  const Ring& ring = *mf.ring();
  const int r = static_cast<int>(ring.num_x());
  auto ext = ext_modules(res, -ring.delta(), r);
  CohomologyInvariants inv;
  inv.a.assign(static_cast<std::size_t>(r + 1), std::nullopt);
  for (int i = 0; i <= r; ++i) {
    auto indeg = initial_psi_degree(ext[static_cast<std::size_t>(r - i)]);
    if (!indeg) continue;
    inv.a[static_cast<std::size_t>(i)] = -*indeg;
    if (inv.depth < 0) inv.depth = i;
    inv.dim = i;
    const std::int64_t reg = -*indeg + i;
    if (!inv.regularity || reg > *inv.regularity) inv.regularity = reg;
  }
  if (inv.dim < 0) fail(ErrorCode::Internal, "nonzero module with vanishing local cohomology");
  const int kd = krull_dimension(mf);
  if (kd != inv.dim)
    fail(ErrorCode::Internal, "top local cohomology index " + std::to_string(inv.dim) +
                                  " differs from the Krull dimension " + std::to_string(kd));
  if (ring.base_is_field() && r - res.length() != inv.depth)
    fail(ErrorCode::Internal, "depth disagrees with the Auslander-Buchsbaum formula");
  if (inv.depth > inv.dim) fail(ErrorCode::Internal, "depth exceeds dimension");
  return inv;
}

std::vector<SheafCohomologyRow> sheaf_cohomology_dims(const ModulePresentation& m, std::int64_t lo, std::int64_t hi,
                                                      const FiberPoint& fiber) {
  if (!m.ring()->standard_graded()) fail(ErrorCode::NotStandardGraded, "sheaf cohomology needs a standard graded ring");
  const int r = static_cast<int>(m.ring()->num_x());
  std::vector<Degree> window = degree_window(*m.ring(), lo, hi);
  CohomologyTable t = local_cohomology_dims_dualcomplex(m, window, fiber);
  FiberMap fm(m.ring(), fiber);
  ModulePresentation mf = fm(m);
  std::vector<SheafCohomologyRow> out;
  for (const auto& d : window) {
    SheafCohomologyRow row;
    row.n = d[0];
    row.h.assign(static_cast<std::size_t>(std::max(r, 1)), 0);
    const long h0 = static_cast<long>(presentation_strand_dim(mf, d)) - static_cast<long>(t.dim(0, d)) +
                    static_cast<long>(t.dim(1, d));
    if (h0 < 0) fail(ErrorCode::Internal, "negative global sections");
    row.h[0] = static_cast<std::size_t>(h0);
    for (int i = 1; i < r; ++i) row.h[static_cast<std::size_t>(i)] = t.dim(i + 1, d);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace fibercoh
