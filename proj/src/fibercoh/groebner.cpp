#include "fibercoh/groebner.hpp"

#include <algorithm>
#include <numeric>

#include "fibercoh/error.hpp"

namespace fibercoh {

using detail::GElem;

ModuleOrder::ModuleOrder(RingPtr ring, const std::vector<Degree>& shifts, std::vector<int> blocks)
    : ring_(std::move(ring)), blocks_(std::move(blocks)) {
  for (const auto& s : shifts) shift_weight_.push_back(ring_->order_weight(s));
  if (!blocks_.empty() && blocks_.size() != shifts.size())
    fail(ErrorCode::Internal, "block list does not match the module rank");
}

int ModuleOrder::compare(std::uint32_t ca, const Monomial& a, std::uint32_t cb, const Monomial& b) const {
  if (!blocks_.empty() && blocks_[ca] != blocks_[cb]) return blocks_[ca] > blocks_[cb] ? 1 : -1;
  if (ca == cb && a == b) return 0;
  const auto& rows = ring_->order_rows();
  const std::size_t dr = ring_->degree_row();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::int64_t da = ring_->row_dot(r, a), db = ring_->row_dot(r, b);
    if (r == dr) {
      da += shift_weight_[ca];
      db += shift_weight_[cb];
    }
    if (da != db) return da > db ? 1 : -1;
  }
  if (ca != cb) return ca < cb ? 1 : -1;
  return ring_->compare(a, b);
}

std::int64_t ModuleOrder::degree(std::uint32_t c, const Monomial& m) const {
  return ring_->row_dot(ring_->degree_row(), m) + shift_weight_[c];
}

namespace detail {

std::uint64_t monomial_signature(const Monomial& m) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    const auto e = m.exp[i];
    if (e >= 1) s |= std::uint64_t{1} << (4 * i);
    if (e >= 2) s |= std::uint64_t{1} << (4 * i + 1);
    if (e >= 4) s |= std::uint64_t{1} << (4 * i + 2);
    if (e >= 8) s |= std::uint64_t{1} << (4 * i + 3);
  }
  return s;
}

}  // namespace detail

namespace {

void sort_desc(const ModuleOrder& ord, std::vector<VTerm>& t) {
  std::sort(t.begin(), t.end(),
            [&ord](const VTerm& a, const VTerm& b) { return ord.compare(a.comp, a.m, b.comp, b.m) > 0; });
}

// a[a_start:] - c * m * b, both sorted descending.
std::vector<VTerm> vsub_mul(const ModuleOrder& ord, const std::vector<VTerm>& a, std::size_t a_start,
                            const mpq_class& c, const Monomial& m, const std::vector<VTerm>& b) {
  const CoeffField& f = ord.ring()->field();
  std::vector<VTerm> out;
  out.reserve(a.size() - a_start + b.size());
  std::size_t i = a_start, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    Monomial bm = m * b[j].m;
    int cmp = i == a.size() ? -1 : ord.compare(a[i].comp, a[i].m, b[j].comp, bm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(VTerm{b[j].comp, bm, f.neg(f.mul(c, b[j].c))});
      ++j;
    } else {
      mpq_class v = f.sub(a[i].c, f.mul(c, b[j].c));
      if (!CoeffField::is_zero(v)) out.push_back(VTerm{b[j].comp, bm, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

const GElem* find_reducer(const std::vector<GElem>& elems, const std::vector<std::vector<std::size_t>>& by_comp,
                          const std::vector<bool>* active, const VTerm& t) {
  if (t.comp >= by_comp.size()) return nullptr;
  const std::uint64_t sig = detail::monomial_signature(t.m);
  for (std::size_t idx : by_comp[t.comp]) {
    if (active && !(*active)[idx]) continue;
    const GElem& g = elems[idx];
    if ((g.sig & ~sig) != 0) continue;
    if (g.terms.front().m.divides(t.m)) return &g;
  }
  return nullptr;
}

std::vector<VTerm> reduce(const ModuleOrder& ord, const std::vector<GElem>& elems,
                          const std::vector<std::vector<std::size_t>>& by_comp, const std::vector<bool>* active,
                          std::vector<VTerm> h) {
  const CoeffField& f = ord.ring()->field();
  std::vector<VTerm> result;
  std::size_t start = 0;
  while (start < h.size()) {
    const GElem* div = find_reducer(elems, by_comp, active, h[start]);
    if (div == nullptr) {
      result.push_back(std::move(h[start]));
      ++start;
      continue;
    }
    const VTerm& lead = div->terms.front();
    mpq_class c = f.div(h[start].c, lead.c);
    Monomial q = h[start].m / lead.m;
    h = vsub_mul(ord, h, start, c, q, div->terms);
    start = 0;
  }
  return result;
}

void make_monic(const CoeffField& f, std::vector<VTerm>& t) {
  if (t.empty() || CoeffField::is_one(t.front().c)) return;
  mpq_class inv = f.inv(t.front().c);
  for (auto& x : t) x.c = f.mul(x.c, inv);
}

std::vector<VTerm> times_monomial(const std::vector<VTerm>& t, const Monomial& m) {
  std::vector<VTerm> out = t;
  for (auto& x : out) x.m = x.m * m;
  return out;
}

void check_ambient(const Vec& v, const FreeModule& ambient) {
  if (!v.ring()) return;
  if (!v.ring()->same_variables(*ambient.ring) || v.ring()->order_rows() != ambient.ring->order_rows())
    fail(ErrorCode::AmbientMismatch, "element does not live in the ambient module's ring");
  if (v.support_bound() > ambient.rank()) fail(ErrorCode::AmbientMismatch, "element has more components than the ambient module");
}

std::vector<Vec> nonzero(const std::vector<Vec>& v) {
  std::vector<Vec> out;
  for (const auto& x : v)
    if (x.ring() && !x.is_zero()) out.push_back(x);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// GroebnerBuilder

GroebnerBuilder::GroebnerBuilder(const FreeModule& ambient, std::vector<int> blocks)
    : ambient_(ambient), work_ring_(ambient.ring->lifted()), order_(work_ring_, ambient.shifts, std::move(blocks)),
      use_product_criterion_(ambient.rank() == 1), by_comp_(ambient.rank()) {
  if (ambient.ring->has_base_ideal()) {
    for (std::uint32_t c = 0; c < ambient.rank(); ++c) {
      for (const auto& j : ambient.ring->base_ideal_gb()) {
        std::vector<VTerm> t;
        for (const auto& term : j) t.push_back(VTerm{c, term.m, term.c});
        sort_desc(order_, t);
        insert(std::move(t));
      }
    }
  }
}

std::vector<VTerm> GroebnerBuilder::lift(const Vec& v) const {
  check_ambient(v, ambient_);
  std::vector<VTerm> t = v.terms();
  sort_desc(order_, t);
  return t;
}

Monomial GroebnerBuilder::pair_lcm(std::size_t i, std::size_t j) const {
  return lcm(elems_[i].terms.front().m, elems_[j].terms.front().m);
}

void GroebnerBuilder::insert(std::vector<VTerm> terms) {
  make_monic(work_ring_->field(), terms);
  const std::size_t h = elems_.size();
  const std::uint32_t c = terms.front().comp;
  const Monomial lm_h = terms.front().m;
  elems_.push_back(GElem{std::move(terms), detail::monomial_signature(lm_h)});
  active_.push_back(true);

  // Gebauer-Moeller update.
  std::vector<std::size_t> cand;
  for (std::size_t g : by_comp_[c])
    if (active_[g]) cand.push_back(g);
  std::vector<Monomial> lcms;
  for (std::size_t g : cand) lcms.push_back(lcm(lm_h, elems_[g].terms.front().m));
  auto disjoint = [&](std::size_t k) {
    return use_product_criterion_ && lm_h.coprime(elems_[cand[k]].terms.front().m);
  };
  std::vector<bool> kept(cand.size(), false);
  for (std::size_t k = 0; k < cand.size(); ++k) {
    bool dominated = false;
    if (!disjoint(k)) {
      for (std::size_t l = 0; l < cand.size() && !dominated; ++l) {
        if (l == k) continue;
        if (l < k && !kept[l]) continue;
        if (lcms[l].divides(lcms[k])) dominated = true;
      }
    }
    kept[k] = !dominated;
  }
  std::set<Pair> fresh;
  for (std::size_t k = 0; k < cand.size(); ++k)
    if (kept[k] && !disjoint(k)) fresh.insert(Pair{order_.degree(c, lcms[k]), cand[k], h});

  for (auto it = pairs_.begin(); it != pairs_.end();) {
    const std::size_t i = it->i, j = it->j;
    if (elems_[i].terms.front().comp != c) {
      ++it;
      continue;
    }
    Monomial lij = pair_lcm(i, j);
    if (lm_h.divides(lij) && lcm(elems_[i].terms.front().m, lm_h) != lij &&
        lcm(elems_[j].terms.front().m, lm_h) != lij) {
      it = pairs_.erase(it);
    } else {
      ++it;
    }
  }
  pairs_.insert(fresh.begin(), fresh.end());

  for (std::size_t g : by_comp_[c])
    if (active_[g] && lm_h.divides(elems_[g].terms.front().m)) active_[g] = false;
  by_comp_[c].push_back(h);
}

bool GroebnerBuilder::add(const Vec& v) {
  std::vector<VTerm> t = reduce(order_, elems_, by_comp_, nullptr, lift(v));
  if (t.empty()) return false;
  insert(std::move(t));
  return true;
}

void GroebnerBuilder::process(const Pair& p) {
  const GElem& f = elems_[p.i];
  const GElem& g = elems_[p.j];
  Monomial l = pair_lcm(p.i, p.j);
  std::vector<VTerm> s = vsub_mul(order_, times_monomial(f.terms, l / f.terms.front().m), 0, mpq_class(1),
                                  l / g.terms.front().m, g.terms);
  s = reduce(order_, elems_, by_comp_, nullptr, std::move(s));
  if (!s.empty()) insert(std::move(s));
}

void GroebnerBuilder::complete_to_degree(std::int64_t d) {
  while (!pairs_.empty() && pairs_.begin()->degree <= d) {
    Pair p = *pairs_.begin();
    pairs_.erase(pairs_.begin());
    process(p);
  }
}

void GroebnerBuilder::complete() {
  while (!pairs_.empty()) {
    Pair p = *pairs_.begin();
    pairs_.erase(pairs_.begin());
    process(p);
  }
}

Vec GroebnerBuilder::normal_form(const Vec& v) const {
  return Vec(ambient_.ring, reduce(order_, elems_, by_comp_, nullptr, lift(v)));
}

GroebnerBasis GroebnerBuilder::result() {
  complete();
  GroebnerBasis gb;
  gb.ambient_ = ambient_;
  gb.order_ = order_;
  std::vector<std::size_t> act;
  for (std::size_t i = 0; i < elems_.size(); ++i)
    if (active_[i]) act.push_back(i);
  for (std::size_t i : act) {
    const GElem& e = elems_[i];
    std::vector<VTerm> tail(e.terms.begin() + 1, e.terms.end());
    tail = reduce(order_, elems_, by_comp_, &active_, std::move(tail));
    std::vector<VTerm> t;
    t.reserve(tail.size() + 1);
    t.push_back(e.terms.front());
    for (auto& x : tail) t.push_back(std::move(x));
    gb.work_.push_back(GElem{std::move(t), e.sig});
  }
  std::sort(gb.work_.begin(), gb.work_.end(), [this](const GElem& a, const GElem& b) {
    const VTerm& x = a.terms.front();
    const VTerm& y = b.terms.front();
    return order_.compare(x.comp, x.m, y.comp, y.m) < 0;
  });
  gb.by_comp_.assign(ambient_.rank(), {});
  for (std::size_t i = 0; i < gb.work_.size(); ++i) gb.by_comp_[gb.work_[i].terms.front().comp].push_back(i);
  for (const auto& e : gb.work_) {
    Vec v(ambient_.ring, e.terms);
    if (!v.is_zero()) gb.elements_.push_back(std::move(v));
  }
  return gb;
}

// ---------------------------------------------------------------------------
// GroebnerBasis

Vec GroebnerBasis::normal_form(const Vec& v) const {
  check_ambient(v, ambient_);
  std::vector<VTerm> t = v.terms();
  sort_desc(order_, t);
  return Vec(ambient_.ring, reduce(order_, work_, by_comp_, nullptr, std::move(t)));
}

Poly GroebnerBasis::normal_form(const Poly& p) const {
  if (ambient_.rank() != 1) fail(ErrorCode::AmbientMismatch, "polynomial normal form needs a rank-1 ambient");
  return normal_form(Vec::basis(ambient_.ring, 0, p)).component(0);
}

bool GroebnerBasis::is_everything() const {
  std::vector<bool> unit(ambient_.rank(), false);
  for (const auto& e : elements_)
    if (e.terms().size() == 1 && e.terms()[0].m.is_one()) unit[e.terms()[0].comp] = true;
  return std::all_of(unit.begin(), unit.end(), [](bool b) { return b; });
}

std::vector<Poly> GroebnerBasis::polys() const {
  if (ambient_.rank() != 1) fail(ErrorCode::AmbientMismatch, "polys() needs a rank-1 ambient");
  std::vector<Poly> out;
  for (const auto& e : elements_) out.push_back(e.component(0));
  return out;
}

std::vector<std::pair<std::uint32_t, Monomial>> GroebnerBasis::leading_terms() const {
  std::vector<std::pair<std::uint32_t, Monomial>> out;
  for (const auto& e : work_) out.emplace_back(e.terms.front().comp, e.terms.front().m);
  return out;
}

bool GroebnerBasis::operator==(const GroebnerBasis& o) const {
  if (ambient_.rank() != o.ambient_.rank() || elements_.size() != o.elements_.size()) return false;
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (!(elements_[i] == o.elements_[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Free functions

GroebnerBasis groebner_basis_unchecked(const std::vector<Vec>& gens, const FreeModule& ambient) {
  GroebnerBuilder b(ambient);
  for (const auto& g : gens)
    if (g.ring() && !g.is_zero()) b.add(g);
  return b.result();
}

GroebnerBasis groebner_basis(const std::vector<Vec>& gens, const FreeModule& ambient) {
  for (const auto& g : gens) {
    if (!g.ring() || g.is_zero()) continue;
    check_ambient(g, ambient);
    if (!g.degree(ambient.shifts)) fail(ErrorCode::Inhomogeneous, "generator " + g.to_string() + " is not homogeneous");
  }
  return groebner_basis_unchecked(gens, ambient);
}

GroebnerBasis groebner_basis(const std::vector<Poly>& ideal_gens) {
  if (ideal_gens.empty()) fail(ErrorCode::InvalidArgument, "ideal needs a ring; pass at least one generator");
  RingPtr ring = ideal_gens[0].ring();
  std::vector<Vec> v;
  for (const auto& p : ideal_gens) v.push_back(Vec::basis(ring, 0, p));
  return groebner_basis(v, FreeModule(ring, {Degree{0, 0}}));
}

std::vector<Poly> ideal_groebner_basis(const std::vector<Poly>& gens) {
  if (gens.empty()) return {};
  RingPtr ring = gens[0].ring();
  std::vector<Vec> v;
  for (const auto& p : gens) v.push_back(Vec::basis(ring, 0, p));
  return groebner_basis_unchecked(v, FreeModule(ring, {Degree{0, 0}})).polys();
}

bool satisfies_buchberger_criterion(const std::vector<Vec>& gens, const FreeModule& ambient) {
  RingPtr work = ambient.ring->lifted();
  ModuleOrder ord(work, ambient.shifts);
  std::vector<GElem> elems;
  std::vector<std::vector<std::size_t>> by_comp(ambient.rank());
  auto push = [&](std::vector<VTerm> t) {
    sort_desc(ord, t);
    make_monic(work->field(), t);
    by_comp[t.front().comp].push_back(elems.size());
    elems.push_back(GElem{std::move(t), 0});
    elems.back().sig = detail::monomial_signature(elems.back().terms.front().m);
  };
  for (const auto& g : gens) {
    if (!g.ring() || g.is_zero()) continue;
    check_ambient(g, ambient);
    push(g.terms());
  }
  if (ambient.ring->has_base_ideal())
    for (std::uint32_t c = 0; c < ambient.rank(); ++c)
      for (const auto& j : ambient.ring->base_ideal_gb()) {
        std::vector<VTerm> t;
        for (const auto& term : j) t.push_back(VTerm{c, term.m, term.c});
        push(std::move(t));
      }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      const auto& f = elems[i].terms;
      const auto& g = elems[j].terms;
      if (f.front().comp != g.front().comp) continue;
      Monomial l = lcm(f.front().m, g.front().m);
      auto s = vsub_mul(ord, times_monomial(f, l / f.front().m), 0, mpq_class(1), l / g.front().m, g);
      if (!reduce(ord, elems, by_comp, nullptr, std::move(s)).empty()) return false;
    }
  }
  return true;
}

std::vector<Vec> prune_generators(const std::vector<Vec>& gens, const FreeModule& ambient) {
  std::vector<Vec> nz = nonzero(gens);
  std::vector<std::optional<std::int64_t>> weight;
  for (const auto& g : nz) {
    check_ambient(g, ambient);
    auto d = g.degree(ambient.shifts);
    weight.push_back(d ? std::optional<std::int64_t>(ambient.ring->order_weight(*d)) : std::nullopt);
  }
  std::vector<std::size_t> idx(nz.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (!weight[a] || !weight[b]) return weight[a].has_value() && !weight[b].has_value();
    return *weight[a] < *weight[b];
  });
  GroebnerBuilder builder(ambient);
  std::vector<std::size_t> keep;
  for (std::size_t k : idx) {
    if (weight[k]) builder.complete_to_degree(*weight[k]);
    else builder.complete();
    if (builder.add(nz[k])) keep.push_back(k);
  }
  // Preserve the caller's relative order among survivors.
  std::sort(keep.begin(), keep.end());
  std::vector<Vec> out;
  for (std::size_t k : keep) out.push_back(nz[k]);
  return out;
}

namespace {

// Generators of ker(phi) before pruning.
std::vector<Vec> raw_kernel(const GradedMatrix& phi) {
  const std::size_t m = phi.rows(), n = phi.cols();
  RingPtr ring = phi.ring();
  std::vector<Degree> shifts = phi.target.shifts;
  shifts.insert(shifts.end(), phi.source.shifts.begin(), phi.source.shifts.end());
  std::vector<int> blocks(m, 1);
  blocks.resize(m + n, 0);
  FreeModule aug(ring, shifts);
  GroebnerBuilder b(aug, blocks);
  for (std::size_t j = 0; j < n; ++j) {
    Vec col = phi.columns[j].ring() ? phi.columns[j] : Vec(ring);
    b.add(col + Vec::basis(ring, static_cast<std::uint32_t>(m + j), Poly::constant(ring, 1)));
  }
  GroebnerBasis gb = b.result();
  std::vector<Vec> out;
  for (const auto& e : gb.elements()) {
    if (e.terms().front().comp < m) continue;
    out.push_back(e.shifted_components(-static_cast<std::int64_t>(m)));
  }
  return out;
}

}  // namespace

GradedMatrix kernel(const GradedMatrix& phi) {
  if (!phi.ring()) fail(ErrorCode::ShapeMismatch, "matrix without a ring");
  if (phi.columns.size() != phi.source.rank()) fail(ErrorCode::ShapeMismatch, "column count differs from source rank");
  for (const auto& c : phi.columns)
    if (c.ring() && c.support_bound() > phi.rows()) fail(ErrorCode::ShapeMismatch, "column longer than target rank");
  std::vector<Vec> gens = prune_generators(raw_kernel(phi), phi.source);
  return GradedMatrix::from_columns(phi.source, std::move(gens));
}

GroebnerBasis kernel_basis(const GradedMatrix& phi) {
  return groebner_basis_unchecked(kernel(phi).columns, phi.source);
}

GradedMatrix syzygies(const std::vector<Vec>& gens, const FreeModule& ambient) {
  for (const auto& g : gens)
    if (g.ring() && !g.is_zero() && !g.degree(ambient.shifts))
      fail(ErrorCode::Inhomogeneous, "generator " + g.to_string() + " is not homogeneous");
  return kernel(GradedMatrix::from_columns(ambient, gens));
}

ModulePresentation subquotient(const std::vector<Vec>& k, const std::vector<Vec>& b, const FreeModule& ambient) {
  std::vector<Vec> kk = nonzero(k), bb = nonzero(b);
  std::vector<Vec> all = kk;
  all.insert(all.end(), bb.begin(), bb.end());
  GradedMatrix joint = GradedMatrix::from_columns(ambient, all);
  FreeModule gens(ambient.ring, std::vector<Degree>(joint.source.shifts.begin(),
                                                     joint.source.shifts.begin() + static_cast<std::ptrdiff_t>(kk.size())));
  std::vector<Vec> rel;
  for (const auto& s : raw_kernel(joint)) {
    std::vector<VTerm> t;
    for (const auto& x : s.terms())
      if (x.comp < kk.size()) t.push_back(x);
    Vec v(ambient.ring, std::move(t));
    if (!v.is_zero()) rel.push_back(std::move(v));
  }
  rel = prune_generators(rel, gens);
  return GradedMatrix::from_columns(gens, std::move(rel));
}

ModulePresentation image_presentation(const GradedMatrix& phi) { return subquotient(phi.columns, {}, phi.target); }

ModulePresentation prune_relations(const ModulePresentation& m) {
  return GradedMatrix::from_columns(m.target, prune_generators(m.columns, m.target));
}

namespace {

FreeModule rank_one(const RingPtr& ring) { return FreeModule(ring, {Degree{0, 0}}); }

std::vector<Vec> as_vecs(const std::vector<Poly>& p) {
  std::vector<Vec> out;
  for (const auto& f : p)
    if (f.ring() && !f.is_zero()) out.push_back(Vec::basis(f.ring(), 0, f));
  return out;
}

std::vector<Poly> as_polys(const std::vector<Vec>& v) {
  std::vector<Poly> out;
  for (const auto& x : v) out.push_back(x.component(0));
  return out;
}

RingPtr ring_of(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  RingPtr r;
  for (const auto& p : a)
    if (p.ring()) r = p.ring();
  for (const auto& p : b) {
    if (!p.ring()) continue;
    if (r) check_same_ring(*r, *p.ring());
    else r = p.ring();
  }
  return r;
}

std::vector<Poly> prune_ideal(const std::vector<Poly>& i) {
  auto v = as_vecs(i);
  if (v.empty()) return {};
  return as_polys(prune_generators(v, rank_one(v[0].ring())));
}

std::vector<Poly> colon_element(const std::vector<Poly>& i, const Poly& g) {
  RingPtr ring = g.ring();
  if (g.is_zero()) return {Poly::constant(ring, 1)};
  std::vector<Vec> cols{Vec::basis(ring, 0, g)};
  for (const auto& v : as_vecs(i)) cols.push_back(v);
  GradedMatrix phi(FreeModule(ring, std::vector<Degree>(cols.size())), rank_one(ring), cols);
  std::vector<Poly> out;
  for (const auto& s : raw_kernel(phi)) {
    Poly a = s.component(0);
    if (!a.is_zero()) out.push_back(std::move(a));
  }
  return prune_ideal(out);
}

}  // namespace

std::vector<Poly> ideal_colon(const std::vector<Poly>& i, const std::vector<Poly>& j) {
  RingPtr ring = ring_of(i, j);
  if (!ring) fail(ErrorCode::InvalidArgument, "colon of empty generator lists");
  std::vector<Poly> acc;
  bool first = true;
  for (const auto& g : j) {
    if (g.is_zero()) continue;
    auto c = colon_element(i, g);
    acc = first ? c : ideal_intersection(acc, c);
    first = false;
  }
  if (first) return {Poly::constant(ring, 1)};
  return acc;
}

std::vector<Poly> ideal_saturation(const std::vector<Poly>& i, const std::vector<Poly>& j) {
  std::vector<Poly> cur = prune_ideal(i);
  for (;;) {
    std::vector<Poly> next = ideal_colon(cur, j);
    if (ideal_equal(next, cur)) return cur;
    cur = std::move(next);
  }
}

std::vector<Poly> ideal_intersection(const std::vector<Poly>& i, const std::vector<Poly>& j) {
  RingPtr ring = ring_of(i, j);
  auto vi = as_vecs(i), vj = as_vecs(j);
  if (vi.empty() || vj.empty()) return {};
  std::vector<Vec> cols = vi;
  cols.insert(cols.end(), vj.begin(), vj.end());
  GradedMatrix phi(FreeModule(ring, std::vector<Degree>(cols.size())), rank_one(ring), cols);
  std::vector<Poly> out;
  for (const auto& s : raw_kernel(phi)) {
    Poly a(ring);
    for (std::size_t k = 0; k < vi.size(); ++k) a += s.component(static_cast<std::uint32_t>(k)) * vi[k].component(0);
    if (!a.is_zero()) out.push_back(std::move(a));
  }
  return prune_ideal(out);
}

std::vector<Poly> ideal_product(const std::vector<Poly>& i, const std::vector<Poly>& j) {
  std::vector<Poly> out;
  for (const auto& a : i)
    for (const auto& b : j) {
      Poly p = a * b;
      if (!p.is_zero()) out.push_back(std::move(p));
    }
  return prune_ideal(out);
}

std::vector<Poly> ideal_power(const std::vector<Poly>& i, unsigned k) {
  RingPtr ring = ring_of(i, {});
  if (!ring) return {};
  std::vector<Poly> acc{Poly::constant(ring, 1)};
  for (unsigned e = 0; e < k; ++e) acc = ideal_product(acc, i);
  return acc;
}

bool ideal_equal(const std::vector<Poly>& i, const std::vector<Poly>& j) {
  RingPtr ring = ring_of(i, j);
  if (!ring) return true;
  auto a = groebner_basis_unchecked(as_vecs(i), rank_one(ring));
  auto b = groebner_basis_unchecked(as_vecs(j), rank_one(ring));
  return a == b;
}

bool ideal_contains(const std::vector<Poly>& i, const std::vector<Poly>& j) {
  RingPtr ring = ring_of(i, j);
  if (!ring) return true;
  auto a = groebner_basis_unchecked(as_vecs(i), rank_one(ring));
  for (const auto& p : j)
    if (!p.is_zero() && !a.contains(p)) return false;
  return true;
}

bool order_eliminates(const Ring& ring, const std::vector<std::size_t>& vars) {
  if (vars.empty()) return true;
  std::vector<bool> in(ring.nvars(), false);
  for (auto v : vars) in[v] = true;
  std::vector<bool> covered(ring.nvars(), false);
  for (const auto& row : ring.order_rows()) {
    bool ok = true;
    for (std::size_t u = 0; u < ring.nvars(); ++u) {
      if (row[u] < 0 || (row[u] != 0 && !in[u])) ok = false;
    }
    if (!ok) return false;
    for (std::size_t u = 0; u < ring.nvars(); ++u)
      if (row[u] > 0) covered[u] = true;
    bool all = true;
    for (auto v : vars)
      if (!covered[v]) all = false;
    if (all) return true;
  }
  return false;
}

std::vector<Poly> eliminate_with_basis(const GroebnerBasis& gb, const std::vector<std::size_t>& vars) {
  if (!order_eliminates(*gb.ring(), vars))
    fail(ErrorCode::OrderNotEliminating, "the monomial order does not eliminate the requested variables");
  std::vector<Poly> out;
  for (const auto& p : gb.polys()) {
    bool involves = false;
    for (const auto& t : p.terms())
      for (auto v : vars)
        if (t.m.exp[v] != 0) involves = true;
    if (!involves) out.push_back(p);
  }
  return out;
}

std::vector<Poly> eliminate(const std::vector<Poly>& i, const std::vector<std::size_t>& vars) {
  RingPtr ring = ring_of(i, {});
  if (!ring) return {};
  if (vars.empty()) return groebner_basis_unchecked(as_vecs(i), rank_one(ring)).polys();
  RingPtr er = ring->with_elimination(vars);
  auto gb = groebner_basis_unchecked(as_vecs(to_ring(i, er)), rank_one(er));
  return to_ring(eliminate_with_basis(gb, vars), ring);
}

std::vector<Vec> torsion_submodule(const ModulePresentation& m) {
  RingPtr ring = m.ring();
  if (!ring->base_is_domain())
    fail(ErrorCode::BaseNotDomain, "torsion is only computed over a domain base; evaluate at a component first");
  std::vector<Degree> dual_target, dual_source;
  for (const auto& s : m.source.shifts) dual_target.push_back(-s);
  for (const auto& s : m.target.shifts) dual_source.push_back(-s);
  GradedMatrix phit = m.transpose(dual_target, dual_source);
  GradedMatrix dual_gens = kernel(phit);  // columns generate M* inside F0*
  const std::size_t s = dual_gens.cols();
  std::vector<Degree> ev_target;
  for (const auto& d : dual_gens.source.shifts) ev_target.push_back(-d);
  std::vector<Vec> ev_cols;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Poly> comps;
    for (std::size_t k = 0; k < s; ++k) comps.push_back(dual_gens.entry(i, k));
    ev_cols.push_back(Vec::from_components(ring, comps));
  }
  GradedMatrix ev(m.target, FreeModule(ring, ev_target), ev_cols);
  GradedMatrix tau = kernel(ev);
  GroebnerBasis rel = groebner_basis_unchecked(m.columns, m.target);
  std::vector<Vec> out;
  for (const auto& v : tau.columns)
    if (!rel.contains(v)) out.push_back(v);
  return out;
}

ModulePresentation torsion_free_quotient(const ModulePresentation& m) {
  std::vector<Vec> cols = m.columns;
  for (auto& v : torsion_submodule(m)) cols.push_back(std::move(v));
  return GradedMatrix::from_columns(m.target, prune_generators(cols, m.target));
}

}  // namespace fibercoh
