#include "fibercoh/specialize.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "fibercoh/error.hpp"
#include "fibercoh/strands.hpp"

namespace fibercoh {

namespace {

using Dense = std::vector<std::vector<Poly>>;

Dense dense_of(const GradedMatrix& m) {
  Dense d(m.rows(), std::vector<Poly>(m.cols(), Poly(m.ring())));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& t : m.columns[j].terms())
      d[t.comp][j] += Poly::monomial(m.ring(), t.m, t.c);
  return d;
}

GradedMatrix from_dense(const RingPtr& ring, const std::vector<Degree>& tgt, const std::vector<Degree>& src,
                        const Dense& d) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < src.size(); ++j) {
    std::vector<Poly> comps;
    for (std::size_t i = 0; i < tgt.size(); ++i) comps.push_back(d[i][j]);
    cols.push_back(Vec::from_components(ring, comps));
  }
  return GradedMatrix(FreeModule(ring, src), FreeModule(ring, tgt), std::move(cols));
}

bool is_unit(const Ring& ring, const Poly& p) {
  if (p.is_zero()) return false;
  if (p.is_constant()) return true;
  return ring.base_is_field() && p.is_base_element();
}

Poly unit_inverse(const RingPtr& ring, const Poly& p) {
  if (p.is_constant()) return Poly::constant(ring, ring->field().inv(p.constant_coeff()));
  return BaseAlgebra(ring).inverse(p);
}

std::vector<std::vector<unsigned>> exponent_vectors(std::size_t n, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur(n, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (n == 0) return;
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
    cur[i] = 0;
  };
  if (n == 0) {
    if (k == 0) out.push_back({});
    return out;
  }
  rec(0, k);
  return out;
}

std::size_t index_in(const std::map<std::vector<unsigned>, std::size_t>& idx, const std::vector<unsigned>& e) {
  auto it = idx.find(e);
  if (it == idx.end()) fail(ErrorCode::Internal, "symmetric power basis lookup failed");
  return it->second;
}

void require_domain(const Ring& ring) {
  if (!ring.base_is_domain()) fail(ErrorCode::BaseNotDomain, "the base must be a domain");
}

}  // namespace

Poly transport(const Poly& p, const RingPtr& to) {
  const Ring& from = *p.ring();
  std::vector<std::optional<std::size_t>> map(from.nvars());
  for (std::size_t i = 0; i < from.nvars(); ++i) map[i] = to->index_of(from.var_name(i));
  TermList out;
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (t.m.exp[i] == 0) continue;
      if (!map[i]) fail(ErrorCode::Internal, "variable " + from.var_name(i) + " missing from target ring");
      m.exp[*map[i]] = t.m.exp[i];
    }
    out.push_back(Term{m, t.c});
  }
  return Poly(to, std::move(out));
}

std::string fresh_variable_name(const Ring& ring, const std::string& stem, std::set<std::string>& used) {
  for (int i = 0;; ++i) {
    std::string n = i == 0 && stem == "T" ? stem : stem + std::to_string(i);
    if (!ring.index_of(n) && !used.count(n)) {
      used.insert(n);
      return n;
    }
  }
}

ModulePresentation trim_presentation(const ModulePresentation& m) {
  m.validate();
  RingPtr ring = m.ring();
  Dense d = dense_of(m);
  std::vector<Degree> tgt = m.target.shifts, src = m.source.shifts;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < tgt.size() && !changed; ++a) {
      for (std::size_t b = 0; b < src.size() && !changed; ++b) {
        if (!is_unit(*ring, d[a][b])) continue;
        Poly uinv = unit_inverse(ring, d[a][b]);
        Dense nd;
        for (std::size_t i = 0; i < tgt.size(); ++i) {
          if (i == a) continue;
          std::vector<Poly> row;
          Poly f = d[i][b] * uinv;
          for (std::size_t j = 0; j < src.size(); ++j) {
            if (j == b) continue;
            row.push_back(f.is_zero() ? d[i][j] : d[i][j] - f * d[a][j]);
          }
          nd.push_back(std::move(row));
        }
        d = std::move(nd);
        tgt.erase(tgt.begin() + static_cast<std::ptrdiff_t>(a));
        src.erase(src.begin() + static_cast<std::ptrdiff_t>(b));
        changed = true;
      }
    }
  }
  // Drop zero relations.
  std::vector<Degree> keep_src;
  Dense kd(tgt.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < tgt.size(); ++i) zero = zero && d[i][j].is_zero();
    if (zero) continue;
    keep_src.push_back(src[j]);
    for (std::size_t i = 0; i < tgt.size(); ++i) kd[i].push_back(d[i][j]);
  }
  return from_dense(ring, tgt, keep_src, kd);
}

ModulePresentation ideal_as_module(const std::vector<Poly>& gens) {
  std::vector<Poly> g;
  for (const auto& p : gens)
    if (!p.is_zero()) g.push_back(p);
  if (g.empty()) fail(ErrorCode::ZeroModule, "the zero ideal");
  RingPtr ring = g[0].ring();
  std::vector<Degree> shifts;
  std::vector<Vec> cols;
  for (const auto& p : g) {
    auto d = p.degree();
    if (!d) fail(ErrorCode::Inhomogeneous, "ideal generator " + p.to_string() + " is not homogeneous");
    shifts.push_back(*d);
    cols.push_back(Vec::basis(ring, 0, p));
  }
  GradedMatrix phi(FreeModule(ring, shifts), FreeModule(ring, {Degree{0, 0}}), std::move(cols));
  GradedMatrix k = kernel(phi);
  return GradedMatrix(k.source, phi.source, k.columns);
}

std::int64_t beta(const ModulePresentation& m) {
  m.validate();
  RingPtr ring = m.ring();
  BaseAlgebra alg(ring);
  std::set<Degree> degs(m.target.shifts.begin(), m.target.shifts.end());
  std::optional<std::int64_t> best;
  for (const auto& d : degs) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m.target.shifts[i] == d) rows.push_back(i);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.source.shifts[j] == d) cols.push_back(j);
    std::size_t rk = 0;
    if (!cols.empty()) {
      Dense sub;
      for (auto i : rows) {
        std::vector<Poly> row;
        for (auto j : cols) row.push_back(m.entry(i, j));
        sub.push_back(std::move(row));
      }
      rk = alg.rank(sub, cols.size());
    }
    if (rows.size() > rk) {
      std::int64_t p = ring->psi(d);
      if (!best || p > *best) best = p;
    }
  }
  if (!best) fail(ErrorCode::ZeroModule, "the module is zero; it has no generators");
  return *best;
}

std::size_t generic_rank(const RingPtr& ring, const std::vector<std::vector<Poly>>& a, std::size_t ncols) {
  require_domain(*ring);
  if (ring->has_base_ideal()) fail(ErrorCode::UnsupportedBase, "generic rank over a number-field base");
  if (a.empty() || ncols == 0) return 0;
  return bareiss(ring, a, ncols).rank;
}

std::size_t module_rank(const ModulePresentation& m) {
  return m.rows() - generic_rank(m.ring(), dense_of(m), m.cols());
}

std::size_t SymAlgebra::bigraded_dim(std::int64_t j, std::int64_t k) const {
  if (k < 0) return 0;
  ModulePresentation q =
      relations.empty() ? free_module_presentation(FreeModule(ring, {Degree{0, 0}})) : quotient_presentation(relations);
  return presentation_strand_dim(q, Degree{j, k});
}

std::size_t SymAlgebra::sym_power_dim(std::int64_t k, std::int64_t d) const { return bigraded_dim(d - k * b, k); }

SymAlgebra sym_algebra(const ModulePresentation& m, std::optional<std::int64_t> b) {
  RingPtr ring = m.ring();
  if (ring->grading_rank() != 1 || ring->bigraded())
    fail(ErrorCode::InvalidArgument, "symmetric algebras are built over Z-graded rings without y variables");
  SymAlgebra s;
  s.module = trim_presentation(m);
  if (s.module.rows() == 0) fail(ErrorCode::ZeroModule, "the module is zero");
  std::int64_t top = 0;
  for (std::size_t i = 0; i < s.module.rows(); ++i)
    top = i == 0 ? s.module.target.shifts[i][0] : std::max(top, s.module.target.shifts[i][0]);
  s.b = b ? *b : beta(m);
  if (s.b < top)
    fail(ErrorCode::ShiftTooSmall, "shift b = " + std::to_string(s.b) + " is below the generator degree " +
                                       std::to_string(top));

  RingDescriptor d = ring->descriptor();
  d.grading_rank = 2;
  d.psi.clear();
  for (auto& x : d.x_vars) x.degree = Degree{x.degree[0], 0};
  d.y_vars.clear();
  std::set<std::string> used;
  for (std::size_t j = 0; j < s.module.rows(); ++j) {
    std::string name = fresh_variable_name(*ring, "Y", used);
    s.y_names.push_back(name);
    d.y_vars.push_back({name, Degree{s.module.target.shifts[j][0] - s.b, 1}});
  }
  s.ring = Ring::make(d);
  for (std::size_t c = 0; c < s.module.cols(); ++c) {
    Poly l(s.ring);
    for (std::size_t j = 0; j < s.module.rows(); ++j) {
      Poly a = s.module.entry(j, c);
      if (a.is_zero()) continue;
      l += transport(a, s.ring) * Poly::variable(s.ring, *s.ring->index_of(s.y_names[j]));
    }
    if (!l.is_zero()) s.relations.push_back(l);
  }
  return s;
}

SymFree sym_free(const FreeModule& f, unsigned k) {
  SymFree s;
  s.basis = exponent_vectors(f.rank(), k);
  std::vector<Degree> shifts;
  for (const auto& e : s.basis) {
    Degree d{0, 0};
    for (std::size_t i = 0; i < e.size(); ++i) d = d + scale(f.shifts[i], e[i]);
    shifts.push_back(d);
  }
  s.module = FreeModule(f.ring, shifts);
  return s;
}

ModulePresentation sym_power_presentation(const ModulePresentation& m, unsigned k) {
  m.validate();
  RingPtr ring = m.ring();
  SymFree top = sym_free(m.target, k);
  std::map<std::vector<unsigned>, std::size_t> idx;
  for (std::size_t i = 0; i < top.basis.size(); ++i) idx[top.basis[i]] = i;
  std::vector<Vec> cols;
  if (k > 0) {
    SymFree low = sym_free(m.target, k - 1);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      for (const auto& u : low.basis) {
        Vec v(ring);
        for (std::size_t j = 0; j < m.rows(); ++j) {
          Poly a = m.entry(j, c);
          if (a.is_zero()) continue;
          auto e = u;
          e[j] += 1;
          v = v + Vec::basis(ring, static_cast<std::uint32_t>(index_in(idx, e)), a);
        }
        if (!v.is_zero()) cols.push_back(std::move(v));
      }
    }
  }
  return GradedMatrix::from_columns(top.module, std::move(cols));
}

std::vector<Vec> PowersBundle::power_generators(unsigned k) const {
  RingPtr ring = target.ring;
  SymFree sf = sym_free(target, k);
  std::map<std::vector<unsigned>, std::size_t> idx;
  for (std::size_t i = 0; i < sf.basis.size(); ++i) idx[sf.basis[i]] = i;
  const std::size_t n = target.rank();
  std::vector<Vec> out;
  for (const auto& choice : exponent_vectors(embedding.cols(), k)) {
    std::map<std::vector<unsigned>, Poly> acc;
    acc.emplace(std::vector<unsigned>(n, 0), Poly::constant(ring, 1));
    for (std::size_t j = 0; j < choice.size(); ++j) {
      for (unsigned rep = 0; rep < choice[j]; ++rep) {
        std::map<std::vector<unsigned>, Poly> next;
        for (const auto& [e, c] : acc) {
          for (std::size_t i = 0; i < n; ++i) {
            Poly p = embedding.entry(i, j);
            if (p.is_zero()) continue;
            auto e2 = e;
            e2[i] += 1;
            auto it = next.find(e2);
            if (it == next.end())
              next.emplace(e2, c * p);
            else
              it->second += c * p;
          }
        }
        acc = std::move(next);
      }
    }
    Vec v(ring);
    for (const auto& [e, c] : acc)
      if (!c.is_zero()) v = v + Vec::basis(ring, static_cast<std::uint32_t>(index_in(idx, e)), c);
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return out;
}

FreeModule PowersBundle::power_ambient(unsigned k) const { return sym_free(target, k).module; }

std::size_t PowersBundle::power_dim(unsigned k, const Degree& d) const {
  auto gens = power_generators(k);
  if (gens.empty()) return 0;
  GradedMatrix g = GradedMatrix::from_columns(power_ambient(k), gens);
  StrandMatrix s = strand(g, d);
  if (s.rows() == 0 || s.cols() == 0) return 0;
  return BaseAlgebra(target.ring).rank(s.entries, s.cols());
}

PowersBundle powers_of_ideal(const std::vector<Poly>& gens) {
  PowersBundle p;
  p.module = ideal_as_module(gens);
  p.is_ideal = true;
  for (const auto& g : gens)
    if (!g.is_zero()) p.ideal.push_back(g);
  RingPtr ring = p.ideal[0].ring();
  p.rank = 1;
  p.target = FreeModule(ring, {Degree{0, 0}});
  std::vector<Vec> cols;
  for (const auto& g : p.ideal) cols.push_back(Vec::basis(ring, 0, g));
  p.embedding = GradedMatrix(p.module.target, p.target, std::move(cols));
  p.b = beta(p.module);
  return p;
}

PowersBundle powers_of_module(const ModulePresentation& m, EmbeddingChoice choice, std::uint64_t seed) {
  m.validate();
  RingPtr ring = m.ring();
  require_domain(*ring);
  PowersBundle p;
  p.module = m;
  p.rank = module_rank(m);
  if (p.rank == 0) fail(ErrorCode::NoRank, "the module is torsion; it has no positive rank");

  std::vector<Degree> dual_tgt, dual_src;
  for (const auto& s : m.target.shifts) dual_tgt.push_back(-s);
  for (const auto& s : m.source.shifts) dual_src.push_back(-s);
  GradedMatrix phit = m.transpose(dual_src, dual_tgt);
  GradedMatrix dual = kernel(phit);  // columns: functionals on F_0

  auto rank_of = [&](const std::vector<Vec>& rows) {
    Dense d;
    for (const auto& r : rows) d.push_back(r.components(m.rows()));
    return generic_rank(ring, d, m.rows());
  };

  std::vector<Vec> picked;
  std::vector<Degree> nus;
  for (std::size_t c = 0; c < dual.cols() && picked.size() < p.rank; ++c) {
    auto trial = picked;
    trial.push_back(dual.columns[c]);
    if (rank_of(trial) > picked.size()) {
      picked = std::move(trial);
      nus.push_back(dual.source.shifts[c]);
    }
  }
  if (picked.size() < p.rank) fail(ErrorCode::Internal, "dual module has too few independent functionals");

  if (choice == EmbeddingChoice::Randomized) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int attempt = 0; attempt < 20; ++attempt) {
      std::vector<Vec> mixed;
      for (std::size_t i = 0; i < picked.size(); ++i) {
        Vec v(ring);
        for (std::size_t c = 0; c < dual.cols(); ++c) {
          if (dual.source.shifts[c] != nus[i]) continue;
          int a = coef(rng);
          if (a != 0) v = v + dual.columns[c].scaled(Poly::constant(ring, a));
        }
        mixed.push_back(std::move(v));
      }
      if (rank_of(mixed) == p.rank) {
        picked = std::move(mixed);
        break;
      }
    }
  }

  std::vector<Degree> fshifts;
  for (const auto& nu : nus) fshifts.push_back(-nu);
  p.target = FreeModule(ring, fshifts);
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < m.rows(); ++j) {
    std::vector<Poly> comps;
    for (const auto& psi : picked) comps.push_back(psi.component(static_cast<std::uint32_t>(j)));
    cols.push_back(Vec::from_components(ring, comps));
  }
  p.embedding = GradedMatrix(m.target, p.target, std::move(cols));
  p.embedding.validate();
  p.b = beta(m);
  return p;
}

std::vector<Poly> rees_ideal(const std::vector<Poly>& gens, RingPtr* rees_ring) {
  std::vector<Poly> g;
  for (const auto& p : gens)
    if (!p.is_zero()) g.push_back(p);
  if (g.empty()) fail(ErrorCode::ZeroModule, "the zero ideal");
  RingPtr ring = g[0].ring();
  if (ring->grading_rank() != 1 || ring->bigraded())
    fail(ErrorCode::InvalidArgument, "Rees ideals are built over Z-graded rings without y variables");
  if (ring->has_base_ideal()) fail(ErrorCode::UnsupportedBase, "Rees ideals over quotient bases");

  RingDescriptor d = ring->descriptor();
  std::set<std::string> used;
  std::vector<std::string> ys;
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto deg = g[i].degree();
    if (!deg) fail(ErrorCode::Inhomogeneous, "ideal generator " + g[i].to_string() + " is not homogeneous");
    ys.push_back(fresh_variable_name(*ring, "Y", used));
    d.x_vars.push_back({ys.back(), *deg});
  }
  RingPtr out = Ring::make(d);
  // T is a weightless base parameter so Y_i - g_i T stays homogeneous.
  RingDescriptor dt = d;
  std::string tname = fresh_variable_name(*ring, "T", used);
  dt.base_vars.push_back(tname);
  if (dt.base_kind == BaseKind::Field) dt.base_kind = BaseKind::Polynomial;
  RingPtr big = Ring::make(dt);
  Poly t = Poly::variable(big, *big->index_of(tname));
  std::vector<Poly> rel;
  for (std::size_t i = 0; i < g.size(); ++i)
    rel.push_back(Poly::variable(big, *big->index_of(ys[i])) - transport(g[i], big) * t);
  auto elim = eliminate(rel, {*big->index_of(tname)});
  std::vector<Poly> res;
  for (const auto& p : elim) res.push_back(transport(p, out));
  if (rees_ring) *rees_ring = out;
  return res;
}

std::size_t SpecializedPower::dim(const Degree& d) const {
  if (generators.empty()) return 0;
  GradedMatrix g = GradedMatrix::from_columns(ambient, generators);
  StrandMatrix s = strand(g, d);
  if (s.rows() == 0 || s.cols() == 0) return 0;
  return BaseAlgebra(ring).rank(s.entries, s.cols());
}

SpecializedPower specialize_power(const PowersBundle& bundle, unsigned k, const FiberPoint& fiber) {
  FiberMap fm(bundle.target.ring, fiber);
  SpecializedPower s;
  s.ring = fm.target();
  s.ambient = fm(bundle.power_ambient(k));
  if (bundle.is_ideal) {
    // Reduce I^k over A first, then specialize.
    for (const auto& p : ideal_groebner_basis(ideal_power(bundle.ideal, k))) {
      Poly q = fm(p);
      if (q.is_zero()) continue;
      s.ideal.push_back(q);
      s.generators.push_back(Vec::basis(s.ring, 0, q));
    }
    return s;
  }
  for (const auto& v : bundle.power_generators(k)) {
    Vec w = fm(v);
    if (!w.is_zero()) s.generators.push_back(std::move(w));
  }
  return s;
}

std::vector<Poly> specialized_ideal_power(const PowersBundle& bundle, unsigned k, const FiberPoint& fiber) {
  if (!bundle.is_ideal) fail(ErrorCode::InvalidArgument, "specialized ideal powers need an ideal");
  FiberMap fm(bundle.target.ring, fiber);
  std::vector<Poly> g;
  for (const auto& p : fm(bundle.ideal))
    if (!p.is_zero()) g.push_back(p);
  if (g.empty()) return {};
  return ideal_power(g, k);
}

AgreementCertificate generic_agreement_certificate(const PowersBundle& bundle, unsigned max_power,
                                                   const std::vector<Degree>& window,
                                                   const std::vector<FiberPoint>& fibers) {
  RingPtr ring = bundle.target.ring;
  require_domain(*ring);
  if (ring->has_base_ideal()) fail(ErrorCode::UnsupportedBase, "agreement certificates over a number-field base");
  AgreementCertificate cert;
  Poly a = Poly::constant(ring, 1);
  std::map<std::pair<unsigned, Degree>, std::size_t> generic;
  for (unsigned k = 1; k <= max_power; ++k) {
    auto gens = bundle.power_generators(k);
    GradedMatrix g = gens.empty() ? GradedMatrix::zero(FreeModule(ring, {}), bundle.power_ambient(k))
                                  : GradedMatrix::from_columns(bundle.power_ambient(k), gens);
    for (const auto& d : window) {
      StrandMatrix s = strand(g, d);
      std::size_t r = 0;
      if (s.rows() > 0 && s.cols() > 0) {
        BareissResult br = bareiss(ring, s.entries, s.cols());
        r = br.rank;
        if (r > 0 && !br.minor.is_constant()) a = a * br.minor;
      }
      generic[{k, d}] = r;
    }
  }
  cert.a = ring->num_z() == 0 || a.is_constant() ? Poly::constant(ring, 1) : squarefree_part(a);
  for (const auto& f : fibers) {
    AgreementCheck c;
    c.fiber = f.label(*ring);
    if (!f.is_generic()) c.in_open = !FiberMap(ring, f)(cert.a).is_zero();
    for (unsigned k = 1; k <= max_power && c.agrees; ++k) {
      SpecializedPower sp = specialize_power(bundle, k, f);
      for (const auto& d : window)
        if (sp.dim(d) != generic[{k, d}]) {
          c.agrees = false;
          break;
        }
    }
    if (c.in_open && !c.agrees) {
      cert.counterexamples.push_back(c.fiber);
      cert.verified = false;
    }
    cert.checks.push_back(c);
  }
  return cert;
}

}  // namespace fibercoh
