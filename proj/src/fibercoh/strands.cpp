#include "fibercoh/strands.hpp"

#include <unordered_map>

#include "fibercoh/error.hpp"

namespace fibercoh {

namespace {

struct BasisHash {
  std::size_t operator()(const StrandBasisElem& e) const { return MonomialHash()(e.m) * 31u + e.comp; }
};

using BasisIndex = std::unordered_map<StrandBasisElem, std::size_t, BasisHash>;

BasisIndex index_of(const std::vector<StrandBasisElem>& basis) {
  BasisIndex idx;
  idx.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
  return idx;
}

std::vector<std::vector<Poly>> transpose(const std::vector<std::vector<Poly>>& a, std::size_t ncols) {
  std::vector<std::vector<Poly>> t(ncols, std::vector<Poly>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) t[j][i] = a[i][j];
  return t;
}

}  // namespace

std::vector<StrandBasisElem> strand_basis(const FreeModule& f, const Degree& mu) {
  std::vector<StrandBasisElem> out;
  for (std::size_t c = 0; c < f.rank(); ++c)
    for (const auto& m : f.ring->monomials_of_degree(mu - f.shifts[c]))
      out.push_back(StrandBasisElem{static_cast<std::uint32_t>(c), m});
  return out;
}

std::size_t strand_dim(const FreeModule& f, const Degree& mu) {
  std::size_t n = 0;
  for (std::size_t c = 0; c < f.rank(); ++c) n += f.ring->monomials_of_degree(mu - f.shifts[c]).size();
  return n;
}

StrandMatrix strand(const GradedMatrix& phi, const Degree& mu) {
  StrandMatrix s;
  s.ring = phi.ring();
  s.degree = mu;
  s.source = strand_basis(phi.source, mu);
  s.target = strand_basis(phi.target, mu);
  BasisIndex rows = index_of(s.target);
  const Ring& ring = *s.ring;
  std::vector<std::vector<TermList>> acc(s.target.size(), std::vector<TermList>(s.source.size()));
  for (std::size_t col = 0; col < s.source.size(); ++col) {
    const auto& be = s.source[col];
    const Vec& v = phi.columns[be.comp];
    if (!v.ring()) continue;
    for (const auto& t : v.terms()) {
      Monomial prod = be.m * t.m;
      StrandBasisElem key{t.comp, ring.xy_part(prod)};
      auto it = rows.find(key);
      if (it == rows.end()) fail(ErrorCode::Inhomogeneous, "map is not homogeneous of degree zero at this strand");
      acc[it->second][col].push_back(Term{ring.z_part(prod), t.c});
    }
  }
  s.entries.assign(s.target.size(), std::vector<Poly>(s.source.size()));
  for (std::size_t i = 0; i < s.target.size(); ++i)
    for (std::size_t j = 0; j < s.source.size(); ++j) s.entries[i][j] = Poly(s.ring, std::move(acc[i][j]));
  return s;
}

std::vector<Poly> strand_coordinates(const Vec& v, const std::vector<StrandBasisElem>& basis) {
  const Ring& ring = *v.ring();
  BasisIndex idx = index_of(basis);
  std::vector<TermList> acc(basis.size());
  for (const auto& t : v.terms()) {
    auto it = idx.find(StrandBasisElem{t.comp, ring.xy_part(t.m)});
    if (it == idx.end()) fail(ErrorCode::Inhomogeneous, "vector is not in the requested strand");
    acc[it->second].push_back(Term{ring.z_part(t.m), t.c});
  }
  std::vector<Poly> out;
  for (auto& a : acc) out.push_back(Poly(v.ring(), std::move(a)));
  return out;
}

std::size_t presentation_strand_dim(const ModulePresentation& m, const Degree& mu) {
  const std::size_t total = strand_dim(m.target, mu);
  if (total == 0 || m.cols() == 0) return total;
  StrandMatrix s = strand(m, mu);
  return total - BaseAlgebra(m.ring()).rank(s.entries, s.cols());
}

StrandComplex strand_complex(const FreeComplex& c, const Degree& mu) {
  StrandComplex s;
  s.ring = c.ring();
  s.degree = mu;
  for (const auto& f : c.modules) s.dims.push_back(strand_dim(f, mu));
  for (const auto& m : c.maps) s.maps.push_back(strand(m, mu).entries);
  return s;
}

StrandHomologyReport strand_complex_homology(const StrandComplex& c, int i) {
  StrandHomologyReport rep;
  rep.i = i;
  rep.degree = c.degree;
  auto dim = [&](int k) -> std::size_t {
    return k >= 0 && k < static_cast<int>(c.dims.size()) ? c.dims[static_cast<std::size_t>(k)] : 0;
  };
  // phi_k : P_k -> P_{k-1}, stored in maps[k-1].
  auto has_map = [&](int k) { return k >= 1 && k <= static_cast<int>(c.maps.size()) && dim(k) > 0 && dim(k - 1) > 0; };
  const std::vector<std::vector<Poly>> empty;
  auto map = [&](int k) -> const std::vector<std::vector<Poly>>& {
    return has_map(k) ? c.maps[static_cast<std::size_t>(k - 1)] : empty;
  };
  BaseAlgebra alg(c.ring);
  rep.dim_p = dim(i);
  const std::size_t rank_i = has_map(i) ? alg.rank(map(i), dim(i)) : 0;
  const std::size_t rank_next = has_map(i + 1) ? alg.rank(map(i + 1), dim(i + 1)) : 0;

  // Direct route.
  std::size_t direct_h = 0;
  if (alg.is_field()) {
    std::vector<std::vector<Poly>> zbasis;
    if (has_map(i)) {
      zbasis = alg.nullspace(map(i), dim(i));
    } else {
      for (std::size_t k = 0; k < dim(i); ++k) {
        std::vector<Poly> e(dim(i), Poly::constant(c.ring, 0));
        e[k] = Poly::constant(c.ring, 1);
        zbasis.push_back(std::move(e));
      }
    }
    rep.dim_z = zbasis.size();
    // [Z | B] as a dim(i) x (dim Z + dim P_{i+1}) matrix.
    std::vector<std::vector<Poly>> zb(dim(i));
    for (std::size_t r = 0; r < dim(i); ++r) {
      for (const auto& z : zbasis) zb[r].push_back(z[r]);
      if (has_map(i + 1))
        for (std::size_t j = 0; j < dim(i + 1); ++j) zb[r].push_back(map(i + 1)[r][j]);
    }
    const std::size_t ncols = rep.dim_z + (has_map(i + 1) ? dim(i + 1) : 0);
    if (alg.rank(zb, ncols) != rep.dim_z)
      fail(ErrorCode::Internal, "image of the next differential is not inside the kernel");
    rep.dim_b = rank_next;
    direct_h = rep.dim_z - rep.dim_b;
  } else {
    rep.dim_z = dim(i) - rank_i;
    rep.dim_b = rank_next;
    direct_h = rep.dim_z - rep.dim_b;
  }

  // Four-term sequence 0 -> H_i -> C_i -> P_{i-1} -> C_{i-1} -> 0, with ranks
  // recomputed from the transposed matrices.
  const std::size_t rank_i_t = has_map(i) ? alg.rank(transpose(map(i), dim(i)), dim(i - 1)) : 0;
  const std::size_t rank_next_t = has_map(i + 1) ? alg.rank(transpose(map(i + 1), dim(i + 1)), dim(i)) : 0;
  const std::size_t c_i = dim(i) - rank_next_t;
  const std::size_t c_prev = dim(i - 1) - rank_i_t;
  const long four = static_cast<long>(c_i) - static_cast<long>(dim(i - 1)) + static_cast<long>(c_prev);
  rep.dim_c = c_i;
  if (four != static_cast<long>(direct_h) || direct_h > dim(i))
    fail(ErrorCode::Internal, "strand homology mismatch between direct and four-term computations");
  rep.dim_h = direct_h;
  return rep;
}

StrandHomologyReport strand_homology(const FreeComplex& c, int i, const Degree& mu) {
  return strand_complex_homology(strand_complex(c, mu), i);
}

StrandHomologyReport strand_homology(const FreeComplex& c, int i, const Degree& mu, const FiberPoint& fiber) {
  FiberMap fm(c.ring(), fiber);
  return strand_homology(fm(c), i, mu);
}

ExactnessVerdict fiber_exactness_check(const FreeComplex& p, const FiberPoint& fiber, const std::vector<Degree>& window,
                                       int s) {
  ExactnessVerdict v;
  FiberMap fm(p.ring(), fiber);
  FreeComplex pf = fm(p);
  for (int i = 0; i <= s; ++i) {
    ModulePresentation h = fm(homology_module(p, i));
    for (const auto& mu : window) {
      ExactnessViolation e;
      e.i = i;
      e.degree = mu;
      e.fiber_homology = strand_homology(pf, i, mu).dim_h;
      e.homology_fiber = presentation_strand_dim(h, mu);
      v.checked.push_back(e);
      if (e.fiber_homology != e.homology_fiber) {
        v.commutes = false;
        v.violations.push_back(e);
      }
    }
  }
  return v;
}

}  // namespace fibercoh
