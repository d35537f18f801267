#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fibercoh/poly.hpp"

namespace fibercoh {

// Univariate polynomials over QQ, coefficients from low to high degree, no
// trailing zeros (the zero polynomial is empty).
using UPoly = std::vector<mpq_class>;

void upoly_trim(UPoly& a);
UPoly upoly_add(const UPoly& a, const UPoly& b);
UPoly upoly_sub(const UPoly& a, const UPoly& b);
UPoly upoly_mul(const UPoly& a, const UPoly& b);
// Quotient and remainder; b must be nonzero.
std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b);
UPoly upoly_gcd(UPoly a, UPoly b);  // monic
// Number of distinct rational roots and the roots themselves (via the rational root test).
std::vector<mpq_class> upoly_rational_roots(const UPoly& a);
// Squarefree factorization test: gcd(a, a') == 1.
bool upoly_squarefree(const UPoly& a);

// Field of coefficients QQ or GF(p).
class PrimeField {
 public:
  using Elem = mpq_class;
  explicit PrimeField(CoeffField f) : f_(std::move(f)) {}
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  Elem add(const Elem& a, const Elem& b) const { return f_.add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return f_.sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return f_.mul(a, b); }
  Elem inv(const Elem& a) const { return f_.inv(a); }

 private:
  CoeffField f_;
};

// QQ[w]/(m) for an irreducible monic m; elements are reduced UPolys.
class ExtField {
 public:
  using Elem = UPoly;
  explicit ExtField(UPoly minpoly);
  const UPoly& minpoly() const { return m_; }
  std::size_t degree() const { return m_.size() - 1; }
  Elem zero() const { return {}; }
  Elem one() const { return {mpq_class(1)}; }
  bool is_zero(const Elem& a) const { return a.empty(); }
  Elem reduce(const UPoly& a) const { return upoly_divmod(a, m_).second; }
  Elem add(const Elem& a, const Elem& b) const { return upoly_add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return upoly_sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return reduce(upoly_mul(a, b)); }
  Elem inv(const Elem& a) const;

 private:
  UPoly m_;
};

template <class K>
using DenseMatrix = std::vector<std::vector<typename K::Elem>>;

// In-place row echelon form; returns pivot columns (one per nonzero row, in order).
template <class K>
std::vector<std::size_t> row_echelon(const K& k, DenseMatrix<K>& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t nrows = a.size();
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t p = r;
    while (p < nrows && k.is_zero(a[p][c])) ++p;
    if (p == nrows) continue;
    std::swap(a[p], a[r]);
    auto inv = k.inv(a[r][c]);
    for (std::size_t j = c; j < ncols; ++j)
      if (!k.is_zero(a[r][j])) a[r][j] = k.mul(a[r][j], inv);
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r || k.is_zero(a[i][c])) continue;
      auto f = a[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (!k.is_zero(a[r][j])) a[i][j] = k.sub(a[i][j], k.mul(f, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
std::size_t matrix_rank(const K& k, DenseMatrix<K> a, std::size_t ncols) {
  return row_echelon(k, a, ncols).size();
}

// Basis of the right nullspace {v : a v = 0}, as column vectors.
template <class K>
std::vector<std::vector<typename K::Elem>> nullspace(const K& k, DenseMatrix<K> a, std::size_t ncols) {
  auto pivots = row_echelon(k, a, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename K::Elem>> out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<typename K::Elem> v(ncols, k.zero());
    v[f] = k.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = k.sub(k.zero(), a[r][f]);
    out.push_back(std::move(v));
  }
  return out;
}

// Result of fraction-free elimination over the base polynomial ring: the rank
// over the fraction field and the leading minor on the pivot rows/columns,
// which is nonzero exactly where that minor stays invertible.
struct BareissResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows, pivot_cols;
  Poly minor;  // constant 1 when rank is 0
};

BareissResult bareiss(const RingPtr& ring, std::vector<std::vector<Poly>> a, std::size_t ncols);

// Linear algebra over the residue field of a ring whose base is a field
// (QQ, GF(p) or a number field QQ[w]/(m)) or over the fraction field of k[z].
class BaseAlgebra {
 public:
  explicit BaseAlgebra(RingPtr ring);

  bool is_field() const { return kind_ != Kind::FractionField; }
  std::size_t rank(const std::vector<std::vector<Poly>>& a, std::size_t ncols) const;
  BareissResult rank_with_certificate(const std::vector<std::vector<Poly>>& a, std::size_t ncols) const;
  // Nullspace basis; field bases only.
  std::vector<std::vector<Poly>> nullspace(const std::vector<std::vector<Poly>>& a, std::size_t ncols) const;
  // Inverse of a nonzero base element; field bases only.
  Poly inverse(const Poly& u) const;

 private:
  enum class Kind { Prime, Extension, FractionField };
  UPoly to_upoly(const Poly& p) const;
  Poly from_upoly(const UPoly& u) const;

  RingPtr ring_;
  Kind kind_;
  std::optional<PrimeField> prime_;
  std::optional<ExtField> ext_;
  std::size_t ext_var_ = 0;
};

}  // namespace fibercoh
