#include "fibercoh/linalg.hpp"

#include <algorithm>
#include <set>

#include "fibercoh/error.hpp"

namespace fibercoh {

void upoly_trim(UPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

UPoly upoly_add(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  upoly_trim(r);
  return r;
}

UPoly upoly_sub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  upoly_trim(r);
  return r;
}

UPoly upoly_mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  upoly_trim(r);
  return r;
}

std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b) {
  if (b.empty()) fail(ErrorCode::InvalidArgument, "univariate division by zero");
  UPoly rem = a;
  upoly_trim(rem);
  if (rem.size() < b.size()) return {{}, rem};
  UPoly quot(rem.size() - b.size() + 1);
  while (!rem.empty() && rem.size() >= b.size()) {
    std::size_t shift = rem.size() - b.size();
    mpq_class c = rem.back() / b.back();
    quot[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
    upoly_trim(rem);
  }
  upoly_trim(quot);
  return {quot, rem};
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  upoly_trim(a);
  upoly_trim(b);
  while (!b.empty()) {
    UPoly r = upoly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    mpq_class lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

bool upoly_squarefree(const UPoly& a) {
  UPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
  upoly_trim(d);
  return upoly_gcd(a, d).size() <= 1;
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> out;
  if (n == 0) return out;
  if (n > mpz_class("1000000000000")) fail(ErrorCode::UnsupportedBase, "coefficients too large for the rational root search");
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

mpq_class upoly_eval(const UPoly& a, const mpq_class& x) {
  mpq_class r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

}  // namespace

std::vector<mpq_class> upoly_rational_roots(const UPoly& a0) {
  UPoly a = a0;
  upoly_trim(a);
  std::set<mpq_class> roots;
  if (a.size() <= 1) return {};
  std::size_t low = 0;
  while (sgn(a[low]) == 0) ++low;
  if (low > 0) roots.insert(0);
  UPoly b(a.begin() + static_cast<std::ptrdiff_t>(low), a.end());
  if (b.size() > 1) {
    mpz_class l = 1;
    for (const auto& c : b) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> ints;
    for (const auto& c : b) ints.push_back(mpz_class(c * l));
    for (const auto& p : divisors(ints.front()))
      for (const auto& q : divisors(ints.back()))
        for (int sign : {1, -1}) {
          mpq_class x(p * sign, q);
          x.canonicalize();
          if (sgn(upoly_eval(b, x)) == 0) roots.insert(x);
        }
  }
  return {roots.begin(), roots.end()};
}

ExtField::ExtField(UPoly minpoly) : m_(std::move(minpoly)) {
  upoly_trim(m_);
  if (m_.size() < 2) fail(ErrorCode::InvalidArgument, "minimal polynomial must have positive degree");
  mpq_class lc = m_.back();
  for (auto& c : m_) c /= lc;
}

ExtField::Elem ExtField::inv(const Elem& a) const {
  if (a.empty()) fail(ErrorCode::InvalidArgument, "division by zero in a number field");
  // Extended Euclid: s*a + t*m = g.
  UPoly r0 = m_, r1 = a;
  UPoly s0 = {}, s1 = {mpq_class(1)};
  while (!r1.empty()) {
    auto [q, r] = upoly_divmod(r0, r1);
    UPoly s = upoly_sub(s0, upoly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1)
    fail(ErrorCode::BaseNotField, "minimal polynomial is reducible: element is a zero divisor");
  mpq_class g = r0[0];
  UPoly out = reduce(s0);
  for (auto& c : out) c /= g;
  return out;
}

BareissResult bareiss(const RingPtr& ring, std::vector<std::vector<Poly>> a, std::size_t ncols) {
  BareissResult res;
  Poly prev = Poly::constant(ring, 1);
  res.minor = prev;
  const std::size_t nrows = a.size();
  std::vector<std::size_t> row_id(nrows);
  for (std::size_t i = 0; i < nrows; ++i) row_id[i] = i;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    // Prefer constant pivots, then the shortest entry.
    std::size_t best = nrows;
    for (std::size_t p = r; p < nrows; ++p) {
      if (a[p][c].is_zero()) continue;
      if (best == nrows) {
        best = p;
      } else {
        const Poly& cur = a[best][c];
        const Poly& cand = a[p][c];
        bool cand_const = cand.is_constant(), cur_const = cur.is_constant();
        if ((cand_const && !cur_const) || (cand_const == cur_const && cand.size() < cur.size())) best = p;
      }
    }
    if (best == nrows) continue;
    std::swap(a[best], a[r]);
    std::swap(row_id[best], row_id[r]);
    const Poly piv = a[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      const Poly f = a[i][c];
      for (std::size_t j = c + 1; j < ncols; ++j) {
        Poly num = piv * a[i][j] - f * a[r][j];
        if (num.is_zero()) {
          a[i][j] = num;
          continue;
        }
        auto q = num.divide_exact(prev);
        if (!q) fail(ErrorCode::Internal, "fraction-free elimination lost exactness");
        a[i][j] = std::move(*q);
      }
      a[i][c] = Poly(ring);
    }
    prev = piv;
    res.pivot_rows.push_back(row_id[r]);
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  res.minor = prev;
  std::sort(res.pivot_rows.begin(), res.pivot_rows.end());
  return res;
}

BaseAlgebra::BaseAlgebra(RingPtr ring) : ring_(std::move(ring)) {
  switch (ring_->base_kind()) {
    case BaseKind::Field:
      kind_ = Kind::Prime;
      prime_.emplace(ring_->field());
      break;
    case BaseKind::Polynomial:
      kind_ = Kind::FractionField;
      break;
    case BaseKind::Quotient: {
      if (!ring_->base_is_field())
        fail(ErrorCode::BaseNotField, "linear algebra over a non-field quotient base; evaluate at a point first");
      if (ring_->num_z() != 1 || ring_->base_ideal_gb().size() != 1 || ring_->field().characteristic() != 0)
        fail(ErrorCode::UnsupportedBase, "number-field bases need a single parameter and a rational minimal polynomial");
      kind_ = Kind::Extension;
      ext_var_ = ring_->z_indices()[0];
      UPoly m;
      for (const auto& t : ring_->base_ideal_gb()[0]) {
        std::size_t e = t.m.exp[ext_var_];
        if (m.size() <= e) m.resize(e + 1);
        m[e] = t.c;
      }
      ext_.emplace(m);
      break;
    }
  }
}

UPoly BaseAlgebra::to_upoly(const Poly& p) const {
  UPoly u;
  for (const auto& t : p.terms()) {
    if (!ring_->is_base_monomial(t.m)) fail(ErrorCode::Internal, "matrix entry is not a base element");
    std::size_t e = t.m.exp[ext_var_];
    if (u.size() <= e) u.resize(e + 1);
    u[e] += t.c;
  }
  upoly_trim(u);
  return u;
}

Poly BaseAlgebra::from_upoly(const UPoly& u) const {
  TermList t;
  for (std::size_t e = 0; e < u.size(); ++e)
    if (sgn(u[e]) != 0) t.push_back(Term{ring_->variable(ext_var_, static_cast<std::uint16_t>(e)), u[e]});
  return Poly(ring_, std::move(t));
}

std::size_t BaseAlgebra::rank(const std::vector<std::vector<Poly>>& a, std::size_t ncols) const {
  switch (kind_) {
    case Kind::Prime: {
      DenseMatrix<PrimeField> m(a.size(), std::vector<mpq_class>(ncols));
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) m[i][j] = a[i][j].constant_coeff();
      return matrix_rank(*prime_, std::move(m), ncols);
    }
    case Kind::Extension: {
      DenseMatrix<ExtField> m(a.size(), std::vector<UPoly>(ncols));
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) m[i][j] = to_upoly(a[i][j]);
      return matrix_rank(*ext_, std::move(m), ncols);
    }
    case Kind::FractionField:
      return bareiss(ring_, a, ncols).rank;
  }
  return 0;
}

BareissResult BaseAlgebra::rank_with_certificate(const std::vector<std::vector<Poly>>& a, std::size_t ncols) const {
  if (kind_ == Kind::FractionField) return bareiss(ring_, a, ncols);
  BareissResult r;
  r.rank = rank(a, ncols);
  r.minor = Poly::constant(ring_, 1);
  return r;
}

std::vector<std::vector<Poly>> BaseAlgebra::nullspace(const std::vector<std::vector<Poly>>& a,
                                                      std::size_t ncols) const {
  std::vector<std::vector<Poly>> out;
  switch (kind_) {
    case Kind::Prime: {
      DenseMatrix<PrimeField> m(a.size(), std::vector<mpq_class>(ncols));
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) m[i][j] = a[i][j].constant_coeff();
      for (auto& v : fibercoh::nullspace(*prime_, std::move(m), ncols)) {
        std::vector<Poly> pv;
        for (auto& c : v) pv.push_back(Poly::constant(ring_, c));
        out.push_back(std::move(pv));
      }
      return out;
    }
    case Kind::Extension: {
      DenseMatrix<ExtField> m(a.size(), std::vector<UPoly>(ncols));
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) m[i][j] = to_upoly(a[i][j]);
      for (auto& v : fibercoh::nullspace(*ext_, std::move(m), ncols)) {
        std::vector<Poly> pv;
        for (auto& c : v) pv.push_back(from_upoly(c));
        out.push_back(std::move(pv));
      }
      return out;
    }
    case Kind::FractionField:
      fail(ErrorCode::BaseNotField, "explicit nullspaces need a field base");
  }
  return out;
}

Poly BaseAlgebra::inverse(const Poly& u) const {
  if (u.is_zero()) fail(ErrorCode::InvalidArgument, "inverse of zero");
  switch (kind_) {
    case Kind::Prime:
      if (!u.is_constant()) fail(ErrorCode::Internal, "inverse of a non-constant over a field base");
      return Poly::constant(ring_, ring_->field().inv(u.constant_coeff()));
    case Kind::Extension:
      return from_upoly(ext_->inv(to_upoly(u)));
    case Kind::FractionField:
      fail(ErrorCode::BaseNotField, "base elements are not invertible over a polynomial base");
  }
  return u;
}

}  // namespace fibercoh
