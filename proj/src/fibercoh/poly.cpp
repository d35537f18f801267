#include "fibercoh/poly.hpp"

#include <algorithm>
#include <sstream>

#include "fibercoh/error.hpp"

namespace fibercoh {

void sort_terms(const Ring& ring, TermList& terms) {
  std::sort(terms.begin(), terms.end(), [&ring](const Term& a, const Term& b) { return ring.compare(a.m, b.m) > 0; });
  TermList out;
  out.reserve(terms.size());
  const CoeffField& f = ring.field();
  for (auto& t : terms) {
    if (!out.empty() && out.back().m == t.m) {
      out.back().c = f.add(out.back().c, t.c);
    } else {
      if (!out.empty() && CoeffField::is_zero(out.back().c)) out.pop_back();
      out.push_back(std::move(t));
      f.normalize(out.back().c);
    }
  }
  if (!out.empty() && CoeffField::is_zero(out.back().c)) out.pop_back();
  terms = std::move(out);
}

TermList sub_mul(const Ring& ring, const TermList& a, const mpq_class& c, const Monomial& m, const TermList& b,
                 std::size_t a_start) {
  const CoeffField& f = ring.field();
  TermList out;
  out.reserve(a.size() - a_start + b.size());
  std::size_t i = a_start, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    Monomial bm = m * b[j].m;
    if (i == a.size()) {
      out.push_back(Term{bm, f.neg(f.mul(c, b[j].c))});
      ++j;
      continue;
    }
    int cmp = ring.compare(a[i].m, bm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(Term{bm, f.neg(f.mul(c, b[j].c))});
      ++j;
    } else {
      mpq_class v = f.sub(a[i].c, f.mul(c, b[j].c));
      if (!CoeffField::is_zero(v)) out.push_back(Term{bm, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

void reduce_terms(const Ring& ring, TermList& terms, const std::vector<TermList>& divisors) {
  const CoeffField& f = ring.field();
  TermList result;
  TermList h = std::move(terms);
  std::size_t start = 0;
  while (start < h.size()) {
    const Term& lt = h[start];
    const TermList* div = nullptr;
    for (const auto& d : divisors) {
      if (!d.empty() && d.front().m.divides(lt.m)) {
        div = &d;
        break;
      }
    }
    if (div == nullptr) {
      result.push_back(h[start]);
      ++start;
      continue;
    }
    mpq_class c = f.div(lt.c, div->front().c);
    Monomial q = lt.m / div->front().m;
    h = sub_mul(ring, h, c, q, *div, start);
    start = 0;
  }
  terms = std::move(result);
}

Poly::Poly(RingPtr ring, TermList terms) : ring_(std::move(ring)), terms_(std::move(terms)) { canonicalize(); }

void Poly::canonicalize() {
  sort_terms(*ring_, terms_);
  ring_->reduce_base(terms_);
}

Poly Poly::constant(RingPtr ring, const mpq_class& c) { return Poly(ring, TermList{Term{Monomial{}, c}}); }

Poly Poly::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) fail(ErrorCode::InvalidArgument, "variable index out of range");
  Monomial m;
  m.exp[index] = 1;
  return Poly(ring, TermList{Term{m, 1}});
}

Poly Poly::monomial(RingPtr ring, const Monomial& m, const mpq_class& c) { return Poly(ring, TermList{Term{m, c}}); }

bool Poly::is_base_element() const {
  for (const auto& t : terms_)
    if (!ring_->is_base_monomial(t.m)) return false;
  return true;
}

mpq_class Poly::constant_coeff() const {
  if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
  return 0;
}

std::optional<Degree> Poly::degree() const {
  if (terms_.empty()) return std::nullopt;
  Degree d = ring_->degree_of(terms_[0].m);
  for (const auto& t : terms_)
    if (ring_->degree_of(t.m) != d) return std::nullopt;
  return d;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.c = ring_->field().neg(t.c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (!ring_) return *this = o;
  if (!o.ring_) return *this;
  check_same_ring(*ring_, *o.ring_);
  terms_ = sub_mul(*ring_, terms_, -1, Monomial{}, o.terms_);
  if (ring_->field().characteristic() != 0)
    for (auto& t : terms_) ring_->field().normalize(t.c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (!o.ring_) return *this;
  if (!ring_) return *this = -o;
  check_same_ring(*ring_, *o.ring_);
  terms_ = sub_mul(*ring_, terms_, 1, Monomial{}, o.terms_);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (!a.ring_ || !b.ring_) return Poly(a.ring_ ? a.ring_ : b.ring_);
  check_same_ring(*a.ring_, *b.ring_);
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& big = a.size() <= b.size() ? b : a;
  TermList acc;
  for (const auto& t : small.terms_) acc = sub_mul(*a.ring_, acc, a.ring_->field().neg(t.c), t.m, big.terms_);
  Poly r(a.ring_);
  r.terms_ = std::move(acc);
  a.ring_->reduce_base(r.terms_);
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

Poly Poly::scaled(const mpq_class& c) const {
  Poly r(ring_);
  if (CoeffField::is_zero(ring_->field().from_rational(c))) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.c = ring_->field().mul(t.c, c);
  return r;
}

Poly Poly::times_term(const Monomial& m, const mpq_class& c) const {
  Poly r(ring_);
  r.terms_ = sub_mul(*ring_, TermList{}, ring_->field().neg(c), m, terms_);
  ring_->reduce_base(r.terms_);
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(ring_, 1);
  Poly b = *this;
  while (k > 0) {
    if (k & 1u) r = r * b;
    k >>= 1u;
    if (k > 0) b = b * b;
  }
  return r;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(ring_->field().inv(leading_coeff()));
}

Poly Poly::derivative(std::size_t var) const {
  TermList out;
  for (const auto& t : terms_) {
    if (t.m.exp[var] == 0) continue;
    Term d{t.m, t.c * t.m.exp[var]};
    d.m.exp[var] -= 1;
    out.push_back(std::move(d));
  }
  return Poly(ring_, std::move(out));
}

std::optional<Poly> Poly::divide_exact(const Poly& q) const {
  if (q.is_zero()) fail(ErrorCode::InvalidArgument, "division by the zero polynomial");
  if (ring_->has_base_ideal()) fail(ErrorCode::BaseNotDomain, "exact division requires a polynomial base");
  const CoeffField& f = ring_->field();
  TermList rem = terms_;
  TermList quot;
  while (!rem.empty()) {
    if (!q.leading_monomial().divides(rem.front().m)) return std::nullopt;
    Monomial m = rem.front().m / q.leading_monomial();
    mpq_class c = f.div(rem.front().c, q.leading_coeff());
    rem = sub_mul(*ring_, rem, c, m, q.terms_);
    quot.push_back(Term{m, c});
  }
  Poly r(ring_);
  r.terms_ = std::move(quot);
  return r;
}

Poly Poly::in_ring(const RingPtr& other) const {
  if (!ring_->same_variables(*other)) fail(ErrorCode::RingMismatch, "rings have different variables");
  return Poly(other, terms_);
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool one = t.m.is_one();
    if (c != 1 || one) {
      os << c.get_str();
      if (!one) os << "*";
    }
    bool firstvar = true;
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      if (t.m.exp[i] == 0) continue;
      if (!firstvar) os << "*";
      firstvar = false;
      os << ring_->var_name(i);
      if (t.m.exp[i] > 1) os << "^" << t.m.exp[i];
    }
  }
  return os.str();
}

std::vector<Poly> to_ring(const std::vector<Poly>& polys, const RingPtr& ring) {
  std::vector<Poly> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(p.in_ring(ring));
  return out;
}

}  // namespace fibercoh
