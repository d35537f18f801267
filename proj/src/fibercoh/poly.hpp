#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibercoh/ring.hpp"
#include "fibercoh/term.hpp"

namespace fibercoh {

// Sparse polynomial in a Ring; terms strictly descending in the ring's order,
// no zero coefficients, base coefficients in normal form modulo J.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
  Poly(RingPtr ring, TermList terms);

  static Poly constant(RingPtr ring, const mpq_class& c);
  static Poly variable(RingPtr ring, std::size_t index);
  static Poly monomial(RingPtr ring, const Monomial& m, const mpq_class& c = 1);

  const RingPtr& ring() const { return ring_; }
  const TermList& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  // Only z-variables occur (an element of A).
  bool is_base_element() const;
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().m; }
  const mpq_class& leading_coeff() const { return terms_.front().c; }
  mpq_class constant_coeff() const;

  // G-degree of a nonzero homogeneous polynomial; nullopt if inhomogeneous or zero.
  std::optional<Degree> degree() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scaled(const mpq_class& c) const;
  Poly times_term(const Monomial& m, const mpq_class& c) const;
  Poly pow(unsigned k) const;
  Poly monic() const;
  Poly derivative(std::size_t var) const;

  // Exact quotient p / q in a ring without base ideal; nullopt if q does not divide p.
  std::optional<Poly> divide_exact(const Poly& q) const;

  // Same terms viewed in another ring with identical variables (re-sorted).
  Poly in_ring(const RingPtr& other) const;

  std::string to_string() const;

 private:
  void canonicalize();

  RingPtr ring_;
  TermList terms_;
};

// Merge-based helpers shared with the module and Groebner code.
void sort_terms(const Ring& ring, TermList& terms);
// a - c * m * b with a, b sorted.
TermList sub_mul(const Ring& ring, const TermList& a, const mpq_class& c, const Monomial& m, const TermList& b,
                 std::size_t a_start = 0);
// Full reduction of `terms` by a list of polynomials (leading terms first).
void reduce_terms(const Ring& ring, TermList& terms, const std::vector<TermList>& divisors);

std::vector<Poly> to_ring(const std::vector<Poly>& polys, const RingPtr& ring);

}  // namespace fibercoh
