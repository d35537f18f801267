#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "fibercoh/module.hpp"

namespace fibercoh {

// Term order on a free module. Components are first compared by block (larger
// block wins, used for eliminating a summand), then by the ring's elimination
// rows, then by the degree row plus psi(shift), then by the remaining ring rows,
// and finally by position (smaller index wins).
class ModuleOrder {
 public:
  ModuleOrder() = default;
  ModuleOrder(RingPtr ring, const std::vector<Degree>& shifts, std::vector<int> blocks = {});

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return shift_weight_.size(); }
  int compare(std::uint32_t ca, const Monomial& a, std::uint32_t cb, const Monomial& b) const;
  // Sugar used by the pair selection: degree row of m plus psi(shift).
  std::int64_t degree(std::uint32_t c, const Monomial& m) const;

 private:
  RingPtr ring_;
  std::vector<std::int64_t> shift_weight_;
  std::vector<int> blocks_;
};

namespace detail {

// Module element sorted descending in a ModuleOrder; `sig` is a divisibility
// filter for the leading monomial.
struct GElem {
  std::vector<VTerm> terms;
  std::uint64_t sig = 0;
};

std::uint64_t monomial_signature(const Monomial& m);

}  // namespace detail

// Reduced Groebner basis of a submodule of a graded free module.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  const FreeModule& ambient() const { return ambient_; }
  const RingPtr& ring() const { return ambient_.ring; }
  // Reduced, monic basis elements in the ambient ring, sorted by ascending leading term.
  const std::vector<Vec>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool is_zero() const { return elements_.empty(); }

  Vec normal_form(const Vec& v) const;
  Poly normal_form(const Poly& p) const;
  bool contains(const Vec& v) const { return normal_form(v).is_zero(); }
  bool contains(const Poly& p) const { return normal_form(p).is_zero(); }
  // True for the unit ideal / whole free module.
  bool is_everything() const;

  // Basis elements as polynomials (rank-1 ambient only).
  std::vector<Poly> polys() const;
  // Leading (component, monomial) pairs of the elements.
  std::vector<std::pair<std::uint32_t, Monomial>> leading_terms() const;

  bool operator==(const GroebnerBasis& o) const;
  bool operator!=(const GroebnerBasis& o) const { return !(*this == o); }

 private:
  friend class GroebnerBuilder;

  FreeModule ambient_;
  ModuleOrder order_;  // over the lifted ring
  std::vector<detail::GElem> work_;
  std::vector<std::vector<std::size_t>> by_comp_;
  std::vector<Vec> elements_;
};

// Incremental Buchberger engine (normal selection strategy, Gebauer-Moeller
// criteria). Generators may be added between partial completions, which is
// what degree-by-degree minimal generator selection needs.
class GroebnerBuilder {
 public:
  explicit GroebnerBuilder(const FreeModule& ambient, std::vector<int> blocks = {});

  // Reduces v against the current basis and inserts the remainder; returns
  // false if it reduced to zero.
  bool add(const Vec& v);
  // Processes every pending pair whose sugar is <= d.
  void complete_to_degree(std::int64_t d);
  void complete();
  bool has_pending() const { return !pairs_.empty(); }

  Vec normal_form(const Vec& v) const;
  // Reduced basis; completes all pending pairs first.
  GroebnerBasis result();

 private:
  struct Pair {
    std::int64_t degree;
    std::size_t i, j;
    bool operator<(const Pair& o) const {
      if (degree != o.degree) return degree < o.degree;
      if (i != o.i) return i < o.i;
      return j < o.j;
    }
  };

  std::vector<VTerm> lift(const Vec& v) const;
  void insert(std::vector<VTerm> terms);
  void process(const Pair& p);
  Monomial pair_lcm(std::size_t i, std::size_t j) const;

  FreeModule ambient_;
  RingPtr work_ring_;
  ModuleOrder order_;
  bool use_product_criterion_ = false;
  std::vector<detail::GElem> elems_;
  std::vector<bool> active_;
  std::vector<std::vector<std::size_t>> by_comp_;
  std::set<Pair> pairs_;
};

// Reduced Groebner basis; rejects inhomogeneous generators.
GroebnerBasis groebner_basis(const std::vector<Vec>& gens, const FreeModule& ambient);
GroebnerBasis groebner_basis(const std::vector<Poly>& ideal_gens);
// Same without the homogeneity check (elimination of auxiliary variables, base ideals).
GroebnerBasis groebner_basis_unchecked(const std::vector<Vec>& gens, const FreeModule& ambient);
std::vector<Poly> ideal_groebner_basis(const std::vector<Poly>& gens);

// True iff every S-pair of `gens` reduces to zero modulo `gens`.
bool satisfies_buchberger_criterion(const std::vector<Vec>& gens, const FreeModule& ambient);

// Drops generators that lie in the span of earlier (lower-degree) ones; the
// survivors generate the same submodule. Over a field base the result is minimal.
std::vector<Vec> prune_generators(const std::vector<Vec>& gens, const FreeModule& ambient);

// Generators of ker(phi) in phi.source, returned as a matrix with target phi.source.
GradedMatrix kernel(const GradedMatrix& phi);
GroebnerBasis kernel_basis(const GradedMatrix& phi);
// First syzygies of homogeneous generators in `ambient`.
GradedMatrix syzygies(const std::vector<Vec>& gens, const FreeModule& ambient);

// Presentation of (K + B) / B where K, B are lists of elements of the same free module.
ModulePresentation subquotient(const std::vector<Vec>& k, const std::vector<Vec>& b, const FreeModule& ambient);
// Image of phi as a module: presentation of im(phi) on the columns of phi.
ModulePresentation image_presentation(const GradedMatrix& phi);
// Drops redundant relation columns (generators are left alone).
ModulePresentation prune_relations(const ModulePresentation& m);

// Ideal operations (generators as lists of polynomials in one ring).
std::vector<Poly> ideal_colon(const std::vector<Poly>& i, const std::vector<Poly>& j);
std::vector<Poly> ideal_saturation(const std::vector<Poly>& i, const std::vector<Poly>& j);
std::vector<Poly> ideal_intersection(const std::vector<Poly>& i, const std::vector<Poly>& j);
std::vector<Poly> ideal_product(const std::vector<Poly>& i, const std::vector<Poly>& j);
std::vector<Poly> ideal_power(const std::vector<Poly>& i, unsigned k);
bool ideal_equal(const std::vector<Poly>& i, const std::vector<Poly>& j);
bool ideal_contains(const std::vector<Poly>& i, const std::vector<Poly>& j);
// I ∩ (subring without `vars`), computed in an elimination order.
std::vector<Poly> eliminate(const std::vector<Poly>& i, const std::vector<std::size_t>& vars);
// Elimination read off an existing basis; throws OrderNotEliminating if the
// basis order does not eliminate `vars`.
std::vector<Poly> eliminate_with_basis(const GroebnerBasis& gb, const std::vector<std::size_t>& vars);
bool order_eliminates(const Ring& ring, const std::vector<std::size_t>& vars);

// Generators (in the target of m) of the torsion submodule ker(M -> M**).
// Requires a domain base.
std::vector<Vec> torsion_submodule(const ModulePresentation& m);
// Presentation of M / torsion.
ModulePresentation torsion_free_quotient(const ModulePresentation& m);

}  // namespace fibercoh
