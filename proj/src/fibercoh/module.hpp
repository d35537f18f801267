#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibercoh/poly.hpp"

namespace fibercoh {

struct VTerm {
  std::uint32_t comp = 0;
  Monomial m;
  mpq_class c;
};

// Finite-rank graded free module; shifts[i] is the degree of basis element e_i,
// so R(-a) has shift a.
struct FreeModule {
  RingPtr ring;
  std::vector<Degree> shifts;

  FreeModule() = default;
  FreeModule(RingPtr r, std::vector<Degree> s) : ring(std::move(r)), shifts(std::move(s)) {}
  static FreeModule zeros(RingPtr r, std::size_t rank) { return FreeModule(std::move(r), std::vector<Degree>(rank)); }

  std::size_t rank() const { return shifts.size(); }
  bool operator==(const FreeModule& o) const { return shifts == o.shifts; }
};

// Element of a free module: sparse terms sorted by (component, monomial desc).
class Vec {
 public:
  Vec() = default;
  explicit Vec(RingPtr ring) : ring_(std::move(ring)) {}
  Vec(RingPtr ring, std::vector<VTerm> terms);
  static Vec from_components(RingPtr ring, const std::vector<Poly>& comps);
  static Vec basis(RingPtr ring, std::uint32_t comp, const Poly& coeff);

  const RingPtr& ring() const { return ring_; }
  const std::vector<VTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Poly component(std::uint32_t i) const;
  std::vector<Poly> components(std::size_t rank) const;
  // Largest component index + 1 (0 for the zero vector).
  std::size_t support_bound() const;

  // Degree in the free module with the given shifts; nullopt if inhomogeneous or zero.
  std::optional<Degree> degree(const std::vector<Degree>& shifts) const;

  Vec operator+(const Vec& o) const;
  Vec operator-(const Vec& o) const;
  Vec operator-() const;
  Vec scaled(const Poly& f) const;
  Vec times_term(const Monomial& m, const mpq_class& c) const;
  bool operator==(const Vec& o) const;

  // Renumber components by adding `offset` (may be negative when all comps >= -offset).
  Vec shifted_components(std::int64_t offset) const;
  Vec in_ring(const RingPtr& other) const;

  std::string to_string() const;

 private:
  void canonicalize();

  RingPtr ring_;
  std::vector<VTerm> terms_;
};

// Homogeneous map source -> target; columns[j] is the image of source basis e_j.
// As a presentation, it represents coker(source -> target).
struct GradedMatrix {
  FreeModule source;
  FreeModule target;
  std::vector<Vec> columns;

  GradedMatrix() = default;
  GradedMatrix(FreeModule src, FreeModule tgt, std::vector<Vec> cols);

  // Infers source shifts from the columns; zero columns get `zero_degree`.
  static GradedMatrix from_columns(const FreeModule& target, std::vector<Vec> cols,
                                   Degree zero_degree = Degree{0, 0});
  // Rows-of-entries constructor: entries[i][j] is the (row i, column j) entry.
  static GradedMatrix from_entries(const FreeModule& target, const std::vector<std::vector<Poly>>& entries);
  static GradedMatrix zero(const FreeModule& source, const FreeModule& target);

  const RingPtr& ring() const { return target.ring; }
  std::size_t rows() const { return target.rank(); }
  std::size_t cols() const { return columns.size(); }
  Poly entry(std::size_t i, std::size_t j) const { return columns[j].component(static_cast<std::uint32_t>(i)); }
  std::vector<std::vector<Poly>> dense() const;

  // Throws Inhomogeneous / ShapeMismatch if a column does not match its source shift.
  void validate() const;
  GradedMatrix transpose(const std::vector<Degree>& new_target_shifts,
                         const std::vector<Degree>& new_source_shifts) const;
  // this * other (other: X -> source, this: source -> target).
  GradedMatrix compose(const GradedMatrix& other) const;
  Vec apply(const Vec& v) const;
  bool is_zero() const;
};

using ModulePresentation = GradedMatrix;

// Presentation helpers.
ModulePresentation free_module_presentation(const FreeModule& f);
ModulePresentation quotient_presentation(const std::vector<Poly>& ideal_gens);
// Ideal I viewed as a module (generators as a 1 x n matrix; callers present it via syzygies).
GradedMatrix ideal_generators(const std::vector<Poly>& gens);

}  // namespace fibercoh
