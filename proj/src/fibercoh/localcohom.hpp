#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibercoh/strands.hpp"

namespace fibercoh {

// Monomial basis of [H^r_m(R)]_nu in the inverse-monomial model: an element
// x^-alpha y^beta is stored as the exponent vector with alpha on the x slots
// (all >= 1) and beta on the y slots.
std::vector<Monomial> top_cohomology_basis(const Ring& ring, const Degree& nu);
std::size_t top_cohomology_dim(const Ring& ring, const Degree& nu);

// Degree-mu strand of H^r_m(F_.) for a complex of free modules, with the maps
// induced by the differentials acting on inverse monomials.
StrandComplex top_cohomology_complex(const FreeComplex& c, const Degree& mu);

enum class Route { DualComplex, ExtDual, Both };
const char* route_name(Route r);

struct CohomologyEntry {
  int i = 0;
  Degree degree{0, 0};
  std::size_t dim = 0;
  Route route = Route::DualComplex;
};

struct CohomologyTable {
  int grading_rank = 1;
  // Keyed by (i, degree).
  std::map<std::pair<int, Degree>, CohomologyEntry> entries;

  std::size_t dim(int i, const Degree& d) const;
  bool operator==(const CohomologyTable& o) const;
};

// Degrees whose psi-value lies in [lo, hi]; for bigraded rings the x-degree j
// ranges over [lo, hi] and the y-degree over [ylo, yhi].
std::vector<Degree> degree_window(const Ring& ring, std::int64_t lo, std::int64_t hi, std::int64_t ylo = 0,
                                  std::int64_t yhi = 0);
// Default window: from the lowest shift in the resolution minus delta up to the
// highest shift of F_0 (psi-degrees); bigraded rings also get a y-range.
std::vector<Degree> default_cohomology_window(const ModulePresentation& m, const FiberPoint& fiber);

// Route A: strand homology of H^r_m(F_.) over the fiber, F_. a resolution of M (x) k(fiber).
CohomologyTable local_cohomology_dims_dualcomplex(const ModulePresentation& m, const std::vector<Degree>& window,
                                                  const FiberPoint& fiber);
// Route B: dim [Ext^{r-i}(M, R(-delta))]_{-mu}; rings without y variables only.
CohomologyTable local_cohomology_dims_extdual(const ModulePresentation& m, const std::vector<Degree>& window,
                                              const FiberPoint& fiber);
// Both routes; throws DualityMismatch on disagreement.
CohomologyTable cross_validate(const ModulePresentation& m, const std::vector<Degree>& window, const FiberPoint& fiber);

struct CohomologyInvariants {
  int dim = -1;    // -1 for the zero module
  int depth = -1;
  // a^i for i = 0..r; nullopt stands for -infinity.
  std::vector<std::optional<std::int64_t>> a;
  std::optional<std::int64_t> regularity;
};

// dim, depth, a-invariants (psi-degrees) and regularity of M (x) k(fiber), read
// off the initial degrees of Ext^{r-i}(M, R(-delta)). Checks the result against
// the Krull dimension of the annihilator and, over a field, Auslander-Buchsbaum.
CohomologyInvariants cohomology_invariants(const ModulePresentation& m, const FiberPoint& fiber);

// Krull dimension of M (x) k(fiber) from the initial ideal of its annihilator.
int krull_dimension(const ModulePresentation& m);
// Annihilator ideal of coker(m).
std::vector<Poly> annihilator(const ModulePresentation& m);

struct SheafCohomologyRow {
  std::int64_t n = 0;
  std::vector<std::size_t> h;  // h^0 .. h^{r-1}
};

// dim H^i(X, ~M(n)) for n in [lo, hi] over the fiber; standard graded rings only.
std::vector<SheafCohomologyRow> sheaf_cohomology_dims(const ModulePresentation& m, std::int64_t lo, std::int64_t hi,
                                                      const FiberPoint& fiber);

}  // namespace fibercoh
