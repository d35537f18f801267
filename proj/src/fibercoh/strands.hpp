#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibercoh/fiber.hpp"
#include "fibercoh/linalg.hpp"

namespace fibercoh {

struct StrandBasisElem {
  std::uint32_t comp = 0;
  Monomial m;
  bool operator==(const StrandBasisElem& o) const { return comp == o.comp && m == o.m; }
};

// Degree-mu piece of a homogeneous map; entries are base elements
// (constants over a field base, polynomials in z otherwise).
struct StrandMatrix {
  RingPtr ring;
  Degree degree{0, 0};
  std::vector<StrandBasisElem> source, target;
  std::vector<std::vector<Poly>> entries;  // target.size() x source.size()

  std::size_t rows() const { return target.size(); }
  std::size_t cols() const { return source.size(); }
};

// Monomial basis e_c * m of [F]_mu, components ascending, monomials descending.
std::vector<StrandBasisElem> strand_basis(const FreeModule& f, const Degree& mu);
std::size_t strand_dim(const FreeModule& f, const Degree& mu);
StrandMatrix strand(const GradedMatrix& phi, const Degree& mu);
// Coordinates of v (homogeneous of degree mu) in the basis of [F]_mu.
std::vector<Poly> strand_coordinates(const Vec& v, const std::vector<StrandBasisElem>& basis);

// dim [coker phi]_mu over the fiber field of phi's ring (k(z) for a polynomial base).
std::size_t presentation_strand_dim(const ModulePresentation& m, const Degree& mu);

// Complex of finite-dimensional spaces: dims[i] = dim P_i; maps[i] : P_{i+1} -> P_i.
struct StrandComplex {
  RingPtr ring;
  Degree degree{0, 0};
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::vector<Poly>>> maps;
};

struct StrandHomologyReport {
  int i = 0;
  Degree degree{0, 0};
  std::size_t dim_p = 0, dim_z = 0, dim_b = 0, dim_h = 0, dim_c = 0;
};

// Homology at position i, computed directly (kernel basis + containment over a
// field, fraction-free ranks otherwise) and through the four-term sequence;
// throws Internal if the two disagree.
StrandHomologyReport strand_complex_homology(const StrandComplex& c, int i);
StrandComplex strand_complex(const FreeComplex& c, const Degree& mu);
StrandHomologyReport strand_homology(const FreeComplex& c, int i, const Degree& mu);
// Evaluates the complex at the fiber first.
StrandHomologyReport strand_homology(const FreeComplex& c, int i, const Degree& mu, const FiberPoint& fiber);

struct ExactnessViolation {
  int i = 0;
  Degree degree{0, 0};
  std::size_t fiber_homology = 0;   // dim H_i(P (x) k(p))_mu
  std::size_t homology_fiber = 0;   // dim (H_i(P) (x) k(p))_mu
};

struct ExactnessVerdict {
  bool commutes = true;
  std::vector<ExactnessViolation> violations;
  std::vector<ExactnessViolation> checked;
};

// Compares homology of the fiber with the fiber of the homology for 0 <= i <= s
// over the window.
ExactnessVerdict fiber_exactness_check(const FreeComplex& p, const FiberPoint& fiber, const std::vector<Degree>& window,
                                       int s);

}  // namespace fibercoh
