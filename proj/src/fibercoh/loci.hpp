#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibercoh/localcohom.hpp"

namespace fibercoh {

// Closed subset V(I) of Spec(A), with I generated by base elements of `ring`.
// The empty locus is V(1); no generators means all of Spec(A).
struct Locus {
  RingPtr ring;
  std::vector<Poly> generators;
  bool radical = true;
  std::vector<std::string> provenance;

  static Locus empty(const RingPtr& ring);
  static Locus everything(const RingPtr& ring);
  bool is_empty() const;
  bool is_everything() const;
  // True if every generator vanishes at the point (the generic point lies
  // only in the locus that is everything).
  bool contains(const FiberPoint& p) const;
};

// Monic gcd and squarefree part of polynomials in the base variables (characteristic zero).
Poly poly_gcd(const Poly& p, const Poly& q);
Poly squarefree_part(const Poly& p);

Locus locus_union(const Locus& a, const Locus& b);
// Radical of the locus ideal: squarefree part for principal ideals, Seidenberg's
// construction in dimension zero, otherwise generators are kept and the radical
// flag is cleared.
Locus radicalize(const Locus& l);

// Psi-interval hull of the shifts of F_{i-1}, F_i, F_{i+1}, widened by `slack`.
std::vector<Degree> complex_window(const FreeComplex& c, int i, int slack);
// Hull of the generator and relation shifts of a presentation, widened by `slack`.
std::vector<Degree> presentation_window(const ModulePresentation& m, int slack);

// Irreducible components of Spec(A) for a reduced quotient base k[z]/J with J
// univariate and split over QQ: one rational point per component.
struct BaseComponent {
  std::string label;   // the prime, e.g. "(t - 1)"
  FiberPoint point;
};
std::vector<BaseComponent> base_components(const Ring& ring);

// T_M over the window: points where some strand of coker(m) fails to be free.
Locus nonfree_locus(const ModulePresentation& m, const std::vector<Degree>& window);
// Union of T_M, T_{D^{r+1}} and T_{Ext^j(M,R)} for 0 <= j <= r.
Locus duality_exclusion_locus(const ModulePresentation& m, int slack = 1);

struct ComponentCertificate {
  std::string component;
  std::optional<Poly> a;  // nullopt: the locus contains the component
};

struct Certificate {
  std::optional<Poly> global;
  std::vector<ComponentCertificate> components;
};

// Element a with D(a) disjoint from the locus and avoiding the minimal primes;
// throws LocusIsEverything when no component admits one.
Certificate dense_open_certificate(const Locus& l);

using FiberTable = std::map<std::string, std::int64_t>;
using FiberQuantity = std::function<FiberTable(const FiberPoint&)>;

struct SamplerSpec {
  std::uint64_t seed = 0;
  int grid_radius = 2;      // integer grid [-g, g]^m
  int random_count = 20;    // seeded random integer points
  int random_range = 50;
  bool include_generic = true;
  std::vector<FiberPoint> extra;
  // Points where this returns false are skipped (e.g. a known bad hypersurface).
  std::function<bool(const FiberPoint&)> accept;
  unsigned threads = 1;
};

std::vector<FiberPoint> sample_fibers(const Ring& ring, const SamplerSpec& spec);

struct FiberSample {
  FiberPoint point;
  std::string label;
  std::string component;
  bool in_locus = false;
  FiberTable table;
  bool matches_reference = true;
};

struct HarnessVerdict {
  std::uint64_t seed = 0;
  std::vector<FiberSample> samples;
  std::map<std::string, FiberTable> reference;  // per component
  std::vector<std::size_t> jumps;               // in-locus samples differing from their reference
  std::vector<std::size_t> violations;          // out-of-locus samples differing from their reference
  bool locally_constant = true;                 // no violations
  bool constant = true;                         // every sample has the same table
};

HarnessVerdict locally_constant_harness(const FiberQuantity& q, const Locus& l, const SamplerSpec& spec);

}  // namespace fibercoh
