#pragma once

#include <map>
#include <string>
#include <vector>

#include "fibercoh/groebner.hpp"

namespace fibercoh {

// Chain complex of graded free modules F_0 <- F_1 <- ... <- F_n.
// maps[i] is the differential F_{i+1} -> F_i.
struct FreeComplex {
  std::vector<FreeModule> modules;
  std::vector<GradedMatrix> maps;
  // True when the next syzygy module is known to vanish (F_{n+1} = 0).
  bool complete = false;

  RingPtr ring() const { return modules.empty() ? RingPtr() : modules[0].ring; }
  int length() const { return static_cast<int>(modules.size()) - 1; }
  // F_i, zero outside the stored range.
  FreeModule module(int i) const;
  // phi_i : F_i -> F_{i-1}; a zero matrix outside the stored range.
  GradedMatrix differential(int i) const;
  // Throws Internal if some composite phi_i phi_{i+1} is nonzero.
  void check() const;
};

// Cochain complex D^0 -> D^1 -> ...; maps[i] : D^i -> D^{i+1}.
struct DualComplex {
  std::vector<FreeModule> modules;
  std::vector<GradedMatrix> maps;
  bool complete = false;

  FreeModule module(int i) const;
  GradedMatrix differential(int i) const;  // D^i -> D^{i+1}
};

struct BettiTable {
  std::map<std::pair<int, Degree>, int> entries;
  int grading_rank = 1;

  int at(int i, const Degree& d) const;
  // Rows = homological degree, columns = psi-degree.
  std::string to_csv(const Ring& ring) const;
  bool operator==(const BettiTable& o) const { return entries == o.entries; }
};

// Default resolution length: number of variables plus one.
int default_resolution_length(const Ring& ring);

// Graded free resolution of coker(m) up to F_length; minimal over field bases.
FreeComplex free_resolution(const ModulePresentation& m, int length);
FreeComplex free_resolution(const ModulePresentation& m);
// Cancels unit entries of the differentials; requires a field base.
FreeComplex minimalize(const FreeComplex& c);
bool is_minimal(const FreeComplex& c);
// Direct sum of two complexes over the same ring (used to build non-minimal inputs).
FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b);
BettiTable betti_table(const FreeComplex& c);

// Hom_R(F_i, R(twist)) with transposed differentials; a generator of shift a becomes -a - twist.
DualComplex dual_complex(const FreeComplex& c, const Degree& twist);
// Hom_R(D^i, R(twist)) back to a chain complex (double dual when twists cancel).
FreeComplex dual_of_dual(const DualComplex& d, const Degree& twist);

// coker(Hom(F_r, R) -> Hom(F_{r+1}, R)).
ModulePresentation d_top_cokernel(const FreeComplex& c, int r);

// Ext^j_R(M, R(twist)) for j = 0..top, from a resolution of M.
std::vector<ModulePresentation> ext_modules(const FreeComplex& res, const Degree& twist, int top);
std::vector<ModulePresentation> ext_modules(const ModulePresentation& m, const Degree& twist, int top);

// Homology H_i = ker(phi_i) / im(phi_{i+1}) as a presentation.
ModulePresentation homology_module(const FreeComplex& c, int i);

}  // namespace fibercoh
