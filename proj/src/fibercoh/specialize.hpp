#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fibercoh/loci.hpp"

namespace fibercoh {

// Moves a polynomial into a ring sharing the names of the variables it uses.
Poly transport(const Poly& p, const RingPtr& to);
// stem0, stem1, ... (or T for the stem "T") avoiding the ring's names and `used`.
std::string fresh_variable_name(const Ring& ring, const std::string& stem, std::set<std::string>& used);

// Cancels generator/relation pairs joined by a unit entry (a nonzero constant, or
// any nonzero base element over a field base).
ModulePresentation trim_presentation(const ModulePresentation& m);

// The ideal (g_1, ..., g_s) as a module: generators in degrees deg(g_j), relations = syzygies.
ModulePresentation ideal_as_module(const std::vector<Poly>& gens);

// Max psi-degree of a minimal generator, computed over the fiber field of m's ring.
std::int64_t beta(const ModulePresentation& m);

// Rank of a matrix over the fraction field of R (entries anywhere in R).
std::size_t generic_rank(const RingPtr& ring, const std::vector<std::vector<Poly>>& a, std::size_t ncols);
// Rank of coker(m) over the fraction field of R.
std::size_t module_rank(const ModulePresentation& m);

// Sym_R(M(b)) = B / L with B = R[Y_1..Y_s], bideg Y_j = (mu_j - b, 1), L = I_1([Y] phi).
struct SymAlgebra {
  ModulePresentation module;  // trimmed presentation of M
  std::int64_t b = 0;
  RingPtr ring;               // B
  std::vector<Poly> relations;
  std::vector<std::string> y_names;

  // dim [Sym_R(M(b))]_{(j,k)}.
  std::size_t bigraded_dim(std::int64_t j, std::int64_t k) const;
  // dim [Sym^k(M)]_d through the shift identity.
  std::size_t sym_power_dim(std::int64_t k, std::int64_t d) const;
};

SymAlgebra sym_algebra(const ModulePresentation& m, std::optional<std::int64_t> b = std::nullopt);

// Direct presentation of Sym^k(M) over R: Sym^k(F_0) modulo phi(F_1) Sym^{k-1}(F_0).
ModulePresentation sym_power_presentation(const ModulePresentation& m, unsigned k);

// Free module Sym^k(F) with its monomial basis (exponent vectors in the basis of F).
struct SymFree {
  FreeModule module;
  std::vector<std::vector<unsigned>> basis;
};
SymFree sym_free(const FreeModule& f, unsigned k);

struct PowersBundle {
  ModulePresentation module;       // M as given
  bool is_ideal = false;
  std::vector<Poly> ideal;         // generators when M is an ideal
  std::size_t rank = 0;
  FreeModule target;               // F, rank = rank(M)
  GradedMatrix embedding;          // iota: F_0 -> F; its image is M / torsion
  std::int64_t b = 0;

  // Generators of M^k inside Sym^k(F): products of k columns of the embedding.
  std::vector<Vec> power_generators(unsigned k) const;
  FreeModule power_ambient(unsigned k) const;
  // dim [M^k]_d over the fiber field of R.
  std::size_t power_dim(unsigned k, const Degree& d) const;
};

enum class EmbeddingChoice { Echelon, Randomized };

PowersBundle powers_of_ideal(const std::vector<Poly>& gens);
PowersBundle powers_of_module(const ModulePresentation& m, EmbeddingChoice choice = EmbeddingChoice::Echelon,
                              std::uint64_t seed = 0);

// Rees ideal of (g_0..g_s) in R[Y_0..Y_s] by eliminating T from (Y_i - g_i T).
std::vector<Poly> rees_ideal(const std::vector<Poly>& gens, RingPtr* rees_ring = nullptr);

struct SpecializedPower {
  RingPtr ring;                // R (x) k(n)
  FreeModule ambient;          // Sym^k(F) (x) k(n)
  std::vector<Vec> generators;
  std::vector<Poly> ideal;     // for ideals: the generators as polynomials

  std::size_t dim(const Degree& d) const;
};

// S_n(M^k): image of M^k (x) k(n) in Sym^k(F) (x) k(n).
SpecializedPower specialize_power(const PowersBundle& bundle, unsigned k, const FiberPoint& fiber);
// S_n(I)^k computed from the specialized generators (ideals only).
std::vector<Poly> specialized_ideal_power(const PowersBundle& bundle, unsigned k, const FiberPoint& fiber);

struct AgreementCheck {
  std::string fiber;
  bool in_open = true;  // a(n) != 0
  bool agrees = true;
};

struct AgreementCertificate {
  Poly a;                                 // squarefree product of certificate minors
  std::vector<AgreementCheck> checks;
  std::vector<std::string> counterexamples;  // fibers in D(a) that disagree
  bool verified = true;
};

// Element a with dim [S_n(M^k)]_d = dim [M^k (x) k(z)]_d for all n in D(a),
// k <= max_power and d in the window; checked on the sampled fibers.
AgreementCertificate generic_agreement_certificate(const PowersBundle& bundle, unsigned max_power,
                                                   const std::vector<Degree>& window,
                                                   const std::vector<FiberPoint>& fibers);

}  // namespace fibercoh
