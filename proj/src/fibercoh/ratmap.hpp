#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibercoh/hilbert.hpp"
#include "fibercoh/specialize.hpp"

namespace fibercoh {

// g = (g_0 : ... : g_s) on P^r_A by forms of one degree d > 0 in a standard graded ring.
struct RationalMap {
  RingPtr ring;
  std::vector<Poly> forms;
  std::int64_t d = 0;

  static RationalMap make(const std::vector<Poly>& forms);
  std::size_t r() const { return ring->num_x() - 1; }
};

// 6 for P^1 sources, 4 otherwise.
unsigned default_power_cutoff(const Ring& ring);

struct ImageIdeal {
  RingPtr ring;              // k(n)[y_0..y_s], standard graded
  std::vector<Poly> gens;    // empty for the zero ideal
  HilbertSeries hilbert;
};

// Kernel of k(n)[y] -> k(n)[x], y_i -> g_i(n), by elimination.
ImageIdeal image_ideal(const RationalMap& map, const FiberPoint& fiber);
bool generically_finite(const RationalMap& map, const FiberPoint& fiber);
std::int64_t image_degree(const RationalMap& map, const FiberPoint& fiber);

struct PowerRow {
  unsigned k = 0;
  std::int64_t power_dim = 0;      // dim [I^k]_{kd}
  std::int64_t saturated_dim = 0;  // dim [(I^k : m^inf)]_{kd}
  std::int64_t h1 = 0;             // dim [H^1_m(I^k)]_{kd}
};

struct LimitEstimate {
  std::vector<std::int64_t> differences;  // order-r differences of the sequence
  bool stable = false;                    // last two differences agree
  std::int64_t value = 0;                 // last difference
};

// Order-r differences with the stability rule.
LimitEstimate limit_estimate(const std::vector<std::int64_t>& seq, std::size_t r);

struct MapDegreeResult {
  std::int64_t deg_image = 0;
  std::int64_t deg_map = 0;
  std::int64_t e_sat = 0;
  bool stable = false;
  bool identity_holds = false;  // e_sat == deg_image * deg_map
  LimitEstimate h1_limit, sat_limit;
  std::vector<PowerRow> power_table;
};

// Requires generic finiteness at the fiber; does not throw on instability.
MapDegreeResult map_degree_data(const RationalMap& map, const FiberPoint& fiber, unsigned k_max);
// Throws Unstable when the last two estimates disagree.
std::int64_t map_degree(const RationalMap& map, const FiberPoint& fiber, unsigned k_max);
std::int64_t saturated_fiber_multiplicity(const RationalMap& map, const FiberPoint& fiber, unsigned n_max);

// Number of points of G^{-1}(G(p)) outside the base locus for a seeded random p.
std::int64_t preimage_count(const RationalMap& map, const FiberPoint& fiber, std::uint64_t seed);

struct JMultiplicity {
  std::vector<std::int64_t> lengths;  // length H^0_m(J^n / J^{n+1}), n = 1..K
  LimitEstimate limit;
  std::int64_t j = 0;
  bool primary = false;  // J is m-primary
  std::optional<std::int64_t> samuel;
  bool samuel_stable = false;
};

JMultiplicity j_multiplicity_data(const std::vector<Poly>& ideal, const FiberPoint& fiber, unsigned k_max);
// Throws Unstable when the limit does not settle.
std::int64_t j_multiplicity(const std::vector<Poly>& ideal, const FiberPoint& fiber, unsigned k_max);

struct RatMapReport {
  std::string fiber;
  bool finite = false;
  std::int64_t deg_image = 0, deg_map = 0, e_sat = 0, j = 0;
  bool stable = false;
  bool identity_holds = false;
  std::optional<std::int64_t> oracle_deg_map;
  std::vector<PowerRow> power_table;
};

RatMapReport ratmap_report(const RationalMap& map, const FiberPoint& fiber, unsigned k_max, std::uint64_t seed);

struct ConstancyReport {
  HarnessVerdict verdict;
  std::vector<RatMapReport> reports;  // in sample order
};

// Samples fibers and compares deg Y, deg G, e_sat, j against the generic fiber.
ConstancyReport constancy_report(const RationalMap& map, const SamplerSpec& spec, unsigned k_max);

}  // namespace fibercoh
