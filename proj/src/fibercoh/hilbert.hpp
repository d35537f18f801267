#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "fibercoh/groebner.hpp"

namespace fibercoh {

// Hilbert series N(t) / (1 - t)^n of R/I (or F/U) over the fiber field, for a
// standard graded ring with n x variables. Built from the x-parts of leading
// monomials, so over a polynomial base it describes the generic fiber.
struct HilbertSeries {
  std::vector<mpz_class> numerator;  // coefficients of N from t^0 up (may have a negative offset)
  std::int64_t offset = 0;           // N(t) = t^offset * sum numerator[i] t^i
  std::size_t nvars = 0;

  // Krull dimension (0 for the zero module, reported as -1).
  std::int64_t dimension() const;
  // Leading coefficient of the Hilbert polynomial times (dim - 1)!, i.e. the degree.
  mpz_class multiplicity() const;
  // dim of the degree-n piece.
  mpz_class value(std::int64_t n) const;
  // Total length; requires dimension() <= 0.
  mpz_class length() const;
};

HilbertSeries hilbert_series(const RingPtr& ring, const std::vector<Poly>& ideal);
HilbertSeries hilbert_series(const GroebnerBasis& gb);
// Difference HS(a) - HS(b) of two series over the same ring.
HilbertSeries hilbert_difference(const HilbertSeries& a, const HilbertSeries& b);

// Order-r forward differences of a sequence.
std::vector<std::int64_t> finite_differences(const std::vector<std::int64_t>& seq, std::size_t r);

}  // namespace fibercoh
