#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace fibercoh {

inline constexpr std::size_t kMaxVars = 16;

// Exponent vector over all ring variables. Unused slots stay zero, so equality
// and hashing never need the ring.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};

  bool operator==(const Monomial& o) const { return exp == o.exp; }
  bool operator!=(const Monomial& o) const { return exp != o.exp; }

  bool is_one() const;
  int total_degree() const;
  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend Monomial gcd(const Monomial& a, const Monomial& b);
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

// Grading group element: G = Z uses slot 0 only, G = Z^2 uses both.
using Degree = std::array<std::int64_t, 2>;

inline Degree operator+(const Degree& a, const Degree& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Degree operator-(const Degree& a, const Degree& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Degree operator-(const Degree& a) { return {-a[0], -a[1]}; }
inline Degree scale(const Degree& a, std::int64_t k) { return {a[0] * k, a[1] * k}; }

struct DegreeHash {
  std::size_t operator()(const Degree& d) const {
    return std::hash<std::int64_t>()(d[0]) * 1000003u ^ std::hash<std::int64_t>()(d[1]);
  }
};

std::string format_degree(const Degree& d, int grading_rank);

}  // namespace fibercoh
