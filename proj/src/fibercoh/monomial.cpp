#include "fibercoh/monomial.hpp"

#include <algorithm>
#include <limits>

#include "fibercoh/error.hpp"

namespace fibercoh {

bool Monomial::is_one() const {
  return std::all_of(exp.begin(), exp.end(), [](std::uint16_t e) { return e == 0; });
}

int Monomial::total_degree() const {
  int s = 0;
  for (auto e : exp) s += e;
  return s;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (exp[i] > other.exp[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (exp[i] != 0 && other.exp[i] != 0) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(a.exp[i]) + unsigned(b.exp[i]);
    if (s > std::numeric_limits<std::uint16_t>::max())
      fail(ErrorCode::ExponentOverflow, "exponent exceeds 65535");
    r.exp[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (b.exp[i] > a.exp[i]) fail(ErrorCode::Internal, "monomial division is not exact");
    r.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
  }
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = std::max(a.exp[i], b.exp[i]);
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = std::min(a.exp[i], b.exp[i]);
  return r;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : m.exp) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

std::string format_degree(const Degree& d, int grading_rank) {
  if (grading_rank == 1) return std::to_string(d[0]);
  return "(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + ")";
}

}  // namespace fibercoh
