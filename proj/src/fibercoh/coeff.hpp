#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace fibercoh {

// Coefficient arithmetic for QQ (characteristic 0) or GF(p).
// Prime-field values are stored as integers in [0, p).
class CoeffField {
 public:
  explicit CoeffField(std::uint64_t characteristic = 0);

  std::uint64_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  void normalize(mpq_class& a) const;
  mpq_class from_int(long v) const;
  mpq_class from_rational(const mpq_class& v) const;

  mpq_class add(const mpq_class& a, const mpq_class& b) const;
  mpq_class sub(const mpq_class& a, const mpq_class& b) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const;
  mpq_class neg(const mpq_class& a) const;
  mpq_class inv(const mpq_class& a) const;
  mpq_class div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }

  static bool is_zero(const mpq_class& a) { return sgn(a) == 0; }
  static bool is_one(const mpq_class& a) { return a == 1; }

  bool operator==(const CoeffField& o) const { return p_ == o.p_; }

 private:
  std::uint64_t p_;
  mpz_class modulus_;
};

std::string format_rational(const mpq_class& a);

}  // namespace fibercoh
