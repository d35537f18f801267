#include "fibercoh/coeff.hpp"

#include "fibercoh/error.hpp"

namespace fibercoh {

CoeffField::CoeffField(std::uint64_t characteristic) : p_(characteristic) {
  if (p_ == 1) fail(ErrorCode::InvalidArgument, "characteristic 1 is not a field");
  if (p_ != 0) {
    modulus_ = mpz_class(std::to_string(p_));
    if (mpz_probab_prime_p(modulus_.get_mpz_t(), 30) == 0)
      fail(ErrorCode::InvalidArgument, "GF(p) requires a prime, got " + std::to_string(p_));
  }
}

void CoeffField::normalize(mpq_class& a) const {
  if (p_ == 0) {
    a.canonicalize();
    return;
  }
  mpz_class num = a.get_num() % modulus_;
  if (num < 0) num += modulus_;
  mpz_class den = a.get_den() % modulus_;
  if (den == 0) fail(ErrorCode::InvalidArgument, "denominator divisible by the characteristic");
  if (den != 1) {
    mpz_class dinv;
    mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), modulus_.get_mpz_t());
    num = (num * dinv) % modulus_;
  }
  a = mpq_class(num);
}

mpq_class CoeffField::from_int(long v) const {
  mpq_class a(v);
  normalize(a);
  return a;
}

mpq_class CoeffField::from_rational(const mpq_class& v) const {
  mpq_class a(v);
  normalize(a);
  return a;
}

mpq_class CoeffField::add(const mpq_class& a, const mpq_class& b) const {
  mpq_class r = a + b;
  if (p_ != 0) normalize(r);
  return r;
}

mpq_class CoeffField::sub(const mpq_class& a, const mpq_class& b) const {
  mpq_class r = a - b;
  if (p_ != 0) normalize(r);
  return r;
}

mpq_class CoeffField::mul(const mpq_class& a, const mpq_class& b) const {
  mpq_class r = a * b;
  if (p_ != 0) normalize(r);
  return r;
}

mpq_class CoeffField::neg(const mpq_class& a) const {
  mpq_class r = -a;
  if (p_ != 0) normalize(r);
  return r;
}

mpq_class CoeffField::inv(const mpq_class& a) const {
  if (sgn(a) == 0) fail(ErrorCode::InvalidArgument, "division by zero");
  if (p_ == 0) return 1 / a;
  mpz_class r;
  mpz_class n = a.get_num();
  mpz_invert(r.get_mpz_t(), n.get_mpz_t(), modulus_.get_mpz_t());
  return mpq_class(r);
}

std::string format_rational(const mpq_class& a) { return a.get_str(); }

}  // namespace fibercoh
