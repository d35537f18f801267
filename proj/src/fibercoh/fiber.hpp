#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibercoh/resolution.hpp"

namespace fibercoh {

// A point of Spec(A): a closed point given by values of the base parameters
// (rational, or in a number field QQ[w]/(m)), or the generic point.
struct FiberPoint {
  enum class Kind { Closed, Generic };
  Kind kind = Kind::Generic;
  // Value expressions, one per base variable, in declaration order.
  std::vector<std::string> values;
  // For algebraic points: the generator name and its minimal polynomial.
  std::string ext_var;
  std::string minpoly;

  static FiberPoint generic() { return FiberPoint{}; }
  static FiberPoint rational(const std::vector<mpq_class>& v);
  static FiberPoint algebraic(std::vector<std::string> values, std::string ext_var, std::string minpoly);

  bool is_generic() const { return kind == Kind::Generic; }
  std::string label(const Ring& ring) const;
};

// Evaluation R -> R (x) k(n): substitutes the base parameters (closed points)
// or keeps R itself, read over the fraction field of A (generic point).
class FiberMap {
 public:
  FiberMap(const RingPtr& ring, const FiberPoint& point);

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const FiberPoint& point() const { return point_; }

  Poly operator()(const Poly& p) const;
  Vec operator()(const Vec& v) const;
  GradedMatrix operator()(const GradedMatrix& m) const;
  FreeModule operator()(const FreeModule& f) const { return FreeModule(target_, f.shifts); }
  FreeComplex operator()(const FreeComplex& c) const;
  std::vector<Poly> operator()(const std::vector<Poly>& ps) const;

 private:
  Poly base_value(std::size_t var, unsigned e) const;

  RingPtr source_, target_;
  FiberPoint point_;
  bool identity_ = false;
  std::vector<Poly> values_;  // indexed by position in z_indices
  mutable std::map<std::pair<std::size_t, unsigned>, Poly> power_cache_;
};

// Value of a base element at a rational point (throws if the point is not rational).
mpq_class evaluate_base_rational(const Poly& a, const std::vector<mpq_class>& point);

}  // namespace fibercoh
