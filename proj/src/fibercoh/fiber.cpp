#include "fibercoh/fiber.hpp"

#include <sstream>

#include "fibercoh/error.hpp"
#include "fibercoh/poly_io.hpp"

namespace fibercoh {

FiberPoint FiberPoint::rational(const std::vector<mpq_class>& v) {
  FiberPoint p;
  p.kind = Kind::Closed;
  for (const auto& x : v) p.values.push_back(x.get_str());
  return p;
}

FiberPoint FiberPoint::algebraic(std::vector<std::string> values, std::string ext_var, std::string minpoly) {
  FiberPoint p;
  p.kind = Kind::Closed;
  p.values = std::move(values);
  p.ext_var = std::move(ext_var);
  p.minpoly = std::move(minpoly);
  return p;
}

std::string FiberPoint::label(const Ring& ring) const {
  if (is_generic()) return "generic";
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ", ";
    if (i < ring.num_z()) os << ring.var_name(ring.z_indices()[i]) << "=";
    os << values[i];
  }
  os << ")";
  if (!minpoly.empty()) os << " over " << minpoly << " = 0";
  return os.str();
}

namespace {

RingPtr fiber_ring(const RingPtr& ring, const FiberPoint& pt) {
  RingDescriptor d = ring->descriptor();
  d.base_vars.clear();
  d.base_ideal.clear();
  d.base_is_field = false;
  if (pt.minpoly.empty()) {
    d.base_kind = BaseKind::Field;
  } else {
    if (ring->field().characteristic() != 0)
      fail(ErrorCode::UnsupportedBase, "number-field points need characteristic zero");
    d.base_kind = BaseKind::Quotient;
    d.base_vars = {pt.ext_var};
    d.base_ideal = {pt.minpoly};
    d.base_is_field = true;
  }
  return Ring::make(d);
}

}  // namespace

FiberMap::FiberMap(const RingPtr& ring, const FiberPoint& point) : source_(ring), point_(point) {
  if (point.is_generic()) {
    if (!ring->base_is_domain())
      fail(ErrorCode::BaseNotDomain, "the generic point needs a domain base; use per-component points");
    target_ = ring;
    identity_ = true;
    return;
  }
  if (point.values.size() != ring->num_z())
    fail(ErrorCode::InvalidArgument, "point has " + std::to_string(point.values.size()) + " coordinates but the base has " +
                                         std::to_string(ring->num_z()) + " parameters");
  if (ring->num_z() == 0) {
    target_ = ring;
    identity_ = true;
    return;
  }
  if (ring->base_kind() == BaseKind::Quotient && ring->base_is_field())
    fail(ErrorCode::UnsupportedBase, "closed points of a number-field base are not supported");
  target_ = fiber_ring(ring, point);
  for (const auto& v : point.values) {
    Poly p = parse_poly(target_, v);
    if (!p.is_base_element()) fail(ErrorCode::InvalidArgument, "point coordinate '" + v + "' involves ring variables");
    values_.push_back(std::move(p));
  }
  // J(alpha) = 0.
  for (const auto& j : ring->base_ideal_gb()) {
    Poly g(ring->lifted(), j);
    if (!(*this)(g).is_zero())
      fail(ErrorCode::NotOnVariety, "point " + point.label(*ring) + " does not satisfy " + g.to_string() + " = 0");
  }
}

Poly FiberMap::base_value(std::size_t k, unsigned e) const {
  auto key = std::make_pair(k, e);
  auto it = power_cache_.find(key);
  if (it != power_cache_.end()) return it->second;
  Poly v = values_[k].pow(e);
  power_cache_.emplace(key, v);
  return v;
}

Poly FiberMap::operator()(const Poly& p) const {
  if (identity_) return p.ring() == target_ ? p : Poly(target_, p.terms());
  const auto& z = source_->z_indices();
  Poly out(target_);
  TermList plain;
  for (const auto& t : p.terms()) {
    Monomial xy = source_->xy_part(t.m);
    Poly factor = Poly::monomial(target_, xy, t.c);
    bool pure = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      unsigned e = t.m.exp[z[k]];
      if (e == 0) continue;
      pure = false;
      factor = factor * base_value(k, e);
    }
    if (pure && target_->num_z() == 0) {
      plain.push_back(Term{xy, t.c});
    } else {
      out += factor;
    }
  }
  if (!plain.empty()) out += Poly(target_, std::move(plain));
  return out;
}

Vec FiberMap::operator()(const Vec& v) const {
  if (!v.ring()) return Vec(target_);
  if (identity_) return v.ring() == target_ ? v : Vec(target_, v.terms());
  std::size_t n = v.support_bound();
  auto comps = v.components(n);
  std::vector<Poly> out;
  for (const auto& c : comps) out.push_back((*this)(c));
  return Vec::from_components(target_, out);
}

GradedMatrix FiberMap::operator()(const GradedMatrix& m) const {
  std::vector<Vec> cols;
  for (const auto& c : m.columns) cols.push_back((*this)(c));
  return GradedMatrix((*this)(m.source), (*this)(m.target), std::move(cols));
}

FreeComplex FiberMap::operator()(const FreeComplex& c) const {
  FreeComplex out;
  out.complete = c.complete;
  for (const auto& f : c.modules) out.modules.push_back((*this)(f));
  for (const auto& m : c.maps) out.maps.push_back((*this)(m));
  return out;
}

std::vector<Poly> FiberMap::operator()(const std::vector<Poly>& ps) const {
  std::vector<Poly> out;
  for (const auto& p : ps) out.push_back((*this)(p));
  return out;
}

mpq_class evaluate_base_rational(const Poly& a, const std::vector<mpq_class>& point) {
  const Ring& r = *a.ring();
  const auto& z = r.z_indices();
  if (point.size() != z.size()) fail(ErrorCode::InvalidArgument, "point dimension mismatch");
  mpq_class sum = 0;
  for (const auto& t : a.terms()) {
    if (!r.is_base_monomial(t.m)) fail(ErrorCode::InvalidArgument, "not a base element: " + a.to_string());
    mpq_class v = t.c;
    for (std::size_t k = 0; k < z.size(); ++k) {
      mpq_class p = 1;
      for (unsigned e = 0; e < t.m.exp[z[k]]; ++e) p *= point[k];
      v *= p;
    }
    sum += v;
  }
  r.field().normalize(sum);
  return sum;
}

}  // namespace fibercoh
