#include "fibercoh/ring.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "fibercoh/error.hpp"
#include "fibercoh/groebner.hpp"
#include "fibercoh/poly.hpp"
#include "fibercoh/poly_io.hpp"

namespace fibercoh {

namespace {

std::vector<TermList> base_ideal_basis(const RingPtr& scratch, const std::vector<std::string>& gens) {
  std::vector<Poly> polys;
  for (const auto& text : gens) {
    Poly p = parse_poly(scratch, text);
    for (const auto& t : p.terms())
      if (!scratch->is_base_monomial(t.m))
        fail(ErrorCode::InvalidArgument, "base ideal generator involves non-base variables: " + text);
    if (!p.is_zero()) polys.push_back(std::move(p));
  }
  std::vector<TermList> out;
  for (const auto& g : ideal_groebner_basis(polys)) out.push_back(g.terms());
  return out;
}

}  // namespace

RingPtr Ring::make(const RingDescriptor& d) {
  if (d.grading_rank != 1 && d.grading_rank != 2)
    fail(ErrorCode::InvalidArgument, "grading group must be Z or Z^2");
  const std::size_t n = d.x_vars.size() + d.y_vars.size() + d.base_vars.size();
  if (n > kMaxVars) fail(ErrorCode::InvalidArgument, "too many variables (max 16)");
  if (d.x_vars.empty() && n > d.base_vars.size())
    fail(ErrorCode::InvalidArgument, "y variables require x variables");

  auto ring = std::shared_ptr<Ring>(new Ring());
  Ring& r = *ring;
  r.desc_ = d;
  r.field_ = CoeffField(d.characteristic);

  std::vector<std::int64_t> psi = d.psi;
  if (psi.empty()) psi = d.grading_rank == 1 ? std::vector<std::int64_t>{1} : std::vector<std::int64_t>{1, 1};
  if (psi.size() != static_cast<std::size_t>(d.grading_rank))
    fail(ErrorCode::InvalidArgument, "psi must have one entry per grading coordinate");
  r.psi_ = {psi[0], d.grading_rank == 2 ? psi[1] : 0};
  r.desc_.psi = psi;

  std::set<std::string> seen;
  auto add = [&](const std::string& name, VarRole role, Degree deg) {
    if (name.empty() || !seen.insert(name).second)
      fail(ErrorCode::InvalidArgument, "duplicate or empty variable name '" + name + "'");
    if (d.grading_rank == 1) deg[1] = 0;
    r.names_.push_back(name);
    r.roles_.push_back(role);
    r.degrees_.push_back(deg);
    const std::size_t idx = r.names_.size() - 1;
    if (role == VarRole::X) r.x_idx_.push_back(idx);
    if (role == VarRole::Y) r.y_idx_.push_back(idx);
    if (role == VarRole::Z) r.z_idx_.push_back(idx);
  };
  for (const auto& v : d.x_vars) add(v.name, VarRole::X, v.degree);
  for (const auto& v : d.y_vars) add(v.name, VarRole::Y, v.degree);
  for (const auto& z : d.base_vars) add(z, VarRole::Z, Degree{0, 0});

  for (std::size_t i : r.x_idx_) {
    if (r.psi(r.degrees_[i]) <= 0)
      fail(ErrorCode::PositivityViolation,
           "psi(deg " + r.names_[i] + ") = " + std::to_string(r.psi(r.degrees_[i])) + " is not positive");
    r.delta_ = r.delta_ + r.degrees_[i];
  }
  if (!r.y_idx_.empty()) {
    if (d.grading_rank != 2) fail(ErrorCode::BadBigrading, "y variables need a Z^2 grading");
    for (std::size_t i : r.x_idx_)
      if (r.degrees_[i][1] != 0 || r.degrees_[i][0] <= 0)
        fail(ErrorCode::BadBigrading, "x variable " + r.names_[i] + " must have bidegree (delta,0), delta>0");
    for (std::size_t i : r.y_idx_)
      if (r.degrees_[i][1] != 1 || r.degrees_[i][0] > 0)
        fail(ErrorCode::BadBigrading, "y variable " + r.names_[i] + " must have bidegree (-gamma,1), gamma>=0");
  }

  r.order_psi_ = r.psi_;
  for (std::size_t i : r.y_idx_) {
    if (r.psi(r.degrees_[i]) <= 0) {
      std::int64_t gamma = 0;
      for (std::size_t j : r.y_idx_) gamma = std::max(gamma, -r.degrees_[j][0]);
      r.order_psi_ = {1, gamma + 1};
      break;
    }
  }

  switch (d.base_kind) {
    case BaseKind::Field:
      if (!d.base_vars.empty() || !d.base_ideal.empty())
        fail(ErrorCode::InvalidArgument, "a field base has no parameters");
      break;
    case BaseKind::Polynomial:
      if (!d.base_ideal.empty()) fail(ErrorCode::InvalidArgument, "polynomial base has no defining ideal");
      break;
    case BaseKind::Quotient:
      if (d.base_vars.empty()) fail(ErrorCode::InvalidArgument, "quotient base needs parameters");
      break;
  }

  r.build_order();

  if (d.base_kind == BaseKind::Quotient && !d.base_ideal.empty()) {
    RingDescriptor scratch_desc = r.desc_;
    scratch_desc.base_kind = BaseKind::Polynomial;
    scratch_desc.base_ideal.clear();
    scratch_desc.base_is_field = false;
    RingPtr scratch = Ring::make(scratch_desc);
    r.base_gb_ = base_ideal_basis(scratch, d.base_ideal);
    if (r.base_gb_.size() == 1 && r.base_gb_[0].size() == 1 && r.base_gb_[0][0].m.is_one())
      fail(ErrorCode::InvalidArgument, "defining ideal of the base is the unit ideal");
  }
  return ring;
}

void Ring::build_order() {
  rows_.clear();
  const std::size_t n = names_.size();
  for (std::size_t e = 0; e < (elim_vars_.empty() ? 0 : 1); ++e) {
    std::vector<std::int64_t> row(kMaxVars, 0);
    for (auto v : elim_vars_) row[v] = 1;
    rows_.push_back(row);
  }
  degree_row_ = rows_.size();
  {
    std::vector<std::int64_t> row(kMaxVars, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (roles_[i] == VarRole::Z) continue;
      row[i] = order_weight(degrees_[i]);
    }
    rows_.push_back(row);
  }
  std::vector<std::size_t> xy;
  for (std::size_t i = 0; i < n; ++i)
    if (roles_[i] != VarRole::Z) xy.push_back(i);
  auto block = [&](const std::vector<std::size_t>& vars, bool with_degree_row) {
    if (vars.empty()) return;
    if (desc_.order == BlockOrderKind::Lex) {
      for (auto v : vars) {
        std::vector<std::int64_t> row(kMaxVars, 0);
        row[v] = 1;
        rows_.push_back(row);
      }
      return;
    }
    if (with_degree_row) {
      std::vector<std::int64_t> row(kMaxVars, 0);
      for (auto v : vars) row[v] = 1;
      rows_.push_back(row);
    }
    for (std::size_t k = vars.size(); k-- > 1;) {
      std::vector<std::int64_t> row(kMaxVars, 0);
      row[vars[k]] = -1;
      rows_.push_back(row);
    }
  };
  block(xy, false);
  block(z_idx_, true);
}

std::optional<std::size_t> Ring::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool Ring::standard_graded() const {
  if (grading_rank() != 1 || !y_idx_.empty()) return false;
  for (auto i : x_idx_)
    if (degrees_[i][0] != 1) return false;
  return true;
}

bool Ring::base_is_field() const {
  return desc_.base_kind == BaseKind::Field || (desc_.base_kind == BaseKind::Quotient && desc_.base_is_field);
}

bool Ring::base_is_domain() const { return desc_.base_kind != BaseKind::Quotient || desc_.base_is_field; }

std::int64_t Ring::row_dot(std::size_t row, const Monomial& m) const {
  const auto& w = rows_[row];
  std::int64_t s = 0;
  for (std::size_t i = 0; i < names_.size(); ++i) s += w[i] * m.exp[i];
  return s;
}

int Ring::compare(const Monomial& a, const Monomial& b) const {
  if (a == b) return 0;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::int64_t da = row_dot(r, a), db = row_dot(r, b);
    if (da != db) return da > db ? 1 : -1;
  }
  // Rows always separate distinct monomials; keep a total order regardless.
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
  return 0;
}

Degree Ring::degree_of(const Monomial& m) const {
  Degree d{0, 0};
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (m.exp[i] != 0 && roles_[i] != VarRole::Z) d = d + scale(degrees_[i], m.exp[i]);
  return d;
}

bool Ring::is_base_monomial(const Monomial& m) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (m.exp[i] != 0 && roles_[i] != VarRole::Z) return false;
  return true;
}

Monomial Ring::xy_part(const Monomial& m) const {
  Monomial r = m;
  for (auto i : z_idx_) r.exp[i] = 0;
  return r;
}

Monomial Ring::z_part(const Monomial& m) const {
  Monomial r;
  for (auto i : z_idx_) r.exp[i] = m.exp[i];
  return r;
}

Monomial Ring::variable(std::size_t i, std::uint16_t power) const {
  Monomial m;
  m.exp[i] = power;
  return m;
}

RingPtr Ring::with_elimination(const std::vector<std::size_t>& vars) const {
  auto ring = std::shared_ptr<Ring>(new Ring());
  Ring& r = *ring;
  r.desc_ = desc_;
  r.field_ = field_;
  r.names_ = names_;
  r.roles_ = roles_;
  r.degrees_ = degrees_;
  r.x_idx_ = x_idx_;
  r.y_idx_ = y_idx_;
  r.z_idx_ = z_idx_;
  r.psi_ = psi_;
  r.order_psi_ = order_psi_;
  r.delta_ = delta_;
  r.elim_vars_ = vars;
  std::sort(r.elim_vars_.begin(), r.elim_vars_.end());
  r.build_order();
  if (!base_gb_.empty()) {
    bool touches_base = false;
    for (auto v : vars)
      if (roles_[v] == VarRole::Z) touches_base = true;
    if (!touches_base) {
      r.base_gb_ = base_gb_;
    } else {
      RingDescriptor scratch_desc = desc_;
      scratch_desc.base_kind = BaseKind::Polynomial;
      scratch_desc.base_ideal.clear();
      scratch_desc.base_is_field = false;
      RingPtr scratch = Ring::make(scratch_desc)->with_elimination(vars);
      r.base_gb_ = base_ideal_basis(scratch, desc_.base_ideal);
    }
  }
  return ring;
}

RingPtr Ring::lifted() const {
  if (base_gb_.empty()) return shared_from_this();
  std::call_once(lifted_once_, [this] {
    auto ring = std::shared_ptr<Ring>(new Ring());
    Ring& r = *ring;
    r.desc_ = desc_;
    r.desc_.base_kind = BaseKind::Polynomial;
    r.desc_.base_ideal.clear();
    r.desc_.base_is_field = false;
    r.field_ = field_;
    r.names_ = names_;
    r.roles_ = roles_;
    r.degrees_ = degrees_;
    r.x_idx_ = x_idx_;
    r.y_idx_ = y_idx_;
    r.z_idx_ = z_idx_;
    r.psi_ = psi_;
    r.order_psi_ = order_psi_;
    r.delta_ = delta_;
    r.elim_vars_ = elim_vars_;
    r.build_order();
    lifted_ = ring;
  });
  return lifted_;
}

bool Ring::same_variables(const Ring& o) const {
  return names_ == o.names_ && roles_ == o.roles_ && degrees_ == o.degrees_ && field_ == o.field_ &&
         desc_.base_ideal == o.desc_.base_ideal && desc_.base_kind == o.desc_.base_kind;
}

void Ring::enumerate_x(const Degree& d, std::vector<Monomial>& out) const {
  if (x_idx_.empty()) {
    if (d == Degree{0, 0}) out.push_back(Monomial{});
    return;
  }
  Monomial cur;
  std::function<void(std::size_t, Degree)> rec = [&](std::size_t k, Degree rem) {
    const std::size_t v = x_idx_[k];
    const Degree& dv = degrees_[v];
    const std::int64_t pv = psi(dv);
    if (psi(rem) < 0) return;
    if (k + 1 == x_idx_.size()) {
      std::int64_t e = psi(rem) / pv;
      if (psi(rem) % pv != 0) return;
      if (scale(dv, e) != rem) return;
      if (e > 65535) fail(ErrorCode::ExponentOverflow, "strand degree too large");
      cur.exp[v] = static_cast<std::uint16_t>(e);
      out.push_back(cur);
      cur.exp[v] = 0;
      return;
    }
    for (std::int64_t e = 0; pv * e <= psi(rem); ++e) {
      cur.exp[v] = static_cast<std::uint16_t>(e);
      rec(k + 1, rem - scale(dv, e));
    }
    cur.exp[v] = 0;
  };
  rec(0, d);
}

const std::vector<Monomial>& Ring::x_monomials_of_degree(const Degree& d) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = xmono_cache_.find(d);
  if (it != xmono_cache_.end()) return it->second;
  std::vector<Monomial> out;
  enumerate_x(d, out);
  std::sort(out.begin(), out.end(), [this](const Monomial& a, const Monomial& b) { return compare(a, b) > 0; });
  return xmono_cache_.emplace(d, std::move(out)).first->second;
}

const std::vector<Monomial>& Ring::y_monomials_of_count(int k) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = ymono_cache_.find(k);
    if (it != ymono_cache_.end()) return it->second;
  }
  std::vector<Monomial> out;
  if (k >= 0) {
    Monomial cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int rem) {
      const std::size_t v = y_idx_[j];
      if (j + 1 == y_idx_.size()) {
        cur.exp[v] = static_cast<std::uint16_t>(rem);
        out.push_back(cur);
        cur.exp[v] = 0;
        return;
      }
      for (int e = 0; e <= rem; ++e) {
        cur.exp[v] = static_cast<std::uint16_t>(e);
        rec(j + 1, rem - e);
      }
      cur.exp[v] = 0;
    };
    if (y_idx_.empty()) {
      if (k == 0) out.push_back(Monomial{});
    } else {
      rec(0, k);
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return ymono_cache_.emplace(k, std::move(out)).first->second;
}

const std::vector<Monomial>& Ring::monomials_of_degree(const Degree& d) const {
  if (!bigraded()) return x_monomials_of_degree(d);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = mono_cache_.find(d);
    if (it != mono_cache_.end()) return it->second;
  }
  std::vector<Monomial> out;
  if (d[1] >= 0) {
    for (const auto& ym : y_monomials_of_count(static_cast<int>(d[1]))) {
      Degree rest = d - degree_of(ym);
      for (const auto& xm : x_monomials_of_degree(rest)) out.push_back(xm * ym);
    }
  }
  std::sort(out.begin(), out.end(), [this](const Monomial& a, const Monomial& b) { return compare(a, b) > 0; });
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return mono_cache_.emplace(d, std::move(out)).first->second;
}

void Ring::reduce_base(TermList& terms) const {
  if (base_gb_.empty() || terms.empty()) return;
  reduce_terms(*this, terms, base_gb_);
}

void check_same_ring(const Ring& a, const Ring& b) {
  if (&a == &b) return;
  if (!a.same_variables(b) || a.order_rows() != b.order_rows())
    fail(ErrorCode::RingMismatch, "operands live in different rings");
}

}  // namespace fibercoh
