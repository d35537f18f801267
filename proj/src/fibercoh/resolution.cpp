#include "fibercoh/resolution.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fibercoh/error.hpp"
#include "fibercoh/linalg.hpp"

namespace fibercoh {

FreeModule FreeComplex::module(int i) const {
  if (i < 0 || i >= static_cast<int>(modules.size())) return FreeModule(ring(), {});
  return modules[static_cast<std::size_t>(i)];
}

GradedMatrix FreeComplex::differential(int i) const {
  if (i >= 1 && i <= static_cast<int>(maps.size())) return maps[static_cast<std::size_t>(i - 1)];
  return GradedMatrix::zero(module(i), module(i - 1));
}

void FreeComplex::check() const {
  for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    if (!maps[i].compose(maps[i + 1]).is_zero())
      fail(ErrorCode::Internal, "complex differentials do not compose to zero at position " + std::to_string(i + 1));
}

FreeModule DualComplex::module(int i) const {
  RingPtr ring = modules.empty() ? RingPtr() : modules[0].ring;
  if (i < 0 || i >= static_cast<int>(modules.size())) return FreeModule(ring, {});
  return modules[static_cast<std::size_t>(i)];
}

GradedMatrix DualComplex::differential(int i) const {
  if (i >= 0 && i < static_cast<int>(maps.size())) return maps[static_cast<std::size_t>(i)];
  return GradedMatrix::zero(module(i), module(i + 1));
}

int BettiTable::at(int i, const Degree& d) const {
  auto it = entries.find({i, d});
  return it == entries.end() ? 0 : it->second;
}

std::string BettiTable::to_csv(const Ring& ring) const {
  std::map<int, std::map<std::int64_t, int>> rows;
  std::set<std::int64_t> cols;
  for (const auto& [key, n] : entries) {
    std::int64_t p = ring.psi(key.second);
    rows[key.first][p] += n;
    cols.insert(p);
  }
  std::ostringstream os;
  os << "i";
  for (auto c : cols) os << "," << c;
  os << "\n";
  for (const auto& [i, row] : rows) {
    os << i;
    for (auto c : cols) {
      auto it = row.find(c);
      os << "," << (it == row.end() ? 0 : it->second);
    }
    os << "\n";
  }
  return os.str();
}

int default_resolution_length(const Ring& ring) {
  return static_cast<int>(ring.num_x() + ring.num_y() + ring.num_z()) + 1;
}

FreeComplex free_resolution(const ModulePresentation& m) { return free_resolution(m, default_resolution_length(*m.ring())); }

FreeComplex free_resolution(const ModulePresentation& m, int length) {
  if (length < 0) fail(ErrorCode::InvalidArgument, "resolution length must be nonnegative");
  m.validate();
  FreeComplex c;
  c.modules.push_back(m.target);
  GradedMatrix phi = prune_relations(m);
  if (phi.cols() == 0) {
    c.complete = true;
  } else if (length > 0) {
    c.modules.push_back(phi.source);
    c.maps.push_back(phi);
    for (;;) {
      GradedMatrix next = kernel(c.maps.back());
      if (next.cols() == 0) {
        c.complete = true;
        break;
      }
      if (c.length() >= length) break;
      c.modules.push_back(next.source);
      c.maps.push_back(std::move(next));
    }
  }
  if (m.ring()->base_is_field()) c = minimalize(c);
  return c;
}

namespace {

using Dense = std::vector<std::vector<Poly>>;

bool is_unit_entry(const Poly& p) { return !p.is_zero() && p.is_base_element(); }

}  // namespace

FreeComplex minimalize(const FreeComplex& c) {
  RingPtr ring = c.ring();
  if (!ring) return c;
  if (!ring->base_is_field()) fail(ErrorCode::BaseNotField, "minimalization needs a field base; evaluate at a fiber first");
  BaseAlgebra alg(ring);
  std::vector<std::vector<Degree>> shifts;
  for (const auto& f : c.modules) shifts.push_back(f.shifts);
  std::vector<Dense> mats;
  for (const auto& m : c.maps) mats.push_back(m.dense());
  auto rows_of = [&](std::size_t k) { return shifts[k].size(); };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < mats.size() && !changed; ++k) {
      // mats[k] : F_{k+1} -> F_k
      Dense& phi = mats[k];
      const std::size_t nr = rows_of(k), nc = rows_of(k + 1);
      for (std::size_t a = 0; a < nr && !changed; ++a) {
        for (std::size_t b = 0; b < nc && !changed; ++b) {
          if (!is_unit_entry(phi[a][b])) continue;
          Poly uinv = alg.inverse(phi[a][b]);
          Dense np;
          for (std::size_t i = 0; i < nr; ++i) {
            if (i == a) continue;
            std::vector<Poly> row;
            Poly f = phi[i][b] * uinv;
            for (std::size_t j = 0; j < nc; ++j) {
              if (j == b) continue;
              row.push_back(f.is_zero() ? phi[i][j] : phi[i][j] - f * phi[a][j]);
            }
            np.push_back(std::move(row));
          }
          phi = std::move(np);
          if (k > 0) {
            for (auto& row : mats[k - 1]) row.erase(row.begin() + static_cast<std::ptrdiff_t>(a));
          }
          if (k + 1 < mats.size()) mats[k + 1].erase(mats[k + 1].begin() + static_cast<std::ptrdiff_t>(b));
          shifts[k].erase(shifts[k].begin() + static_cast<std::ptrdiff_t>(a));
          shifts[k + 1].erase(shifts[k + 1].begin() + static_cast<std::ptrdiff_t>(b));
          changed = true;
        }
      }
    }
  }
  FreeComplex out;
  out.complete = c.complete;
  for (auto& s : shifts) out.modules.push_back(FreeModule(ring, s));
  for (std::size_t k = 0; k < mats.size(); ++k) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < shifts[k + 1].size(); ++j) {
      std::vector<Poly> comps;
      for (std::size_t i = 0; i < shifts[k].size(); ++i) comps.push_back(mats[k][i][j]);
      cols.push_back(Vec::from_components(ring, comps));
    }
    out.maps.push_back(GradedMatrix(out.modules[k + 1], out.modules[k], std::move(cols)));
  }
  // Drop trailing zero modules.
  while (out.modules.size() > 1 && out.modules.back().rank() == 0) {
    out.modules.pop_back();
    out.maps.pop_back();
    out.complete = true;
  }
  return out;
}

bool is_minimal(const FreeComplex& c) {
  for (const auto& m : c.maps)
    for (const auto& col : m.columns)
      for (const auto& t : col.terms())
        if (c.ring()->is_base_monomial(t.m)) return false;
  return true;
}

FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b) {
  RingPtr ring = a.ring() ? a.ring() : b.ring();
  FreeComplex out;
  const int n = std::max(a.length(), b.length());
  for (int i = 0; i <= n; ++i) {
    auto s = a.module(i).shifts;
    auto t = b.module(i).shifts;
    s.insert(s.end(), t.begin(), t.end());
    out.modules.push_back(FreeModule(ring, s));
  }
  for (int i = 1; i <= n; ++i) {
    GradedMatrix pa = a.differential(i), pb = b.differential(i);
    const auto off = static_cast<std::int64_t>(a.module(i - 1).rank());
    std::vector<Vec> cols;
    for (const auto& c : pa.columns) cols.push_back(c.ring() ? c : Vec(ring));
    for (const auto& c : pb.columns) cols.push_back(c.ring() ? c.shifted_components(off) : Vec(ring));
    out.maps.push_back(GradedMatrix(out.modules[static_cast<std::size_t>(i)],
                                    out.modules[static_cast<std::size_t>(i - 1)], std::move(cols)));
  }
  out.complete = a.complete && b.complete;
  return out;
}

BettiTable betti_table(const FreeComplex& c) {
  BettiTable t;
  if (c.ring()) t.grading_rank = c.ring()->grading_rank();
  for (std::size_t i = 0; i < c.modules.size(); ++i)
    for (const auto& s : c.modules[i].shifts) t.entries[{static_cast<int>(i), s}] += 1;
  return t;
}

DualComplex dual_complex(const FreeComplex& c, const Degree& twist) {
  DualComplex d;
  d.complete = c.complete;
  RingPtr ring = c.ring();
  for (const auto& f : c.modules) {
    std::vector<Degree> s;
    for (const auto& a : f.shifts) s.push_back(-a - twist);
    d.modules.push_back(FreeModule(ring, s));
  }
  for (std::size_t i = 0; i < c.maps.size(); ++i)
    d.maps.push_back(c.maps[i].transpose(d.modules[i + 1].shifts, d.modules[i].shifts));
  return d;
}

FreeComplex dual_of_dual(const DualComplex& d, const Degree& twist) {
  FreeComplex c;
  c.complete = d.complete;
  RingPtr ring = d.modules.empty() ? RingPtr() : d.modules[0].ring;
  for (const auto& f : d.modules) {
    std::vector<Degree> s;
    for (const auto& a : f.shifts) s.push_back(-a - twist);
    c.modules.push_back(FreeModule(ring, s));
  }
  for (std::size_t i = 0; i < d.maps.size(); ++i)
    c.maps.push_back(d.maps[i].transpose(c.modules[i].shifts, c.modules[i + 1].shifts));
  return c;
}

ModulePresentation d_top_cokernel(const FreeComplex& c, int r) {
  if (!c.complete && c.length() < r + 1)
    fail(ErrorCode::TooShort, "resolution of length " + std::to_string(c.length()) + " is too short for D^" +
                                  std::to_string(r + 1));
  DualComplex d = dual_complex(c, Degree{0, 0});
  return d.differential(r);
}

std::vector<ModulePresentation> ext_modules(const FreeComplex& res, const Degree& twist, int top) {
  if (!res.complete && res.length() < top + 1)
    fail(ErrorCode::TooShort, "resolution too short for Ext^" + std::to_string(top));
  DualComplex d = dual_complex(res, twist);
  std::vector<ModulePresentation> out;
  for (int j = 0; j <= top; ++j) {
    GradedMatrix dj = d.differential(j);
    GradedMatrix dprev = d.differential(j - 1);
    GradedMatrix z = kernel(dj);
    out.push_back(subquotient(z.columns, dprev.columns, d.module(j)));
  }
  return out;
}

std::vector<ModulePresentation> ext_modules(const ModulePresentation& m, const Degree& twist, int top) {
  return ext_modules(free_resolution(m, std::max(top + 1, default_resolution_length(*m.ring()))), twist, top);
}

ModulePresentation homology_module(const FreeComplex& c, int i) {
  GradedMatrix z = kernel(c.differential(i));
  return subquotient(z.columns, c.differential(i + 1).columns, c.module(i));
}

}  // namespace fibercoh
