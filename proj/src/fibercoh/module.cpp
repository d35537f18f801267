#include "fibercoh/module.hpp"

#include <algorithm>
#include <sstream>

#include "fibercoh/error.hpp"

namespace fibercoh {

namespace {

int vcompare(const Ring& ring, const VTerm& a, std::uint32_t bcomp, const Monomial& bm) {
  if (a.comp != bcomp) return a.comp < bcomp ? 1 : -1;
  return ring.compare(a.m, bm);
}

// a + s * m * b
std::vector<VTerm> merge_add(const Ring& ring, const std::vector<VTerm>& a, const mpq_class& s, const Monomial& m,
                             const std::vector<VTerm>& b) {
  const CoeffField& f = ring.field();
  std::vector<VTerm> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    Monomial bm = m * b[j].m;
    int cmp = i == a.size() ? -1 : vcompare(ring, a[i], b[j].comp, bm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(VTerm{b[j].comp, bm, f.mul(s, b[j].c)});
      ++j;
    } else {
      mpq_class v = f.add(a[i].c, f.mul(s, b[j].c));
      if (!CoeffField::is_zero(v)) out.push_back(VTerm{a[i].comp, bm, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Vec::Vec(RingPtr ring, std::vector<VTerm> terms) : ring_(std::move(ring)), terms_(std::move(terms)) { canonicalize(); }

void Vec::canonicalize() {
  const Ring& r = *ring_;
  std::sort(terms_.begin(), terms_.end(),
            [&r](const VTerm& a, const VTerm& b) { return vcompare(r, a, b.comp, b.m) > 0; });
  std::vector<VTerm> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().comp == t.comp && out.back().m == t.m) {
      out.back().c = r.field().add(out.back().c, t.c);
    } else {
      if (!out.empty() && CoeffField::is_zero(out.back().c)) out.pop_back();
      out.push_back(std::move(t));
      r.field().normalize(out.back().c);
    }
  }
  if (!out.empty() && CoeffField::is_zero(out.back().c)) out.pop_back();
  terms_ = std::move(out);
  if (r.has_base_ideal()) {
    // Reduce each component modulo J.
    std::vector<VTerm> reduced;
    std::size_t i = 0;
    while (i < terms_.size()) {
      std::uint32_t c = terms_[i].comp;
      TermList part;
      while (i < terms_.size() && terms_[i].comp == c) {
        part.push_back(Term{terms_[i].m, terms_[i].c});
        ++i;
      }
      r.reduce_base(part);
      for (auto& t : part) reduced.push_back(VTerm{c, t.m, std::move(t.c)});
    }
    terms_ = std::move(reduced);
  }
}

Vec Vec::from_components(RingPtr ring, const std::vector<Poly>& comps) {
  std::vector<VTerm> terms;
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (const auto& t : comps[i].terms()) terms.push_back(VTerm{static_cast<std::uint32_t>(i), t.m, t.c});
  Vec v(ring);
  v.terms_ = std::move(terms);  // already sorted and reduced per component
  return v;
}

Vec Vec::basis(RingPtr ring, std::uint32_t comp, const Poly& coeff) {
  std::vector<VTerm> terms;
  for (const auto& t : coeff.terms()) terms.push_back(VTerm{comp, t.m, t.c});
  Vec v(ring);
  v.terms_ = std::move(terms);
  return v;
}

Poly Vec::component(std::uint32_t i) const {
  TermList out;
  for (const auto& t : terms_)
    if (t.comp == i) out.push_back(Term{t.m, t.c});
  Poly p(ring_);
  if (!out.empty()) p = Poly(ring_, std::move(out));
  return p;
}

std::vector<Poly> Vec::components(std::size_t rank) const {
  std::vector<TermList> parts(std::max(rank, support_bound()));
  for (const auto& t : terms_) parts[t.comp].push_back(Term{t.m, t.c});
  std::vector<Poly> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(Poly(ring_, std::move(parts[i])));
  return out;
}

std::size_t Vec::support_bound() const { return terms_.empty() ? 0 : terms_.back().comp + 1; }

std::optional<Degree> Vec::degree(const std::vector<Degree>& shifts) const {
  if (terms_.empty()) return std::nullopt;
  std::optional<Degree> d;
  for (const auto& t : terms_) {
    if (t.comp >= shifts.size()) fail(ErrorCode::ShapeMismatch, "vector component outside the free module");
    Degree e = ring_->degree_of(t.m) + shifts[t.comp];
    if (!d) d = e;
    else if (*d != e) return std::nullopt;
  }
  return d;
}

Vec Vec::operator+(const Vec& o) const {
  if (!ring_) return o;
  if (!o.ring_) return *this;
  check_same_ring(*ring_, *o.ring_);
  Vec r(ring_);
  r.terms_ = merge_add(*ring_, terms_, 1, Monomial{}, o.terms_);
  return r;
}

Vec Vec::operator-(const Vec& o) const {
  if (!o.ring_) return *this;
  if (!ring_) return -o;
  check_same_ring(*ring_, *o.ring_);
  Vec r(ring_);
  r.terms_ = merge_add(*ring_, terms_, -1, Monomial{}, o.terms_);
  if (ring_->field().characteristic() != 0)
    for (auto& t : r.terms_) ring_->field().normalize(t.c);
  return r;
}

Vec Vec::operator-() const {
  Vec r = *this;
  for (auto& t : r.terms_) t.c = ring_->field().neg(t.c);
  return r;
}

Vec Vec::times_term(const Monomial& m, const mpq_class& c) const {
  Vec r(ring_);
  r.terms_ = merge_add(*ring_, {}, c, m, terms_);
  if (ring_->has_base_ideal()) r.canonicalize();
  return r;
}

Vec Vec::scaled(const Poly& f) const {
  Vec r(ring_);
  for (const auto& t : f.terms()) r.terms_ = merge_add(*ring_, r.terms_, t.c, t.m, terms_);
  if (ring_->has_base_ideal()) r.canonicalize();
  return r;
}

bool Vec::operator==(const Vec& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].comp != o.terms_[i].comp || terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c)
      return false;
  return true;
}

Vec Vec::shifted_components(std::int64_t offset) const {
  Vec r = *this;
  for (auto& t : r.terms_) {
    std::int64_t c = static_cast<std::int64_t>(t.comp) + offset;
    if (c < 0) fail(ErrorCode::Internal, "negative component after renumbering");
    t.comp = static_cast<std::uint32_t>(c);
  }
  return r;
}

Vec Vec::in_ring(const RingPtr& other) const {
  if (!ring_->same_variables(*other)) fail(ErrorCode::RingMismatch, "rings have different variables");
  return Vec(other, terms_);
}

std::string Vec::to_string() const {
  std::ostringstream os;
  os << "[";
  std::size_t n = support_bound();
  auto comps = components(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) os << ", ";
    os << comps[i].to_string();
  }
  os << "]";
  return os.str();
}

GradedMatrix::GradedMatrix(FreeModule src, FreeModule tgt, std::vector<Vec> cols)
    : source(std::move(src)), target(std::move(tgt)), columns(std::move(cols)) {
  if (columns.size() != source.rank()) fail(ErrorCode::ShapeMismatch, "column count differs from source rank");
  for (auto& c : columns)
    if (!c.ring()) c = Vec(target.ring);
}

GradedMatrix GradedMatrix::from_columns(const FreeModule& target, std::vector<Vec> cols, Degree zero_degree) {
  std::vector<Degree> shifts;
  for (auto& c : cols) {
    if (!c.ring()) c = Vec(target.ring);
    if (c.support_bound() > target.rank()) fail(ErrorCode::ShapeMismatch, "column longer than target rank");
    if (c.is_zero()) {
      shifts.push_back(zero_degree);
      continue;
    }
    auto d = c.degree(target.shifts);
    if (!d) fail(ErrorCode::Inhomogeneous, "column " + c.to_string() + " is not homogeneous");
    shifts.push_back(*d);
  }
  return GradedMatrix(FreeModule(target.ring, shifts), target, std::move(cols));
}

GradedMatrix GradedMatrix::from_entries(const FreeModule& target, const std::vector<std::vector<Poly>>& entries) {
  if (entries.size() != target.rank()) fail(ErrorCode::ShapeMismatch, "row count differs from target rank");
  std::size_t ncols = entries.empty() ? 0 : entries[0].size();
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < ncols; ++j) {
    std::vector<Poly> comps;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].size() != ncols) fail(ErrorCode::ShapeMismatch, "ragged matrix rows");
      comps.push_back(entries[i][j]);
    }
    cols.push_back(Vec::from_components(target.ring, comps));
  }
  return from_columns(target, std::move(cols));
}

GradedMatrix GradedMatrix::zero(const FreeModule& source, const FreeModule& target) {
  return GradedMatrix(source, target, std::vector<Vec>(source.rank(), Vec(target.ring)));
}

std::vector<std::vector<Poly>> GradedMatrix::dense() const {
  std::vector<std::vector<Poly>> out(rows(), std::vector<Poly>(cols(), Poly(ring())));
  for (std::size_t j = 0; j < cols(); ++j) {
    auto comps = columns[j].components(rows());
    for (std::size_t i = 0; i < rows(); ++i) out[i][j] = std::move(comps[i]);
  }
  return out;
}

void GradedMatrix::validate() const {
  if (columns.size() != source.rank()) fail(ErrorCode::ShapeMismatch, "column count differs from source rank");
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const Vec& c = columns[j];
    if (c.is_zero()) continue;
    if (c.support_bound() > target.rank()) fail(ErrorCode::ShapeMismatch, "column longer than target rank");
    auto d = c.degree(target.shifts);
    if (!d) fail(ErrorCode::Inhomogeneous, "column " + std::to_string(j) + " is not homogeneous");
    if (*d != source.shifts[j])
      fail(ErrorCode::Inhomogeneous, "column " + std::to_string(j) + " has degree " +
                                         format_degree(*d, ring()->grading_rank()) + " but source shift " +
                                         format_degree(source.shifts[j], ring()->grading_rank()));
  }
}

GradedMatrix GradedMatrix::transpose(const std::vector<Degree>& new_target_shifts,
                                     const std::vector<Degree>& new_source_shifts) const {
  auto d = dense();
  std::vector<std::vector<Poly>> rows_t(cols(), std::vector<Poly>(rows(), Poly(ring())));
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) rows_t[j][i] = d[i][j];
  std::vector<Vec> cols_t;
  for (std::size_t i = 0; i < rows(); ++i) {
    std::vector<Poly> comps;
    for (std::size_t j = 0; j < cols(); ++j) comps.push_back(d[i][j]);
    cols_t.push_back(Vec::from_components(ring(), comps));
  }
  return GradedMatrix(FreeModule(ring(), new_source_shifts), FreeModule(ring(), new_target_shifts),
                      std::move(cols_t));
}

Vec GradedMatrix::apply(const Vec& v) const {
  Vec out(ring());
  std::size_t n = v.support_bound();
  if (n > cols()) fail(ErrorCode::ShapeMismatch, "vector longer than source rank");
  auto comps = v.components(n);
  for (std::size_t j = 0; j < n; ++j)
    if (!comps[j].is_zero()) out = out + columns[j].scaled(comps[j]);
  return out;
}

GradedMatrix GradedMatrix::compose(const GradedMatrix& other) const {
  if (other.rows() != cols()) fail(ErrorCode::ShapeMismatch, "incompatible matrix shapes");
  std::vector<Vec> cols_out;
  for (const auto& c : other.columns) cols_out.push_back(apply(c));
  return GradedMatrix(other.source, target, std::move(cols_out));
}

bool GradedMatrix::is_zero() const {
  return std::all_of(columns.begin(), columns.end(), [](const Vec& c) { return c.is_zero(); });
}

ModulePresentation free_module_presentation(const FreeModule& f) { return GradedMatrix::zero(FreeModule(f.ring, {}), f); }

ModulePresentation quotient_presentation(const std::vector<Poly>& gens) {
  if (gens.empty()) fail(ErrorCode::InvalidArgument, "quotient needs at least one generator");
  RingPtr ring = gens[0].ring();
  std::vector<Vec> cols;
  for (const auto& g : gens) cols.push_back(Vec::basis(ring, 0, g));
  return GradedMatrix::from_columns(FreeModule(ring, {Degree{0, 0}}), std::move(cols));
}

GradedMatrix ideal_generators(const std::vector<Poly>& gens) { return quotient_presentation(gens); }

}  // namespace fibercoh
