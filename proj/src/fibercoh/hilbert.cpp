#include "fibercoh/hilbert.hpp"

#include <algorithm>

#include "fibercoh/error.hpp"

namespace fibercoh {

namespace {

using TPoly = std::vector<mpz_class>;
using Exps = std::vector<std::vector<unsigned>>;

void trim(TPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

TPoly add_shifted(TPoly a, const TPoly& b, std::size_t shift, int sign) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += sign * b[i];
  trim(a);
  return a;
}

TPoly mul(const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  TPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

unsigned deg(const std::vector<unsigned>& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

bool divides(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

void minimalize(Exps& g) {
  std::sort(g.begin(), g.end(), [](const auto& a, const auto& b) { return deg(a) < deg(b); });
  Exps out;
  for (const auto& m : g) {
    bool red = false;
    for (const auto& o : out)
      if (divides(o, m)) {
        red = true;
        break;
      }
    if (!red) out.push_back(m);
  }
  g = std::move(out);
}

// Numerator of the Hilbert series of S / (monomial ideal g), S standard graded.
TPoly numerator(Exps g) {
  minimalize(g);
  if (g.empty()) return {1};
  for (const auto& m : g)
    if (deg(m) == 0) return {};
  const std::size_t n = g[0].size();
  std::vector<std::size_t> count(n, 0);
  for (const auto& m : g)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i] > 0) ++count[i];
  std::size_t v = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (count[i] > count[v]) v = i;
  if (count[v] <= 1) {
    TPoly p{1};
    for (const auto& m : g) {
      TPoly f(deg(m) + 1);
      f[0] = 1;
      f[deg(m)] -= 1;
      p = mul(p, f);
    }
    return p;
  }
  unsigned e = 0;
  for (const auto& m : g)
    if (m[v] > 0 && (e == 0 || m[v] < e)) e = m[v];
  std::vector<unsigned> p(n, 0);
  p[v] = e;
  Exps plus = g, colon;
  plus.push_back(p);
  for (auto m : g) {
    m[v] = m[v] > e ? m[v] - e : 0;
    colon.push_back(std::move(m));
  }
  return add_shifted(numerator(std::move(plus)), numerator(std::move(colon)), e, 1);
}

std::vector<unsigned> x_exps(const Ring& ring, const Monomial& m) {
  std::vector<unsigned> out;
  for (auto i : ring.x_indices()) out.push_back(m.exp[i]);
  return out;
}

mpz_class binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Divides by (1 - t) as long as N(1) = 0; returns the number of divisions.
std::size_t strip_ones(TPoly& p, std::size_t limit) {
  std::size_t k = 0;
  while (k < limit && !p.empty()) {
    mpz_class s = 0;
    for (const auto& c : p) s += c;
    if (sgn(s) != 0) break;
    TPoly q(p.size() - 1);
    mpz_class acc = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      acc += p[i];
      q[i] = acc;
    }
    trim(q);
    p = std::move(q);
    ++k;
  }
  return k;
}

}  // namespace

std::int64_t HilbertSeries::dimension() const {
  if (numerator.empty()) return -1;
  TPoly p = numerator;
  return static_cast<std::int64_t>(nvars - strip_ones(p, nvars));
}

mpz_class HilbertSeries::multiplicity() const {
  if (numerator.empty()) return 0;
  TPoly p = numerator;
  strip_ones(p, nvars);
  mpz_class s = 0;
  for (const auto& c : p) s += c;
  return s;
}

mpz_class HilbertSeries::value(std::int64_t n) const {
  mpz_class s = 0;
  for (std::size_t i = 0; i < numerator.size(); ++i) {
    std::int64_t m = n - offset - static_cast<std::int64_t>(i);
    if (m < 0) continue;
    if (nvars == 0) {
      if (m == 0) s += numerator[i];
      continue;
    }
    s += numerator[i] * binom(m + static_cast<std::int64_t>(nvars) - 1, static_cast<std::int64_t>(nvars) - 1);
  }
  return s;
}

mpz_class HilbertSeries::length() const {
  if (dimension() > 0) fail(ErrorCode::InvalidArgument, "module of positive dimension has infinite length");
  return multiplicity();
}

HilbertSeries hilbert_series(const GroebnerBasis& gb) {
  const Ring& ring = *gb.ring();
  if (!ring.standard_graded()) fail(ErrorCode::NotStandardGraded, "Hilbert series need a standard graded ring");
  const FreeModule& f = gb.ambient();
  std::vector<Exps> per(f.rank());
  for (const auto& [c, m] : gb.leading_terms()) per[c].push_back(x_exps(ring, ring.xy_part(m)));
  HilbertSeries hs;
  hs.nvars = ring.num_x();
  if (f.rank() == 0) return hs;
  std::int64_t lo = f.shifts[0][0];
  for (const auto& s : f.shifts) lo = std::min(lo, s[0]);
  hs.offset = lo;
  TPoly total;
  for (std::size_t c = 0; c < f.rank(); ++c) {
    Exps g = per[c];
    for (auto& m : g) m.resize(ring.num_x());
    TPoly n = ring.num_x() == 0 ? (per[c].empty() ? TPoly{1} : TPoly{}) : numerator(std::move(g));
    total = add_shifted(total, n, static_cast<std::size_t>(f.shifts[c][0] - lo), 1);
  }
  hs.numerator = std::move(total);
  return hs;
}

HilbertSeries hilbert_series(const RingPtr& ring, const std::vector<Poly>& ideal) {
  std::vector<Poly> g;
  for (const auto& p : ideal)
    if (!p.is_zero()) g.push_back(p);
  if (g.empty()) {
    if (!ring->standard_graded()) fail(ErrorCode::NotStandardGraded, "Hilbert series need a standard graded ring");
    HilbertSeries hs;
    hs.nvars = ring->num_x();
    hs.numerator = {1};
    return hs;
  }
  return hilbert_series(groebner_basis(g));
}

HilbertSeries hilbert_difference(const HilbertSeries& a, const HilbertSeries& b) {
  if (a.nvars != b.nvars) fail(ErrorCode::RingMismatch, "Hilbert series over different rings");
  HilbertSeries out;
  out.nvars = a.nvars;
  out.offset = std::min(a.offset, b.offset);
  TPoly n = add_shifted({}, a.numerator, static_cast<std::size_t>(a.offset - out.offset), 1);
  n = add_shifted(n, b.numerator, static_cast<std::size_t>(b.offset - out.offset), -1);
  out.numerator = std::move(n);
  return out;
}

std::vector<std::int64_t> finite_differences(const std::vector<std::int64_t>& seq, std::size_t r) {
  std::vector<std::int64_t> cur = seq;
  for (std::size_t k = 0; k < r && !cur.empty(); ++k) {
    std::vector<std::int64_t> next;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) next.push_back(cur[i + 1] - cur[i]);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace fibercoh
