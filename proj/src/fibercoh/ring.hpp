#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fibercoh/coeff.hpp"
#include "fibercoh/monomial.hpp"
#include "fibercoh/term.hpp"

namespace fibercoh {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// X variables generate the irrelevant ideal; Y variables appear only in the
// bigraded setting; Z variables are the parameters of the base ring A and
// carry degree zero.
enum class VarRole { X, Y, Z };
enum class BaseKind { Field, Polynomial, Quotient };
enum class BlockOrderKind { GRevLex, Lex };

struct VariableSpec {
  std::string name;
  Degree degree{0, 0};
};

struct RingDescriptor {
  std::uint64_t characteristic = 0;
  BaseKind base_kind = BaseKind::Field;
  std::vector<std::string> base_vars;
  // Generators of the defining ideal J of A = k[z]/J, written in the base variables.
  std::vector<std::string> base_ideal;
  // Set when k[z]/J is known to be a field (residue fields of closed points).
  bool base_is_field = false;
  int grading_rank = 1;
  std::vector<VariableSpec> x_vars;
  std::vector<VariableSpec> y_vars;
  // Positivity functional psi: G -> Z; empty selects (1) or (1,1).
  std::vector<std::int64_t> psi;
  BlockOrderKind order = BlockOrderKind::GRevLex;
};

// Immutable multigraded polynomial ring R = A[x, y] with A = k, k[z] or k[z]/J.
class Ring : public std::enable_shared_from_this<Ring> {
 public:
  static RingPtr make(const RingDescriptor& descriptor);

  const RingDescriptor& descriptor() const { return desc_; }
  std::size_t nvars() const { return names_.size(); }
  const std::string& var_name(std::size_t i) const { return names_[i]; }
  VarRole role(std::size_t i) const { return roles_[i]; }
  const Degree& var_degree(std::size_t i) const { return degrees_[i]; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  const std::vector<std::size_t>& x_indices() const { return x_idx_; }
  const std::vector<std::size_t>& y_indices() const { return y_idx_; }
  const std::vector<std::size_t>& z_indices() const { return z_idx_; }
  std::size_t num_x() const { return x_idx_.size(); }
  std::size_t num_y() const { return y_idx_.size(); }
  std::size_t num_z() const { return z_idx_.size(); }
  bool bigraded() const { return !y_idx_.empty(); }

  int grading_rank() const { return desc_.grading_rank; }
  std::int64_t psi(const Degree& d) const { return psi_[0] * d[0] + psi_[1] * d[1]; }
  // Functional used by the degree row of the monomial order; equals psi unless
  // some y variable has psi <= 0, in which case (1, 1 + max gamma) is used.
  std::int64_t order_weight(const Degree& d) const { return order_psi_[0] * d[0] + order_psi_[1] * d[1]; }
  // delta = sum of the degrees of the x variables.
  const Degree& delta() const { return delta_; }
  bool standard_graded() const;

  const CoeffField& field() const { return field_; }
  BaseKind base_kind() const { return desc_.base_kind; }
  bool base_is_field() const;
  bool base_is_domain() const;
  bool has_base_ideal() const { return !base_gb_.empty(); }
  // Reduced Groebner basis of J (empty unless A = k[z]/J).
  const std::vector<TermList>& base_ideal_gb() const { return base_gb_; }

  // Monomial order: elimination rows (if any), then the degree row, then the
  // x/y block tie-break, then the z block. Returns >0 if a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  const std::vector<std::vector<std::int64_t>>& order_rows() const { return rows_; }
  std::size_t degree_row() const { return degree_row_; }
  std::int64_t row_dot(std::size_t row, const Monomial& m) const;

  Degree degree_of(const Monomial& m) const;
  // True if m involves only base (z) variables.
  bool is_base_monomial(const Monomial& m) const;
  Monomial xy_part(const Monomial& m) const;
  Monomial z_part(const Monomial& m) const;
  Monomial variable(std::size_t i, std::uint16_t power = 1) const;

  // Same variables and grading, with an order eliminating `vars` first.
  RingPtr with_elimination(const std::vector<std::size_t>& vars) const;
  bool same_variables(const Ring& other) const;
  bool has_elimination() const { return !elim_vars_.empty(); }
  const std::vector<std::size_t>& elimination_vars() const { return elim_vars_; }
  // The same ring with A = k[z]/J replaced by k[z] (same order). Returns this ring if J = 0.
  RingPtr lifted() const;

  // All x/y monomials of the given G-degree (cached, sorted descending).
  const std::vector<Monomial>& monomials_of_degree(const Degree& d) const;
  // x-only monomials of the given degree.
  const std::vector<Monomial>& x_monomials_of_degree(const Degree& d) const;
  // y-only monomials of total y-degree k.
  const std::vector<Monomial>& y_monomials_of_count(int k) const;

  void reduce_base(TermList& terms) const;

 private:
  Ring() = default;
  void build_order();
  void enumerate_x(const Degree& d, std::vector<Monomial>& out) const;

  RingDescriptor desc_;
  CoeffField field_;
  std::vector<std::string> names_;
  std::vector<VarRole> roles_;
  std::vector<Degree> degrees_;
  std::vector<std::size_t> x_idx_, y_idx_, z_idx_;
  std::array<std::int64_t, 2> psi_{1, 0};
  std::array<std::int64_t, 2> order_psi_{1, 0};
  Degree delta_{0, 0};
  std::vector<std::size_t> elim_vars_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::size_t degree_row_ = 0;
  std::vector<TermList> base_gb_;

  mutable std::once_flag lifted_once_;
  mutable RingPtr lifted_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<Degree, std::vector<Monomial>, DegreeHash> mono_cache_;
  mutable std::unordered_map<Degree, std::vector<Monomial>, DegreeHash> xmono_cache_;
  mutable std::unordered_map<int, std::vector<Monomial>> ymono_cache_;
};

void check_same_ring(const Ring& a, const Ring& b);

}  // namespace fibercoh
