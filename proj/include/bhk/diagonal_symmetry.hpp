#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bhk/invertible_poly.hpp"
#include "bhk/latticealg.hpp"

namespace bhk {

/// Diagonal element diag(exp(2 pi i a_0), ..., exp(2 pi i a_n)) stored as the
/// exact phases a_k reduced into [0, 1).
class PhaseVector {
public:
  PhaseVector() = default;
  explicit PhaseVector(RatVector phases);

  std::size_t size() const noexcept { return phases_.size(); }
  const RatVector& phases() const noexcept { return phases_; }
  const Rational& operator[](std::size_t i) const { return phases_[i]; }

  bool is_identity() const;
  /// Order as a group element: lcm of the phase denominators.
  Integer order() const;
  PhaseVector power(const Integer& k) const;
  std::string to_string() const;

  friend PhaseVector operator*(const PhaseVector& a, const PhaseVector& b);
  friend bool operator==(const PhaseVector&, const PhaseVector&) = default;
  friend auto operator<=>(const PhaseVector& a, const PhaseVector& b) {
    return a.phases_ <=> b.phases_;
  }

private:
  RatVector phases_;
};

/// Finite subgroup of the diagonal torus. Stored through its generators and
/// the membership lattice L = {s in Z^{n+1} : s . g in Z for every generator
/// g}; the group is exactly the set of phase vectors orthogonal to L mod Z.
class DiagonalGroup {
public:
  DiagonalGroup() = default;
  DiagonalGroup(std::size_t num_vars, std::vector<PhaseVector> generators);

  static DiagonalGroup trivial(std::size_t num_vars) { return DiagonalGroup(num_vars, {}); }

  std::size_t num_vars() const noexcept { return num_vars_; }
  const std::vector<PhaseVector>& generators() const noexcept { return generators_; }
  const Integer& order() const noexcept { return order_; }
  const AbelianInvariants& invariants() const noexcept { return invariants_; }
  const LatticeBasis& membership_lattice() const noexcept { return membership_; }

  bool contains(const PhaseVector& g) const;
  bool is_subgroup_of(const DiagonalGroup& other) const;

  /// Explicit element list by closure; throws EnumerationCap past `cap`.
  std::vector<PhaseVector> elements(std::size_t cap = 100000) const;

  /// Equality as subgroups (membership lattices), not as generator lists.
  friend bool operator==(const DiagonalGroup& a, const DiagonalGroup& b) {
    return a.num_vars_ == b.num_vars_ && a.membership_ == b.membership_;
  }

private:
  std::size_t num_vars_ = 0;
  std::vector<PhaseVector> generators_;
  Integer order_ = 1;
  AbelianInvariants invariants_;
  LatticeBasis membership_;
};

struct QuotientGroup {
  AbelianInvariants invariants;
  /// One representative per invariant factor; the class of the k-th
  /// representative generates the k-th cyclic summand.
  std::vector<PhaseVector> generator_representatives;

  Integer order() const { return invariants.order(); }
};

/// Aut(W) = <rho_0, ..., rho_n>, rho_j = column j of E^{-1} mod 1.
DiagonalGroup aut_group(const ExponentMatrix& e);
/// The canonical generators rho_j of Aut(W).
std::vector<PhaseVector> aut_generators(const ExponentMatrix& e);

/// j_W with phases c_i / d.
PhaseVector exponential_element(const WeightSystem& w);

DiagonalGroup subgroup(const std::vector<PhaseVector>& gens, const DiagonalGroup& ambient);

bool is_special_linear(const DiagonalGroup& g);

enum class CyClause { Ok, NotSubgroup, CalabiYau, ContainsJ, SpecialLinear };

struct CyTypeVerdict {
  bool ok = false;
  CyClause failed = CyClause::Ok;
  std::string diagnostic;
};

CyTypeVerdict is_cy_type(const ExponentMatrix& e, const DiagonalGroup& g);

/// G^T generated by s E^{-1} for s running over a basis of the membership
/// lattice of G (exponents of G-invariant Laurent monomials).
DiagonalGroup dual_group(const ExponentMatrix& e, const DiagonalGroup& g);

QuotientGroup quotient_by_j(const DiagonalGroup& g, const PhaseVector& j);

/// Parses "1/5,1/5,0;j" style generator lists. The keyword `j` expands to `j_element`.
std::vector<PhaseVector> parse_group_spec(std::string_view spec, std::size_t num_vars, const PhaseVector& j_element);

}  // namespace bhk
