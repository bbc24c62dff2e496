#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bhk/latticealg.hpp"

namespace bhk {

/// Sum of monomials with unit coefficients, variables indexed 0..num_vars-1.
/// The monomial count is not forced to equal num_vars here; exponent_matrix
/// rejects non-square shapes.
class Polynomial {
public:
  Polynomial() = default;
  Polynomial(std::size_t num_vars, std::vector<IntVector> monomials, long index_shift = 0);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const std::vector<IntVector>& monomials() const noexcept { return monomials_; }
  /// Offset subtracted from the written variable indices (x1..x5 -> shift 1).
  long index_shift() const noexcept { return index_shift_; }

  /// Same monomials sorted lexicographically on exponent vectors.
  Polynomial canonical() const;
  Rational evaluate(std::span<const Rational> point) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.monomials_ == b.monomials_;
  }

private:
  std::size_t num_vars_ = 0;
  std::vector<IntVector> monomials_;
  long index_shift_ = 0;
};

/// Parses `x0^4*x1 + x1^5 + ...`. Any contiguous index range is accepted and
/// shifted to start at 0. `arity`, when given, fixes the variable count.
Polynomial parse_polynomial(std::string_view text, std::optional<std::size_t> arity = std::nullopt);
/// Parses `{"exponents": [[...], ...]}`.
Polynomial parse_polynomial_json(std::string_view text);
/// Dispatches on a leading `{`.
Polynomial parse_polynomial_any(std::string_view text);
std::string format_polynomial(const Polynomial& p, char var = 'x');

/// Square, nonsingular exponent matrix; row i holds the exponents of monomial i.
class ExponentMatrix {
public:
  ExponentMatrix() = default;
  explicit ExponentMatrix(IntegerMatrix e);

  const IntegerMatrix& matrix() const noexcept { return e_; }
  std::size_t size() const noexcept { return e_.rows(); }
  const Integer& determinant() const noexcept { return det_; }
  /// E^{-1}, computed once.
  const RationalMatrix& inverse() const noexcept { return inv_; }
  Polynomial polynomial() const;

  friend bool operator==(const ExponentMatrix& a, const ExponentMatrix& b) { return a.e_ == b.e_; }

private:
  IntegerMatrix e_;
  Integer det_;
  RationalMatrix inv_;
};

ExponentMatrix exponent_matrix(const Polynomial& p);
ExponentMatrix transpose(const ExponentMatrix& e);

enum class AtomKind { Fermat, Chain, Loop };
std::string_view to_string(AtomKind kind);

struct Atom {
  AtomKind kind = AtomKind::Fermat;
  /// Variables in atom order: variables[k]^exponents[k] * variables[k+1]
  /// (wrapping for loops, absent for the chain tail and Fermat).
  std::vector<std::size_t> variables;
  std::vector<Integer> exponents;
  /// Row of E that each link came from, aligned with `variables`.
  std::vector<std::size_t> monomials;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct AtomDecomposition {
  std::vector<Atom> atoms;
  /// Monomials rebuilt from the atoms, in input row order.
  std::vector<IntVector> reassemble(std::size_t num_vars) const;
};

/// Thom-Sebastiani splitting into Fermat, chain and loop atoms. Success
/// certifies that the invertible polynomial has an isolated singularity.
AtomDecomposition atom_decomposition(const ExponentMatrix& e);

struct WeightSystem {
  IntVector c;   // integer weights, gcd 1
  Integer d;     // degree
  RatVector q;   // q_i = c_i / d

  friend bool operator==(const WeightSystem& a, const WeightSystem& b) { return a.c == b.c && a.d == b.d; }
};

WeightSystem weight_system(const ExponentMatrix& e);
/// Builds the weight system from integer weights and degree (normalizing by gcd).
WeightSystem make_weight_system(IntVector c, Integer d);
bool is_calabi_yau(const WeightSystem& w);

}  // namespace bhk
