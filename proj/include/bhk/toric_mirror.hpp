#pragma once

// Toric description of a CY-type pair (W, G): the lattice M of degree-zero
// G-invariant Laurent exponents, the rays nu_j of the fan of P_W / G~ (in
// N = Hom(M, Z)), the points mu_i in M coming from the monomials of W, and
// the dual simplex fan spanned by the mu_i whose toric variety is the mirror
// ambient space.

#include <string>
#include <vector>

#include "bhk/diagonal_symmetry.hpp"
#include "bhk/invertible_poly.hpp"
#include "bhk/latticealg.hpp"

namespace bhk {

struct GradedInvariantLattice {
  WeightSystem weights;
  DiagonalGroup group;
  /// HNF basis of M inside Z^{n+1}; rank n.
  LatticeBasis basis;

  std::size_t rank() const { return basis.rank(); }
};

enum class RayKind { Nu, Mu };

struct RayPoint {
  RayKind kind = RayKind::Nu;
  std::size_t index = 0;
  /// For mu: the exponent vector row_i(E) - 1 in Z^{n+1}. For nu: e_j.
  IntVector ambient_coords;
  /// For mu: coordinates in the M basis. For nu: coordinates in the dual basis of N.
  IntVector basis_coords;
  bool primitive = false;
};

/// Complete simplex fan: cones over the proper faces of conv(vertices).
struct SimplexFan {
  std::size_t lattice_rank = 0;
  std::vector<RayPoint> vertices;
  /// Unique primitive all-positive relation sum b_i v_i = 0.
  IntVector relation_weights;
};

struct ActionCheck {
  IntVector m;            // quotient generator, M-basis coordinates
  Integer class_order;    // its order in M / <mu>
  RatVector r;            // a solution of sum r_i mu_i = m
  RatVector t;            // (E^T)^{-1} A m
  bool ok = false;
};

struct AmbientReport {
  IntVector relation_weights;
  AbelianInvariants quotient_invariants;
  std::vector<IntVector> quotient_generators;  // M-basis coordinates
  std::vector<ActionCheck> action_checks;
};

GradedInvariantLattice build_invariant_lattice(const WeightSystem& w, const DiagonalGroup& g);
std::vector<RayPoint> nu_points(const GradedInvariantLattice& m);
std::vector<RayPoint> mu_points(const ExponentMatrix& e, const GradedInvariantLattice& m);
/// Entry (i, j) = <mu_i, nu_j>, computed from basis coordinates.
IntegerMatrix pairing_matrix(const std::vector<RayPoint>& mus, const std::vector<RayPoint>& nus);
SimplexFan simplex_fan(const std::vector<RayPoint>& vertices);
SimplexFan dual_fan(const std::vector<RayPoint>& mus);
AmbientReport ambient_structure(const SimplexFan& f, const GradedInvariantLattice& m);
/// Anticanonical section sum_k prod_i Y_i^{<v_i, dual_k> + 1}; with the dual
/// fan and the nu_j this is W^T, with the forward fan and the mu_i it is W.
Polynomial hypersurface_section(const SimplexFan& f, const std::vector<RayPoint>& duals);

struct ToricData {
  GradedInvariantLattice lattice;
  std::vector<RayPoint> nu;
  std::vector<RayPoint> mu;
  IntegerMatrix pairing;
  bool pairing_ok = false;
  SimplexFan fan;
  SimplexFan dual;
  AmbientReport ambient;
};

/// Requires (W, G) of CY-type.
ToricData build_toric_data(const ExponentMatrix& e, const DiagonalGroup& g);

struct ClauseResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AmbientVerification {
  AmbientReport report;
  std::vector<ClauseResult> clauses;
  bool verified = false;

  const ClauseResult* first_failure() const;
};

struct VerifyOptions {
  /// Also map every element of M / <mu> (bounded by max_full_order).
  bool full_action_check = false;
  std::size_t max_full_order = 10000;
};

/// Evaluates the identification of the dual-fan toric variety with
/// P_{W^T} / G~^T on precomputed data. Never throws on a failed clause.
AmbientVerification check_mirror_ambient(const ExponentMatrix& e, const DiagonalGroup& g, const ToricData& data,
                                         const VerifyOptions& opts = {});

class VerificationFailed : public Error {
public:
  explicit VerificationFailed(AmbientVerification record);
  const AmbientVerification& record() const noexcept { return record_; }

private:
  AmbientVerification record_;
};

/// Builds the toric data and checks every clause; throws VerificationFailed
/// naming the first failing clause.
AmbientVerification verify_mirror_ambient(const ExponentMatrix& e, const DiagonalGroup& g,
                                          const VerifyOptions& opts = {});

}  // namespace bhk
