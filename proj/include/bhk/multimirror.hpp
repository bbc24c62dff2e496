#pragma once

// End-to-end mirror reports and the multiple-mirror comparison: two
// polynomials with the same weights and a common CY-type group have mirrors
// that share the torus chart {sum_j t^{nu_j} = 0} in T_M.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bhk/diagonal_symmetry.hpp"
#include "bhk/invertible_poly.hpp"
#include "bhk/toric_mirror.hpp"

namespace bhk {

struct MirrorInput {
  std::string text;        // polynomial as given
  std::string group_spec;  // as given ("j" by default)
};

struct MirrorReport {
  MirrorInput input;
  Polynomial polynomial;
  ExponentMatrix exponents;
  WeightSystem weights;
  bool calabi_yau = false;
  CyTypeVerdict cy_type;
  AtomDecomposition atoms;
  DiagonalGroup aut;
  DiagonalGroup group;
  bool group_is_sl = false;
  bool group_contains_j = false;
  ExponentMatrix transpose;
  WeightSystem transpose_weights;
  DiagonalGroup dual;
  std::optional<QuotientGroup> g_tilde;
  std::optional<QuotientGroup> gt_tilde;
  std::optional<ToricData> toric;
  std::optional<AmbientVerification> ambient;
  double elapsed_ms = 0.0;  // not serialized to JSON
};

/// Runs every construction that applies to (W, G); the ambient verification
/// runs iff the pair is of CY-type. Group generators must lie in Aut(W).
MirrorReport mirror_pipeline(const ExponentMatrix& e, const DiagonalGroup& g, MirrorInput input = {},
                             const VerifyOptions& opts = {});
/// Parses the polynomial and group spec, then runs mirror_pipeline.
MirrorReport mirror_pipeline(const std::string& poly_text, const std::string& group_spec,
                             const VerifyOptions& opts = {});

struct SetupVerdict {
  bool ok = false;
  std::string reason;
};

SetupVerdict shared_setup_check(const ExponentMatrix& e1, const ExponentMatrix& e2, const DiagonalGroup& g);

struct AtlasSide {
  ExponentMatrix exponents;
  /// W^T in the Cox coordinates Y_i of the dual fan, built by transposition.
  Polynomial section;
  /// dehom(i, k): exponent of Y_i in t_k (the M-basis coordinates of mu_i).
  IntegerMatrix dehom;
  IntVector relation_weights;
  AbelianInvariants ambient_quotient;
};

struct BirationalAtlas {
  WeightSystem weights;
  DiagonalGroup group;
  LatticeBasis m_basis;
  /// Exponent vectors of the Laurent polynomial sum_j t^{nu_j}.
  std::vector<IntVector> shared_chart;
  std::array<AtlasSide, 2> sides;
  bool terms_identical = false;
  /// Pulling the chart back along each dehom map and multiplying by prod Y_i
  /// gives that side's section.
  std::array<bool, 2> sections_recovered{false, false};
};

BirationalAtlas common_chart(const ExponentMatrix& e1, const ExponentMatrix& e2, const DiagonalGroup& g);

struct ProbeRecord {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Torus points are t = u^power for random rational u, so that both sides
  /// have rational Cox lifts; power is the lcm of the exponents of M/<mu>.
  Integer power = 1;
  std::size_t agreements = 0;
  std::size_t zero_hits = 0;
  bool passed = true;
};

class ProbeFailure : public Error {
public:
  ProbeFailure(const std::string& message, RatVector point)
      : Error(ErrorKind::ProbeFailure, message), point_(std::move(point)) {}
  const RatVector& point() const noexcept { return point_; }

private:
  RatVector point_;
};

ProbeRecord rational_point_probe(const BirationalAtlas& atlas, std::size_t samples, std::uint64_t seed);

/// All invertible nondegenerate exponent matrices with weights w, up to
/// simultaneous relabeling of equal-weight variables, in canonical order.
std::vector<ExponentMatrix> enumerate_invertible(const WeightSystem& w);

/// Canonical representative under permutations of equal-weight variables
/// (rows sorted lexicographically).
IntegerMatrix canonical_relabeling(const IntegerMatrix& e, const IntVector& weights);

}  // namespace bhk
