#pragma once

// Enumeration of small CY-type pairs (W, G) and batch verification of the
// duality identities on them. Both the builder and the verifier have a serial
// reference path and an OpenMP path over corpus entries; they must agree
// exactly.

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bhk/diagonal_symmetry.hpp"
#include "bhk/invertible_poly.hpp"

namespace bhk {

enum class Execution { Serial, Parallel };

struct CorpusSpec {
  std::size_t max_vars = 4;
  long max_degree = 12;
  std::size_t max_group_order = 200;
};

struct CorpusEntry {
  ExponentMatrix exponents;
  WeightSystem weights;
  /// CY-type groups; each is checked by every identity.
  std::vector<DiagonalGroup> groups;
  /// Further subgroups of Aut(W) (not CY-type), checked by the identities
  /// that do not need SL or j.
  std::vector<DiagonalGroup> extra_groups;
  std::string status = "unverified";
};

/// Weight systems (c_0 <= ... <= c_n) with gcd 1 and sum c_i = d.
std::vector<WeightSystem> calabi_yau_weight_systems(std::size_t max_vars, long max_degree);

/// Every subgroup G with <j_W> <= G <= SL cap Aut(W) and |G| <= max_order,
/// each listed once, ordered by discovery from <j_W>.
std::vector<DiagonalGroup> cy_type_subgroups(const ExponentMatrix& e, std::size_t max_order);

/// Subgroups outside SL used as negative controls: <rho_k> for each k and Aut(W).
std::vector<DiagonalGroup> non_sl_controls(const ExponentMatrix& e);

std::vector<CorpusEntry> build_corpus(const CorpusSpec& spec, Execution mode);

struct GroupCheck {
  std::string group;
  bool cy_type = true;
  bool double_dual = false;     // (G^T)^T == G
  bool order_product = false;   // |G| |G^T| == |det E|
  bool sl_criterion = false;    // G <= SL  <=>  j_{W^T} in G^T
  bool pairing = false;         // <mu_i, nu_j> == E - 1
  bool primitive = false;       // every nu_j and mu_i primitive
  bool ambient = false;         // verify_mirror_ambient
  std::string failure;

  bool passed() const;
  friend bool operator==(const GroupCheck&, const GroupCheck&) = default;
};

struct EntryVerification {
  std::string polynomial;
  std::vector<GroupCheck> checks;
  bool passed = false;

  friend bool operator==(const EntryVerification&, const EntryVerification&) = default;
};

EntryVerification verify_entry(const CorpusEntry& entry);
std::vector<EntryVerification> verify_corpus(const std::vector<CorpusEntry>& entries, Execution mode);

nlohmann::ordered_json corpus_entry_to_json(const CorpusEntry& entry);
CorpusEntry corpus_entry_from_json(const nlohmann::ordered_json& j);
/// JSON lines, one entry per line.
std::string write_corpus(const std::vector<CorpusEntry>& entries);
std::vector<CorpusEntry> read_corpus(std::istream& in);

nlohmann::ordered_json verification_to_json(const std::vector<EntryVerification>& results);

}  // namespace bhk
