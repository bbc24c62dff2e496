#pragma once

// JSON and plain-text renderings of reports. Integers that fit a signed
// 64-bit value are JSON numbers, larger ones are decimal strings; rationals
// are always strings "p/q".

#include <string>

#include <json.hpp>

#include "bhk/multimirror.hpp"

namespace bhk {

using Json = nlohmann::ordered_json;

Json to_json(const Integer& x);
Json to_json(const Rational& x);
Json to_json(const IntVector& v);
Json to_json(const RatVector& v);
Json to_json(const IntegerMatrix& m);
Json to_json(const AbelianInvariants& a);
Json to_json(const WeightSystem& w);
Json to_json(const DiagonalGroup& g);
Json to_json(const AtomDecomposition& a);
Json to_json(const MirrorReport& r);
Json to_json(const BirationalAtlas& atlas);
Json to_json(const ProbeRecord& p);

/// Group written back as a spec string accepted by parse_group_spec.
std::string group_spec(const DiagonalGroup& g);
/// Laurent polynomial sum_k t^{exps_k} in variables t1..tn.
std::string format_laurent(const std::vector<IntVector>& terms, const std::string& var = "t");

std::string to_text(const MirrorReport& r);
std::string to_text(const BirationalAtlas& atlas);
std::string to_text(const ProbeRecord& p);

}  // namespace bhk
