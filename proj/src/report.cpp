#include "bhk/report.hpp"

#include <iomanip>
#include <sstream>

namespace bhk {

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Json to_json(const Rational& x) { return Json(x.get_str()); }

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const IntegerMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const AbelianInvariants& a) { return to_json(a.factors()); }

Json to_json(const WeightSystem& w) {
  Json j;
  j["c"] = to_json(w.c);
  j["d"] = to_json(w.d);
  j["q"] = to_json(w.q);
  return j;
}

Json to_json(const DiagonalGroup& g) {
  Json j;
  Json gens = Json::array();
  for (const auto& h : g.generators()) gens.push_back(to_json(h.phases()));
  j["generators"] = gens;
  j["order"] = to_json(g.order());
  j["invariants"] = to_json(g.invariants());
  return j;
}

Json to_json(const AtomDecomposition& a) {
  Json arr = Json::array();
  for (const auto& atom : a.atoms) {
    Json j;
    j["type"] = std::string(to_string(atom.kind));
    Json vars = Json::array();
    for (auto v : atom.variables) vars.push_back(v);
    j["variables"] = vars;
    j["exponents"] = to_json(atom.exponents);
    arr.push_back(j);
  }
  return arr;
}

namespace {

Json quotient_json(const std::optional<QuotientGroup>& q) {
  if (!q) return nullptr;
  Json j;
  j["order"] = to_json(q->order());
  j["invariants"] = to_json(q->invariants);
  Json reps = Json::array();
  for (const auto& r : q->generator_representatives) reps.push_back(to_json(r.phases()));
  j["generators"] = reps;
  return j;
}

std::string monomial_text(const IntVector& exps, const std::string& var, std::size_t offset) {
  std::string out;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (exps[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += var + std::to_string(k + offset);
    if (exps[k] != 1) out += "^" + exps[k].get_str();
  }
  return out.empty() ? "1" : out;
}

std::string vec_text(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string invariants_text(const AbelianInvariants& a) {
  return a.trivial() ? "trivial" : a.to_string();
}

}  // namespace

std::string group_spec(const DiagonalGroup& g) {
  if (g.generators().empty()) return "trivial";
  std::string s;
  for (std::size_t k = 0; k < g.generators().size(); ++k) {
    if (k) s += ";";
    s += g.generators()[k].to_string();
  }
  return s;
}

std::string format_laurent(const std::vector<IntVector>& terms, const std::string& var) {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " + ";
    out += monomial_text(t, var, 1);
  }
  return out;
}

Json to_json(const MirrorReport& r) {
  Json j;
  Json input;
  input["polynomial"] = r.input.text;
  input["group"] = r.input.group_spec;
  input["index_shift"] = r.polynomial.index_shift();
  input["normalized"] = format_polynomial(r.polynomial);
  j["input"] = input;
  j["exponent_matrix"] = to_json(r.exponents.matrix());
  j["weights"] = to_json(r.weights);
  j["calabi_yau"] = r.calabi_yau;
  Json cy;
  cy["ok"] = r.cy_type.ok;
  cy["diagnostic"] = r.cy_type.diagnostic;
  j["cy_type"] = cy;
  j["atoms"] = to_json(r.atoms);
  Json aut;
  aut["order"] = to_json(r.aut.order());
  aut["invariants"] = to_json(r.aut.invariants());
  j["aut"] = aut;
  Json group = to_json(r.group);
  group["is_sl"] = r.group_is_sl;
  group["contains_j"] = r.group_contains_j;
  j["group"] = group;
  Json tr;
  tr["exponent_matrix"] = to_json(r.transpose.matrix());
  tr["weights"] = to_json(r.transpose_weights);
  tr["polynomial"] = format_polynomial(r.transpose.polynomial(), 'y');
  j["transpose"] = tr;
  j["dual_group"] = to_json(r.dual);
  Json quot;
  quot["g_tilde"] = quotient_json(r.g_tilde);
  quot["gt_tilde"] = quotient_json(r.gt_tilde);
  j["quotients"] = quot;

  if (r.toric) {
    Json t;
    t["m_basis"] = to_json(r.toric->lattice.basis.matrix());
    Json nu = Json::array(), mu = Json::array();
    for (const auto& p : r.toric->nu) nu.push_back(to_json(p.basis_coords));
    for (const auto& p : r.toric->mu) mu.push_back(to_json(p.basis_coords));
    t["nu"] = nu;
    t["mu"] = mu;
    t["pairing"] = to_json(r.toric->pairing);
    t["pairing_ok"] = r.toric->pairing_ok;
    j["toric"] = t;
  } else {
    j["toric"] = nullptr;
  }

  if (r.ambient) {
    Json a;
    a["relation_weights"] = to_json(r.ambient->report.relation_weights);
    a["quotient_invariants"] = to_json(r.ambient->report.quotient_invariants);
    a["verified"] = r.ambient->verified;
    Json clauses = Json::array();
    for (const auto& c : r.ambient->clauses) {
      Json cj;
      cj["name"] = c.name;
      cj["passed"] = c.passed;
      cj["detail"] = c.detail;
      clauses.push_back(cj);
    }
    a["clauses"] = clauses;
    j["ambient"] = a;
  } else {
    j["ambient"] = nullptr;
  }
  return j;
}

Json to_json(const BirationalAtlas& atlas) {
  Json j;
  j["weights"] = to_json(atlas.weights);
  j["group"] = group_spec(atlas.group);
  j["m_basis"] = to_json(atlas.m_basis.matrix());
  Json chart;
  Json terms = Json::array();
  for (const auto& t : atlas.shared_chart) terms.push_back(to_json(t));
  chart["terms"] = terms;
  chart["text"] = format_laurent(atlas.shared_chart);
  j["shared_chart"] = chart;
  j["terms_identical"] = atlas.terms_identical;
  Json maps = Json::array();
  for (std::size_t s = 0; s < 2; ++s) {
    const AtlasSide& side = atlas.sides[s];
    Json m;
    m["polynomial"] = format_polynomial(side.exponents.polynomial());
    m["section"] = format_polynomial(side.section, 'Y');
    m["exponents"] = to_json(side.dehom);
    Json formulas = Json::array();
    for (std::size_t k = 0; k < side.dehom.cols(); ++k) {
      formulas.push_back("t" + std::to_string(k + 1) + " = " + monomial_text(side.dehom.col(k), "Y", 0));
    }
    m["maps"] = formulas;
    m["relation_weights"] = to_json(side.relation_weights);
    m["ambient_quotient"] = to_json(side.ambient_quotient);
    m["section_recovered"] = atlas.sections_recovered[s];
    maps.push_back(m);
  }
  j["dehom_maps"] = maps;
  return j;
}

Json to_json(const ProbeRecord& p) {
  Json j;
  j["samples"] = p.samples;
  j["seed"] = p.seed;
  j["power"] = to_json(p.power);
  j["agreements"] = p.agreements;
  j["zero_hits"] = p.zero_hits;
  j["passed"] = p.passed;
  return j;
}

std::string to_text(const MirrorReport& r) {
  std::ostringstream os;
  os << "polynomial   " << format_polynomial(r.polynomial) << "\n";
  os << "weights      " << vec_text(r.weights.c) << " / " << r.weights.d << "\n";
  os << "calabi-yau   " << (r.calabi_yau ? "yes" : "no") << "\n";
  os << "atoms       ";
  for (const auto& a : r.atoms.atoms) {
    os << " " << to_string(a.kind) << "[";
    for (std::size_t k = 0; k < a.variables.size(); ++k) os << (k ? "," : "") << "x" << a.variables[k];
    os << "]";
  }
  os << "\n";
  os << "Aut(W)       order " << r.aut.order() << ", " << invariants_text(r.aut.invariants()) << "\n";
  os << "G            " << group_spec(r.group) << "\n";
  os << "             order " << r.group.order() << ", " << invariants_text(r.group.invariants())
     << (r.group_is_sl ? ", in SL" : ", not in SL") << (r.group_contains_j ? ", contains j" : "") << "\n";
  os << "CY-type      " << (r.cy_type.ok ? "yes" : r.cy_type.diagnostic) << "\n";
  os << "W^T          " << format_polynomial(r.transpose.polynomial(), 'y') << "\n";
  os << "W^T weights  " << vec_text(r.transpose_weights.c) << " / " << r.transpose_weights.d << "\n";
  os << "G^T          " << group_spec(r.dual) << "\n";
  os << "             order " << r.dual.order() << ", " << invariants_text(r.dual.invariants()) << "\n";
  if (r.g_tilde) os << "G/<j>        " << invariants_text(r.g_tilde->invariants) << "\n";
  if (r.gt_tilde) os << "G^T/<j^T>    " << invariants_text(r.gt_tilde->invariants) << "\n";
  if (r.toric) {
    os << "M basis     ";
    for (const auto& b : r.toric->lattice.basis.basis()) os << " " << vec_text(b);
    os << "\n";
    os << "nu          ";
    for (const auto& p : r.toric->nu) os << " " << vec_text(p.basis_coords);
    os << "\n";
    os << "mu          ";
    for (const auto& p : r.toric->mu) os << " " << vec_text(p.basis_coords);
    os << "\n";
    os << "pairing      " << (r.toric->pairing_ok ? "E - 1" : "MISMATCH") << "\n";
  }
  if (r.ambient) {
    os << "relation     " << vec_text(r.ambient->report.relation_weights) << "\n";
    os << "M/<mu>       " << invariants_text(r.ambient->report.quotient_invariants) << "\n";
    for (const auto& c : r.ambient->clauses)
      os << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : ": " + c.detail)
         << "\n";
    os << "ambient      " << (r.ambient->verified ? "verified" : "NOT verified") << "\n";
  }
  os << "time         " << std::fixed << std::setprecision(2) << r.elapsed_ms << " ms\n";
  return os.str();
}

std::string to_text(const BirationalAtlas& atlas) {
  std::ostringstream os;
  os << "shared chart    " << format_laurent(atlas.shared_chart) << "\n";
  os << "terms identical " << (atlas.terms_identical ? "yes" : "no") << "\n";
  for (std::size_t s = 0; s < 2; ++s) {
    const AtlasSide& side = atlas.sides[s];
    os << "side " << s << "  " << format_polynomial(side.exponents.polynomial()) << "\n";
    os << "  section   " << format_polynomial(side.section, 'Y') << "\n";
    for (std::size_t k = 0; k < side.dehom.cols(); ++k)
      os << "  t" << k + 1 << " = " << monomial_text(side.dehom.col(k), "Y", 0) << "\n";
    os << "  recovered " << (atlas.sections_recovered[s] ? "yes" : "no") << "\n";
  }
  return os.str();
}

std::string to_text(const ProbeRecord& p) {
  std::ostringstream os;
  os << "probe  " << p.agreements << "/" << p.samples << " agreements (seed " << p.seed << ", power " << p.power
     << ", zero hits " << p.zero_hits << ")\n";
  return os.str();
}

}  // namespace bhk
