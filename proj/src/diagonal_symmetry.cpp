#include "bhk/diagonal_symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <stdexcept>

namespace bhk {

namespace {

Rational frac(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - Rational(fl);
  r.canonicalize();
  return r;
}

bool is_integral(const Rational& x) { return x.get_den() == 1; }

// D * (Z^{n+1} + sum Z g_k) as an integer lattice.
LatticeBasis scaled_phase_lattice(std::size_t n, const std::vector<PhaseVector>& gens, const Integer& scale) {
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = scale;
    rows.push_back(std::move(e));
  }
  for (const auto& g : gens) {
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational x = g[i] * scale;
      if (x.get_den() != 1) throw std::logic_error("phase denominator does not divide the scale");
      v[i] = x.get_num();
    }
    rows.push_back(std::move(v));
  }
  return LatticeBasis::from_generators(n, rows);
}

Integer common_denominator(const std::vector<PhaseVector>& gens) {
  Integer l = 1;
  for (const auto& g : gens) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), g.order().get_mpz_t());
  return l;
}

}  // namespace

// ---------------------------------------------------------------------------
// PhaseVector

PhaseVector::PhaseVector(RatVector phases) : phases_(std::move(phases)) {
  for (auto& x : phases_) {
    x.canonicalize();
    x = frac(x);
  }
}

bool PhaseVector::is_identity() const {
  return std::all_of(phases_.begin(), phases_.end(), [](const Rational& x) { return x == 0; });
}

Integer PhaseVector::order() const {
  return lcm_of_denominators(phases_);
}

PhaseVector PhaseVector::power(const Integer& k) const {
  RatVector out(phases_.size());
  for (std::size_t i = 0; i < phases_.size(); ++i) out[i] = phases_[i] * k;
  return PhaseVector(std::move(out));
}

std::string PhaseVector::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < phases_.size(); ++i) {
    if (i) s += ",";
    s += phases_[i].get_str();
  }
  return s;
}

PhaseVector operator*(const PhaseVector& a, const PhaseVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "phase vectors of different length");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return PhaseVector(std::move(out));
}

// ---------------------------------------------------------------------------
// DiagonalGroup

DiagonalGroup::DiagonalGroup(std::size_t num_vars, std::vector<PhaseVector> generators)
    : num_vars_(num_vars), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.size() != num_vars_) throw Error(ErrorKind::InvalidArgument, "generator length differs from variable count");

  // Route 1: invariants of (Z^{n+1} + sum Z g) / Z^{n+1}.
  const Integer scale = common_denominator(generators_);
  LatticeBasis phases = scaled_phase_lattice(num_vars_, generators_, scale);
  std::vector<IntVector> scaled_unit;
  for (std::size_t i = 0; i < num_vars_; ++i) {
    IntVector e(num_vars_);
    e[i] = scale;
    scaled_unit.push_back(std::move(e));
  }
  invariants_ = lattice_quotient(phases, LatticeBasis::from_generators(num_vars_, scaled_unit));
  order_ = invariants_.order();

  // Route 2: membership lattice as the s-part of ker [P | I].
  const std::size_t k = generators_.size();
  if (k == 0) {
    membership_ = LatticeBasis::standard(num_vars_);
  } else {
    RationalMatrix pi(k, num_vars_ + k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t i = 0; i < num_vars_; ++i) pi(r, i) = generators_[r][i];
      pi(r, num_vars_ + r) = 1;
    }
    LatticeBasis ker = kernel_lattice(pi);
    std::vector<IntVector> projected;
    for (const auto& v : ker.basis()) projected.emplace_back(v.begin(), v.begin() + static_cast<long>(num_vars_));
    membership_ = LatticeBasis::from_generators(num_vars_, projected);
  }

  if (membership_.rank() != num_vars_ || abs(determinant(membership_.matrix())) != order_)
    throw std::logic_error("group order disagrees between generator and membership lattices");
}

bool DiagonalGroup::contains(const PhaseVector& g) const {
  if (g.size() != num_vars_) return false;
  for (const auto& s : membership_.basis()) {
    Rational acc = 0;
    for (std::size_t i = 0; i < num_vars_; ++i) acc += s[i] * g[i];
    if (!is_integral(acc)) return false;
  }
  return true;
}

bool DiagonalGroup::is_subgroup_of(const DiagonalGroup& other) const {
  return std::all_of(generators_.begin(), generators_.end(), [&](const PhaseVector& g) { return other.contains(g); });
}

std::vector<PhaseVector> DiagonalGroup::elements(std::size_t cap) const {
  if (order_ > cap)
    throw Error(ErrorKind::EnumerationCap, "group order " + order_.get_str() + " exceeds cap " + std::to_string(cap));
  std::set<PhaseVector> seen;
  std::vector<PhaseVector> frontier{PhaseVector(RatVector(num_vars_))};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<PhaseVector> next;
    for (const auto& x : frontier)
      for (const auto& g : generators_) {
        PhaseVector y = x * g;
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// Operations

std::vector<PhaseVector> aut_generators(const ExponentMatrix& e) {
  std::vector<PhaseVector> gens;
  for (std::size_t j = 0; j < e.size(); ++j) gens.emplace_back(e.inverse().col(j));
  return gens;
}

DiagonalGroup aut_group(const ExponentMatrix& e) { return DiagonalGroup(e.size(), aut_generators(e)); }

PhaseVector exponential_element(const WeightSystem& w) { return PhaseVector(w.q); }

DiagonalGroup subgroup(const std::vector<PhaseVector>& gens, const DiagonalGroup& ambient) {
  for (const auto& g : gens)
    if (!ambient.contains(g))
      throw Error(ErrorKind::NotInAmbient, "(" + g.to_string() + ") is not a symmetry of the ambient group");
  return DiagonalGroup(ambient.num_vars(), gens);
}

bool is_special_linear(const DiagonalGroup& g) {
  return std::all_of(g.generators().begin(), g.generators().end(), [](const PhaseVector& h) {
    Rational s = 0;
    for (const auto& x : h.phases()) s += x;
    return is_integral(s);
  });
}

CyTypeVerdict is_cy_type(const ExponentMatrix& e, const DiagonalGroup& g) {
  CyTypeVerdict v;
  if (g.num_vars() != e.size() || !g.is_subgroup_of(aut_group(e))) {
    v.failed = CyClause::NotSubgroup;
    v.diagnostic = "G is not a subgroup of Aut(W)";
    return v;
  }
  WeightSystem w = weight_system(e);
  if (!is_calabi_yau(w)) {
    Integer s = 0;
    for (const auto& x : w.c) s += x;
    v.failed = CyClause::CalabiYau;
    v.diagnostic = "Calabi–Yau condition fails: sum of weights " + s.get_str() + " != degree " + w.d.get_str();
    return v;
  }
  if (!g.contains(exponential_element(w))) {
    v.failed = CyClause::ContainsJ;
    v.diagnostic = "G does not contain the exponential element j_W";
    return v;
  }
  if (!is_special_linear(g)) {
    v.failed = CyClause::SpecialLinear;
    v.diagnostic = "G is not contained in SL (a generator has non-integral phase sum)";
    return v;
  }
  v.ok = true;
  return v;
}

DiagonalGroup dual_group(const ExponentMatrix& e, const DiagonalGroup& g) {
  const std::size_t n = e.size();
  if (g.num_vars() != n) throw Error(ErrorKind::InvalidArgument, "group and polynomial sizes differ");
  std::vector<PhaseVector> gens;
  for (const auto& s : g.membership_lattice().basis()) {
    RatVector row(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) row[j] += s[i] * e.inverse()(i, j);
    PhaseVector h(std::move(row));
    if (!h.is_identity()) gens.push_back(std::move(h));
  }
  return DiagonalGroup(n, std::move(gens));
}

QuotientGroup quotient_by_j(const DiagonalGroup& g, const PhaseVector& j) {
  if (!g.contains(j)) throw Error(ErrorKind::ElementNotInGroup, "(" + j.to_string() + ") is not in the group");
  std::vector<PhaseVector> all = g.generators();
  all.push_back(j);
  const Integer scale = common_denominator(all);
  LatticeBasis whole = scaled_phase_lattice(g.num_vars(), g.generators(), scale);
  LatticeBasis sub = scaled_phase_lattice(g.num_vars(), {j}, scale);
  QuotientPresentation qp = quotient_presentation(whole, sub);
  QuotientGroup out;
  out.invariants = qp.invariants;
  for (const auto& v : qp.generators) {
    RatVector phases(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) phases[i] = Rational(v[i], scale);
    out.generator_representatives.emplace_back(std::move(phases));
  }
  return out;
}

std::vector<PhaseVector> parse_group_spec(std::string_view spec, std::size_t num_vars, const PhaseVector& j_element) {
  static const std::regex rational_re(R"(^-?[0-9]+(/[0-9]+)?$)");
  std::string s;
  for (char ch : spec)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  std::vector<PhaseVector> gens;
  if (s.empty() || s == "trivial") return gens;

  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(';', start);
    if (end == std::string::npos) end = s.size();
    std::string item = s.substr(start, end - start);
    if (item == "j" || item == "J") {
      gens.push_back(j_element);
    } else {
      RatVector phases;
      std::size_t p = 0;
      while (p <= item.size()) {
        std::size_t q = item.find(',', p);
        if (q == std::string::npos) q = item.size();
        std::string tok = item.substr(p, q - p);
        if (!std::regex_match(tok, rational_re))
          throw Error(ErrorKind::SyntaxError, "bad phase '" + tok + "' in group spec");
        Rational x(tok);
        if (x.get_den() == 0) throw Error(ErrorKind::SyntaxError, "zero denominator in group spec");
        x.canonicalize();
        phases.push_back(x);
        p = q + 1;
      }
      if (phases.size() != num_vars)
        throw Error(ErrorKind::SyntaxError, "generator '" + item + "' has " + std::to_string(phases.size()) +
                                                " phases, expected " + std::to_string(num_vars));
      gens.emplace_back(std::move(phases));
    }
    start = end + 1;
  }
  return gens;
}

}  // namespace bhk
