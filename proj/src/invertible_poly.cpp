#include "bhk/invertible_poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include <json.hpp>

namespace bhk {

Polynomial::Polynomial(std::size_t num_vars, std::vector<IntVector> monomials, long index_shift)
    : num_vars_(num_vars), monomials_(std::move(monomials)), index_shift_(index_shift) {
  std::set<IntVector> seen;
  for (const auto& m : monomials_) {
    if (m.size() != num_vars_) throw Error(ErrorKind::InvalidArgument, "monomial length differs from variable count");
    bool zero = true;
    for (const auto& x : m) {
      if (x < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent in polynomial");
      if (x != 0) zero = false;
    }
    if (zero) throw Error(ErrorKind::SyntaxError, "constant monomial");
    if (!seen.insert(m).second) throw Error(ErrorKind::DuplicateMonomial, "monomial appears twice");
  }
}

Polynomial Polynomial::canonical() const {
  std::vector<IntVector> sorted = monomials_;
  std::sort(sorted.begin(), sorted.end());
  return Polynomial(num_vars_, std::move(sorted), index_shift_);
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != num_vars_) throw Error(ErrorKind::InvalidArgument, "point dimension mismatch");
  Rational total = 0;
  for (const auto& m : monomials_) {
    Rational term = 1;
    for (std::size_t j = 0; j < num_vars_; ++j) {
      if (m[j] == 0) continue;
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), point[j].get_num_mpz_t(), m[j].get_ui());
      mpz_pow_ui(den.get_mpz_t(), point[j].get_den_mpz_t(), m[j].get_ui());
      term *= Rational(num, den);
    }
    total += term;
  }
  total.canonicalize();
  return total;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct ParsedTerm {
  std::map<long, Integer> exps;
};

Integer parse_digits(std::string_view s, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (start == pos) throw Error(ErrorKind::SyntaxError, "expected a number at offset " + std::to_string(start));
  return Integer(std::string(s.substr(start, pos - start)));
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::optional<std::size_t> arity) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw Error(ErrorKind::SyntaxError, "empty polynomial");

  std::vector<ParsedTerm> terms;
  std::size_t pos = 0;
  for (;;) {
    ParsedTerm term;
    bool have_var = false;
    for (;;) {
      if (pos >= s.size()) throw Error(ErrorKind::SyntaxError, "unexpected end of input");
      char ch = s[pos];
      if (ch == '-') throw Error(ErrorKind::CoefficientUnsupported, "negative coefficients are not supported");
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        Integer coeff = parse_digits(s, pos);
        if (pos < s.size() && (s[pos] == '/' || s[pos] == '.'))
          throw Error(ErrorKind::CoefficientUnsupported, "only unit coefficients are supported");
        if (coeff != 1)
          throw Error(ErrorKind::CoefficientUnsupported, "coefficient " + coeff.get_str() + " is not 1");
      } else if (ch == 'x' || ch == 'X') {
        ++pos;
        Integer idx = parse_digits(s, pos);
        if (!idx.fits_slong_p() || idx > 1000000) throw Error(ErrorKind::SyntaxError, "variable index too large");
        Integer exp = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          exp = parse_digits(s, pos);
          if (exp == 0) throw Error(ErrorKind::SyntaxError, "exponent must be positive");
        }
        term.exps[idx.get_si()] += exp;
        have_var = true;
      } else {
        throw Error(ErrorKind::SyntaxError, std::string("unexpected character '") + ch + "' at offset " +
                                                std::to_string(pos));
      }
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!have_var) throw Error(ErrorKind::SyntaxError, "constant term");
    terms.push_back(std::move(term));
    if (pos == s.size()) break;
    if (s[pos] == '-') throw Error(ErrorKind::CoefficientUnsupported, "negative coefficients are not supported");
    if (s[pos] != '+')
      throw Error(ErrorKind::SyntaxError, std::string("unexpected character '") + s[pos] + "' at offset " +
                                              std::to_string(pos));
    ++pos;
  }

  long lo = terms.front().exps.begin()->first, hi = lo;
  for (const auto& t : terms)
    for (const auto& [idx, e] : t.exps) {
      lo = std::min(lo, idx);
      hi = std::max(hi, idx);
    }
  std::size_t num_vars = static_cast<std::size_t>(hi - lo + 1);
  if (arity) {
    if (*arity < num_vars)
      throw Error(ErrorKind::SyntaxError, "declared arity " + std::to_string(*arity) + " is smaller than the " +
                                              std::to_string(num_vars) + " variables used");
    num_vars = *arity;
  }
  std::vector<IntVector> monomials;
  for (const auto& t : terms) {
    IntVector m(num_vars);
    for (const auto& [idx, e] : t.exps) m[static_cast<std::size_t>(idx - lo)] = e;
    monomials.push_back(std::move(m));
  }
  return Polynomial(num_vars, std::move(monomials), lo);
}

Polynomial parse_polynomial_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::SyntaxError, std::string("invalid JSON: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("exponents") || !j["exponents"].is_array())
    throw Error(ErrorKind::SyntaxError, "expected {\"exponents\": [[...], ...]}");
  std::vector<IntVector> rows;
  std::size_t width = 0;
  for (const auto& row : j["exponents"]) {
    if (!row.is_array()) throw Error(ErrorKind::SyntaxError, "exponent rows must be arrays");
    IntVector r;
    for (const auto& x : row) {
      if (!x.is_number_integer() || x.get<long long>() < 0)
        throw Error(ErrorKind::SyntaxError, "exponents must be nonnegative integers");
      r.emplace_back(std::to_string(x.get<long long>()));
    }
    if (!rows.empty() && r.size() != width) throw Error(ErrorKind::SyntaxError, "ragged exponent rows");
    width = r.size();
    rows.push_back(std::move(r));
  }
  if (rows.empty() || width == 0) throw Error(ErrorKind::SyntaxError, "empty exponent list");
  return Polynomial(width, std::move(rows), 0);
}

Polynomial parse_polynomial_any(std::string_view text) {
  auto first = std::find_if(text.begin(), text.end(), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
  if (first != text.end() && *first == '{') return parse_polynomial_json(text);
  return parse_polynomial(text);
}

std::string format_polynomial(const Polynomial& p, char var) {
  std::string out;
  for (const auto& m : p.monomials()) {
    if (!out.empty()) out += "+";
    bool first = true;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      if (!first) out += "*";
      first = false;
      out += var;
      out += std::to_string(j);
      if (m[j] != 1) out += "^" + m[j].get_str();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exponent matrices

ExponentMatrix::ExponentMatrix(IntegerMatrix e) : e_(std::move(e)) {
  if (!e_.square() || e_.rows() == 0)
    throw Error(ErrorKind::NotSquare, std::to_string(e_.rows()) + " monomials in " + std::to_string(e_.cols()) +
                                          " variables");
  for (std::size_t i = 0; i < e_.rows(); ++i)
    for (std::size_t j = 0; j < e_.cols(); ++j)
      if (e_(i, j) < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  det_ = bhk::determinant(e_);
  if (det_ == 0) throw Error(ErrorKind::SingularExponentMatrix, "exponent matrix is singular");
  inv_ = bhk::inverse(to_rational(e_));
}

Polynomial ExponentMatrix::polynomial() const { return Polynomial(e_.cols(), e_.row_vectors()); }

ExponentMatrix exponent_matrix(const Polynomial& p) {
  return ExponentMatrix(IntegerMatrix::from_rows(p.monomials(), p.num_vars()));
}

ExponentMatrix transpose(const ExponentMatrix& e) { return ExponentMatrix(e.matrix().transposed()); }

std::string_view to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::Fermat: return "fermat";
    case AtomKind::Chain: return "chain";
    case AtomKind::Loop: return "loop";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Atom decomposition
//
// Each monomial must read x_h^a or x_h^a * x_p with the pointer exponent 1.
// The heads must be a bijection between monomials and variables, and no
// variable may be pointed at twice. The pointer graph then splits into paths
// (chains, Fermat when of length one) and cycles (loops). A chain must start
// with an exponent >= 2, otherwise the transposed chain ends in a linear term.

namespace {

struct MonomialShape {
  // Candidate (head, pointer) readings; pointer == npos for x_h^a.
  std::vector<std::pair<std::size_t, std::size_t>> readings;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::optional<std::vector<MonomialShape>> monomial_shapes(const IntegerMatrix& e) {
  const std::size_t n = e.rows();
  std::vector<MonomialShape> shapes(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < n; ++j)
      if (e(i, j) != 0) support.push_back(j);
    if (support.size() == 1) {
      if (e(i, support[0]) < 2) return std::nullopt;
      shapes[i].readings.emplace_back(support[0], npos);
    } else if (support.size() == 2) {
      const std::size_t a = support[0], b = support[1];
      if (e(i, b) == 1) shapes[i].readings.emplace_back(a, b);
      if (e(i, a) == 1) shapes[i].readings.emplace_back(b, a);
      if (shapes[i].readings.empty()) return std::nullopt;
    } else {
      return std::nullopt;
    }
  }
  return shapes;
}

bool chain_starts_ok(const IntegerMatrix& e, const std::vector<std::size_t>& head_row,
                     const std::vector<std::size_t>& pointed_by,
                     const std::vector<std::pair<std::size_t, std::size_t>>& choice) {
  for (std::size_t r = 0; r < choice.size(); ++r) {
    const auto [h, p] = choice[r];
    if (p != npos && pointed_by[h] == npos && e(head_row[h], h) < 2) return false;
  }
  return true;
}

bool assign(const IntegerMatrix& e, const std::vector<MonomialShape>& shapes, std::size_t row,
            std::vector<std::size_t>& head_row, std::vector<std::size_t>& pointed_by,
            std::vector<std::pair<std::size_t, std::size_t>>& choice) {
  if (row == shapes.size()) return chain_starts_ok(e, head_row, pointed_by, choice);
  for (const auto& [h, p] : shapes[row].readings) {
    if (head_row[h] != npos) continue;
    if (p != npos && pointed_by[p] != npos) continue;
    head_row[h] = row;
    if (p != npos) pointed_by[p] = h;
    choice[row] = {h, p};
    if (assign(e, shapes, row + 1, head_row, pointed_by, choice)) return true;
    head_row[h] = npos;
    if (p != npos) pointed_by[p] = npos;
  }
  return false;
}

}  // namespace

AtomDecomposition atom_decomposition(const ExponentMatrix& em) {
  const IntegerMatrix& e = em.matrix();
  const std::size_t n = e.rows();
  auto shapes = monomial_shapes(e);
  if (!shapes)
    throw Error(ErrorKind::NotInvertibleNondegenerate, "a monomial is neither x^a nor x^a*y");

  std::vector<std::size_t> head_row(n, npos), pointed_by(n, npos);
  std::vector<std::pair<std::size_t, std::size_t>> choice(n);
  if (!assign(e, *shapes, 0, head_row, pointed_by, choice))
    throw Error(ErrorKind::NotInvertibleNondegenerate, "monomials do not split into Fermat, chain and loop atoms");

  std::vector<std::size_t> pointer(n, npos);
  for (std::size_t r = 0; r < n; ++r) pointer[choice[r].first] = choice[r].second;

  AtomDecomposition out;
  std::vector<bool> used(n, false);
  auto link = [&](Atom& atom, std::size_t v) {
    atom.variables.push_back(v);
    atom.monomials.push_back(head_row[v]);
    atom.exponents.push_back(e(head_row[v], v));
    used[v] = true;
  };
  // Paths start at variables nobody points to.
  for (std::size_t v = 0; v < n; ++v) {
    if (used[v] || pointed_by[v] != npos) continue;
    Atom atom;
    for (std::size_t cur = v; cur != npos; cur = pointer[cur]) link(atom, cur);
    atom.kind = atom.variables.size() == 1 ? AtomKind::Fermat : AtomKind::Chain;
    out.atoms.push_back(std::move(atom));
  }
  // Whatever is left lies on cycles.
  for (std::size_t v = 0; v < n; ++v) {
    if (used[v]) continue;
    Atom atom;
    atom.kind = AtomKind::Loop;
    for (std::size_t cur = v; !used[cur]; cur = pointer[cur]) link(atom, cur);
    out.atoms.push_back(std::move(atom));
  }
  std::sort(out.atoms.begin(), out.atoms.end(), [](const Atom& a, const Atom& b) {
    return *std::min_element(a.variables.begin(), a.variables.end()) <
           *std::min_element(b.variables.begin(), b.variables.end());
  });

  if (out.reassemble(n) != e.row_vectors())
    throw Error(ErrorKind::NotInvertibleNondegenerate, "atoms do not reproduce the monomials");
  return out;
}

std::vector<IntVector> AtomDecomposition::reassemble(std::size_t num_vars) const {
  std::vector<IntVector> rows(num_vars, IntVector(num_vars));
  for (const auto& atom : atoms) {
    const std::size_t k = atom.variables.size();
    for (std::size_t i = 0; i < k; ++i) {
      IntVector& row = rows.at(atom.monomials[i]);
      row[atom.variables[i]] += atom.exponents[i];
      bool has_next = atom.kind == AtomKind::Loop || i + 1 < k;
      if (atom.kind != AtomKind::Fermat && has_next) row[atom.variables[(i + 1) % k]] += 1;
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Weights

WeightSystem make_weight_system(IntVector c, Integer d) {
  Integer g = gcd_of(c);
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  if (g == 0) throw Error(ErrorKind::InvalidArgument, "zero weight system");
  WeightSystem w;
  for (auto& x : c) {
    x /= g;
    if (x <= 0) throw Error(ErrorKind::NonpositiveWeight, "weights must be positive");
  }
  w.d = d / g;
  if (w.d <= 0) throw Error(ErrorKind::NonpositiveWeight, "degree must be positive");
  w.c = std::move(c);
  for (const auto& x : w.c) {
    Rational q(x, w.d);
    q.canonicalize();
    w.q.push_back(q);
  }
  return w;
}

WeightSystem weight_system(const ExponentMatrix& e) {
  const std::size_t n = e.size();
  RatVector ones(n, Rational(1));
  RatVector q = solve_rational(to_rational(e.matrix()), ones);
  for (std::size_t i = 0; i < n; ++i)
    if (q[i] <= 0)
      throw Error(ErrorKind::NonpositiveWeight, "fractional weight q_" + std::to_string(i) + " = " +
                                                    q[i].get_str() + " is not positive");
  Integer l = lcm_of_denominators(q);
  IntVector c(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational x = q[i] * l;
    c[i] = x.get_num();
  }
  // gcd(c) == 1 already for E q = 1; make_weight_system renormalizes anyway.
  return make_weight_system(std::move(c), l);
}

bool is_calabi_yau(const WeightSystem& w) {
  Integer s = 0;
  for (const auto& x : w.c) s += x;
  return s == w.d;
}

}  // namespace bhk
