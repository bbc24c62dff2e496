#include "bhk/multimirror.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace bhk {

// ---------------------------------------------------------------------------
// Pipeline

MirrorReport mirror_pipeline(const ExponentMatrix& e, const DiagonalGroup& g, MirrorInput input,
                             const VerifyOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  MirrorReport r;
  r.input = std::move(input);
  r.polynomial = e.polynomial();
  r.exponents = e;
  r.weights = weight_system(e);
  r.calabi_yau = is_calabi_yau(r.weights);
  r.atoms = atom_decomposition(e);
  r.aut = aut_group(e);
  r.group = subgroup(g.generators(), r.aut);
  r.group_is_sl = is_special_linear(r.group);
  r.group_contains_j = r.group.contains(exponential_element(r.weights));
  r.cy_type = is_cy_type(e, r.group);
  r.transpose = transpose(e);
  r.transpose_weights = weight_system(r.transpose);
  r.dual = dual_group(e, r.group);
  if (r.group_contains_j) r.g_tilde = quotient_by_j(r.group, exponential_element(r.weights));
  PhaseVector jt = exponential_element(r.transpose_weights);
  if (r.dual.contains(jt)) r.gt_tilde = quotient_by_j(r.dual, jt);
  if (r.cy_type.ok) {
    r.toric = build_toric_data(e, r.group);
    r.ambient = check_mirror_ambient(e, r.group, *r.toric, opts);
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

MirrorReport mirror_pipeline(const std::string& poly_text, const std::string& group_spec, const VerifyOptions& opts) {
  try {
    Polynomial p = parse_polynomial_any(poly_text);
    ExponentMatrix e = exponent_matrix(p);
    WeightSystem w = weight_system(e);
    std::vector<PhaseVector> gens = parse_group_spec(group_spec, e.size(), exponential_element(w));
    DiagonalGroup g = subgroup(gens, aut_group(e));
    MirrorReport r = mirror_pipeline(e, g, {poly_text, group_spec}, opts);
    r.polynomial = p;
    return r;
  } catch (const Error& ex) {
    throw Error(ex.kind(), ex.message() + " [input: \"" + poly_text + "\", group: \"" + group_spec + "\"]");
  }
}

// ---------------------------------------------------------------------------
// Shared setup and atlas

SetupVerdict shared_setup_check(const ExponentMatrix& e1, const ExponentMatrix& e2, const DiagonalGroup& g) {
  SetupVerdict v;
  if (e1.size() != e2.size() || g.num_vars() != e1.size()) {
    v.reason = "variable counts differ";
    return v;
  }
  WeightSystem w1 = weight_system(e1), w2 = weight_system(e2);
  if (!(w1 == w2)) {
    auto str = [](const WeightSystem& w) {
      std::string s = "(";
      for (std::size_t i = 0; i < w.c.size(); ++i) s += (i ? "," : "") + w.c[i].get_str();
      return s + ")/" + w.d.get_str();
    };
    v.reason = "weights differ: " + str(w1) + " vs " + str(w2);
    return v;
  }
  for (int side = 0; side < 2; ++side) {
    const ExponentMatrix& e = side == 0 ? e1 : e2;
    CyTypeVerdict cy = is_cy_type(e, g);
    if (!cy.ok) {
      v.reason = std::string(side == 0 ? "first" : "second") + " polynomial: " + cy.diagnostic;
      return v;
    }
  }
  if (!(build_invariant_lattice(w1, g).basis == build_invariant_lattice(w2, g).basis)) {
    v.reason = "invariant lattices differ";
    return v;
  }
  v.ok = true;
  return v;
}

namespace {

std::vector<IntVector> pull_back(const IntegerMatrix& dehom, const std::vector<IntVector>& chart) {
  std::vector<IntVector> out;
  for (const auto& term : chart) {
    IntVector exps(dehom.rows());
    for (std::size_t i = 0; i < dehom.rows(); ++i) {
      Integer acc = 1;
      for (std::size_t k = 0; k < dehom.cols(); ++k) acc += dehom(i, k) * term[k];
      exps[i] = acc;
    }
    out.push_back(std::move(exps));
  }
  return out;
}

}  // namespace

BirationalAtlas common_chart(const ExponentMatrix& e1, const ExponentMatrix& e2, const DiagonalGroup& g) {
  SetupVerdict v = shared_setup_check(e1, e2, g);
  if (!v.ok) throw Error(ErrorKind::SetupMismatch, v.reason);

  std::array<ToricData, 2> data{build_toric_data(e1, g), build_toric_data(e2, g)};
  BirationalAtlas atlas;
  atlas.weights = data[0].lattice.weights;
  atlas.group = g;
  atlas.m_basis = data[0].lattice.basis;
  for (const auto& nu : data[0].nu) atlas.shared_chart.push_back(nu.basis_coords);

  atlas.terms_identical = data[1].lattice.basis == atlas.m_basis;
  for (std::size_t j = 0; j < data[1].nu.size() && atlas.terms_identical; ++j)
    if (data[1].nu[j].basis_coords != atlas.shared_chart[j]) atlas.terms_identical = false;

  for (std::size_t s = 0; s < 2; ++s) {
    const ExponentMatrix& e = s == 0 ? e1 : e2;
    AtlasSide& side = atlas.sides[s];
    side.exponents = e;
    side.section = transpose(e).polynomial();
    const std::size_t n = data[s].lattice.rank();
    side.dehom = IntegerMatrix(e.size(), n);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t k = 0; k < n; ++k) side.dehom(i, k) = data[s].mu[i].basis_coords[k];
    side.relation_weights = data[s].dual.relation_weights;
    side.ambient_quotient = data[s].ambient.quotient_invariants;
    atlas.sections_recovered[s] = pull_back(side.dehom, atlas.shared_chart) == side.section.monomials();
  }
  return atlas;
}

// ---------------------------------------------------------------------------
// Rational point probe

namespace {

Rational rational_pow(const Rational& x, const Integer& e) {
  if (e == 0) return 1;
  Integer mag = abs(e);
  if (!mag.fits_ulong_p()) throw Error(ErrorKind::InvalidArgument, "exponent too large");
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), mag.get_ui());
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), mag.get_ui());
  Rational r = e > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

Rational laurent_monomial(std::span<const Rational> x, std::span<const Integer> exps) {
  Rational r = 1;
  for (std::size_t i = 0; i < x.size(); ++i) r *= rational_pow(x[i], exps[i]);
  return r;
}

std::string point_str(std::span<const Rational> p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + p[i].get_str();
  return s + ")";
}

// Integer X with A^T X = power * I, where A = dehom ((n+1) x n).
struct CoxLift {
  Integer exponent;  // largest invariant factor of coker(A^T)
  IntegerMatrix x;
};

Integer lift_exponent(const IntegerMatrix& dehom) {
  SmithForm sf = smith_normal_form(dehom.transposed());
  const std::size_t n = dehom.cols();
  Integer ex = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (sf.d(k, k) == 0) throw ProbeFailure("dehomogenization map is degenerate", {});
    mpz_lcm(ex.get_mpz_t(), ex.get_mpz_t(), sf.d(k, k).get_mpz_t());
  }
  return ex;
}

IntegerMatrix lift_matrix(const IntegerMatrix& dehom, const IntVector& relation, const Integer& power) {
  const std::size_t n = dehom.cols(), n1 = dehom.rows();
  SmithForm sf = smith_normal_form(dehom.transposed());
  // left A^T right = S, so X = right * Y with S Y = power * left.
  IntegerMatrix y(n1, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      Integer num = power * sf.left(k, l);
      if (num % sf.d(k, k) != 0) throw ProbeFailure("no integral Cox lift", {});
      y(k, l) = num / sf.d(k, k);
    }
  IntegerMatrix x = sf.right * y;
  // Shorten the columns along the kernel direction to keep exponents small.
  Integer ww = 0;
  for (const auto& w : relation) ww += w * w;
  if (ww != 0 && relation.size() == n1) {
    for (std::size_t l = 0; l < n; ++l) {
      Integer xw = 0;
      for (std::size_t i = 0; i < n1; ++i) xw += x(i, l) * relation[i];
      Rational shift(xw, ww);
      shift.canonicalize();
      Integer z;
      mpz_fdiv_q(z.get_mpz_t(), Rational(shift + Rational(1, 2)).get_num_mpz_t(),
                 Rational(shift + Rational(1, 2)).get_den_mpz_t());
      for (std::size_t i = 0; i < n1; ++i) x(i, l) -= z * relation[i];
    }
  }
  return x;
}

}  // namespace

ProbeRecord rational_point_probe(const BirationalAtlas& atlas, std::size_t samples, std::uint64_t seed) {
  ProbeRecord rec;
  rec.samples = samples;
  rec.seed = seed;
  if (samples == 0) return rec;

  const std::size_t n = atlas.m_basis.rank();
  Integer power = 1;
  for (const auto& side : atlas.sides) {
    if (side.dehom.cols() != n) throw ProbeFailure("dehomogenization map has the wrong shape", {});
    Integer ex = lift_exponent(side.dehom);
    mpz_lcm(power.get_mpz_t(), power.get_mpz_t(), ex.get_mpz_t());
  }
  rec.power = power;
  std::array<IntegerMatrix, 2> lifts{lift_matrix(atlas.sides[0].dehom, atlas.sides[0].relation_weights, power),
                                     lift_matrix(atlas.sides[1].dehom, atlas.sides[1].relation_weights, power)};

  std::mt19937_64 rng(seed);
  auto draw = [&]() {
    std::uint64_t num = 1 + rng() % 97;
    std::uint64_t den = 1 + rng() % 97;
    bool negative = rng() & 1;
    Rational r(Integer(std::to_string(num)), Integer(std::to_string(den)));
    r.canonicalize();
    return negative ? Rational(-r) : r;
  };

  for (std::size_t s = 0; s < samples; ++s) {
    RatVector u(n);
    for (auto& x : u) x = draw();
    RatVector t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = rational_pow(u[k], power);

    Rational chart = 0;
    for (const auto& term : atlas.shared_chart) chart += laurent_monomial(t, term);
    const bool chart_zero = chart == 0;
    if (chart_zero) ++rec.zero_hits;

    for (std::size_t side = 0; side < 2; ++side) {
      const AtlasSide& as = atlas.sides[side];
      const IntegerMatrix& x = lifts[side];
      const std::size_t n1 = as.dehom.rows();
      RatVector cox(n1);
      for (std::size_t i = 0; i < n1; ++i) cox[i] = laurent_monomial(u, x.row(i));
      for (std::size_t k = 0; k < n; ++k) {
        if (laurent_monomial(cox, as.dehom.col(k)) != t[k])
          throw ProbeFailure("Cox lift does not map to the torus point " + point_str(t), t);
      }
      Rational prod = 1;
      for (const auto& y : cox) prod *= y;
      Rational section = as.section.evaluate(cox);
      const bool section_zero = section == 0;
      if (section_zero != chart_zero || section != prod * chart) {
        rec.passed = false;
        throw ProbeFailure("side " + std::to_string(side) + " disagrees with the shared chart at t = " +
                               point_str(t) + ": section " + section.get_str() + " vs " +
                               Rational(prod * chart).get_str(),
                           t);
      }
    }
    ++rec.agreements;
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Enumeration

IntegerMatrix canonical_relabeling(const IntegerMatrix& e, const IntVector& weights) {
  const std::size_t n = e.cols();
  std::map<Integer, std::vector<std::size_t>> classes;
  for (std::size_t j = 0; j < n; ++j) classes[weights[j]].push_back(j);
  std::vector<std::vector<std::size_t>> groups;
  for (auto& [w, idx] : classes) groups.push_back(idx);

  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = j;
  std::vector<IntVector> best;
  bool have = false;

  std::function<void(std::size_t)> rec = [&](std::size_t gi) {
    if (gi == groups.size()) {
      std::vector<IntVector> rows(e.rows(), IntVector(n));
      for (std::size_t r = 0; r < e.rows(); ++r)
        for (std::size_t j = 0; j < n; ++j) rows[r][perm[j]] = e(r, j);
      std::sort(rows.begin(), rows.end(), std::greater<>());
      if (!have || rows > best) {
        best = std::move(rows);
        have = true;
      }
      return;
    }
    std::vector<std::size_t> targets = groups[gi];
    std::sort(targets.begin(), targets.end());
    do {
      for (std::size_t k = 0; k < groups[gi].size(); ++k) perm[groups[gi][k]] = targets[k];
      rec(gi + 1);
    } while (std::next_permutation(targets.begin(), targets.end()));
  };
  rec(0);
  return IntegerMatrix::from_rows(best, n);
}

std::vector<ExponentMatrix> enumerate_invertible(const WeightSystem& w) {
  const std::size_t n = w.c.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  // options[i]: (pointer, exponent) readings x_i^a * x_pointer, pointer == none for Fermat.
  std::vector<std::vector<std::pair<std::size_t, Integer>>> options(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (w.d % w.c[i] == 0 && w.d / w.c[i] >= 2) options[i].emplace_back(none, w.d / w.c[i]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      Integer rest = w.d - w.c[k];
      if (rest > 0 && rest % w.c[i] == 0) options[i].emplace_back(k, rest / w.c[i]);
    }
  }

  std::set<std::vector<IntVector>> found;
  std::vector<bool> pointed(n, false);
  IntegerMatrix e(n, n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      std::set<IntVector> rows;
      for (std::size_t r = 0; r < n; ++r)
        if (!rows.insert(e.row(r)).second) return;
      try {
        ExponentMatrix em(e);
        if (!(weight_system(em) == w)) return;
        atom_decomposition(em);
      } catch (const Error&) {
        return;
      }
      found.insert(canonical_relabeling(e, w.c).row_vectors());
      return;
    }
    for (const auto& [ptr, a] : options[i]) {
      if (ptr != none && pointed[ptr]) continue;
      for (std::size_t j = 0; j < n; ++j) e(i, j) = 0;
      e(i, i) = a;
      if (ptr != none) {
        e(i, ptr) = 1;
        pointed[ptr] = true;
      }
      rec(i + 1);
      if (ptr != none) pointed[ptr] = false;
    }
  };
  rec(0);

  std::vector<ExponentMatrix> out;
  // Descending, to list Fermat-heavy shapes first.
  for (auto it = found.rbegin(); it != found.rend(); ++it) out.emplace_back(IntegerMatrix::from_rows(*it, n));
  return out;
}

}  // namespace bhk
