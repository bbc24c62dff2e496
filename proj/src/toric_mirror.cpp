#include "bhk/toric_mirror.hpp"

#include <algorithm>
#include <stdexcept>

namespace bhk {

namespace {

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

std::string vec_str(std::span<const Integer> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string vec_str(std::span<const Rational> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

}  // namespace

GradedInvariantLattice build_invariant_lattice(const WeightSystem& w, const DiagonalGroup& g) {
  const std::size_t n1 = w.c.size();
  if (g.num_vars() != n1) throw Error(ErrorKind::InvalidArgument, "group acts on a different number of variables");
  // M = {a^T L : a . (L c) = 0} for L the membership lattice basis of G.
  const auto& inv = g.membership_lattice().basis();
  IntegerMatrix degree_row(1, n1);
  for (std::size_t k = 0; k < n1; ++k) degree_row(0, k) = dot(inv[k], w.c);
  LatticeBasis coeffs = kernel_lattice(degree_row);
  std::vector<IntVector> gens;
  for (const auto& a : coeffs.basis()) gens.push_back(g.membership_lattice().combine(a));
  return {w, g, LatticeBasis::from_generators(n1, gens)};
}

std::vector<RayPoint> nu_points(const GradedInvariantLattice& m) {
  const std::size_t n1 = m.basis.ambient_rank();
  const auto& b = m.basis.basis();
  std::vector<RayPoint> out;
  for (std::size_t j = 0; j < n1; ++j) {
    RayPoint p;
    p.kind = RayKind::Nu;
    p.index = j;
    p.ambient_coords.assign(n1, 0);
    p.ambient_coords[j] = 1;
    for (const auto& row : b) p.basis_coords.push_back(row[j]);
    p.primitive = gcd_of(p.basis_coords) == 1;
    if (!p.primitive)
      throw Error(ErrorKind::NonPrimitiveRay, "nu_" + std::to_string(j) + " = " + vec_str(p.basis_coords) +
                                                  " is not primitive");
    out.push_back(std::move(p));
  }
  for (std::size_t k = 0; k < m.rank(); ++k) {
    Integer s = 0;
    for (std::size_t j = 0; j < n1; ++j) s += m.weights.c[j] * out[j].basis_coords[k];
    if (s != 0) throw std::logic_error("weighted sum of the nu_j is not zero");
  }
  return out;
}

std::vector<RayPoint> mu_points(const ExponentMatrix& e, const GradedInvariantLattice& m) {
  const std::size_t n1 = e.size();
  std::vector<RayPoint> out;
  for (std::size_t i = 0; i < n1; ++i) {
    RayPoint p;
    p.kind = RayKind::Mu;
    p.index = i;
    for (std::size_t j = 0; j < n1; ++j) p.ambient_coords.push_back(e.matrix()(i, j) - 1);
    auto coords = m.basis.coordinates(p.ambient_coords);
    if (!coords) {
      if (dot(p.ambient_coords, m.weights.c) != 0)
        throw Error(ErrorKind::NotInLattice, "mu_" + std::to_string(i) +
                                                 " has nonzero degree: Calabi–Yau condition fails");
      throw Error(ErrorKind::NotInLattice, "mu_" + std::to_string(i) +
                                               " is not G-invariant: G is not contained in SL");
    }
    p.basis_coords = std::move(*coords);
    p.primitive = gcd_of(p.basis_coords) == 1;
    if (!p.primitive)
      throw Error(ErrorKind::NonPrimitiveRay, "mu_" + std::to_string(i) + " = " + vec_str(p.basis_coords) +
                                                  " is not primitive in M");
    out.push_back(std::move(p));
  }
  return out;
}

IntegerMatrix pairing_matrix(const std::vector<RayPoint>& mus, const std::vector<RayPoint>& nus) {
  IntegerMatrix out(mus.size(), nus.size());
  for (std::size_t i = 0; i < mus.size(); ++i)
    for (std::size_t j = 0; j < nus.size(); ++j) {
      if (mus[i].basis_coords.size() != nus[j].basis_coords.size())
        throw Error(ErrorKind::InvalidArgument, "mu and nu live in lattices of different rank");
      out(i, j) = dot(mus[i].basis_coords, nus[j].basis_coords);
    }
  return out;
}

SimplexFan simplex_fan(const std::vector<RayPoint>& vertices) {
  if (vertices.empty()) throw Error(ErrorKind::DegenerateSimplex, "no vertices");
  const std::size_t n = vertices.front().basis_coords.size();
  if (vertices.size() != n + 1)
    throw Error(ErrorKind::DegenerateSimplex, std::to_string(vertices.size()) + " vertices in a rank-" +
                                                  std::to_string(n) + " lattice");
  IntegerMatrix cols(n, n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t k = 0; k < n; ++k) cols(k, i) = vertices[i].basis_coords.at(k);
  LatticeBasis rel = kernel_lattice(cols);
  if (rel.rank() != 1) throw Error(ErrorKind::DegenerateSimplex, "vertices do not span the lattice");
  IntVector w = rel.basis().front();
  if (w.front() < 0)
    for (auto& x : w) x = -x;
  if (!std::all_of(w.begin(), w.end(), [](const Integer& x) { return x > 0; }))
    throw Error(ErrorKind::DegenerateSimplex, "relation " + vec_str(w) + " is not positive: fan is not complete");
  return {n, vertices, std::move(w)};
}

SimplexFan dual_fan(const std::vector<RayPoint>& mus) { return simplex_fan(mus); }

AmbientReport ambient_structure(const SimplexFan& f, const GradedInvariantLattice& m) {
  const std::size_t n = m.rank();
  if (f.lattice_rank != n) throw Error(ErrorKind::InvalidArgument, "fan and lattice ranks differ");
  std::vector<IntVector> pts;
  for (const auto& v : f.vertices) pts.push_back(v.basis_coords);
  QuotientPresentation qp = quotient_presentation(LatticeBasis::standard(n), LatticeBasis::from_generators(n, pts));
  AmbientReport r;
  r.relation_weights = f.relation_weights;
  r.quotient_invariants = qp.invariants;
  r.quotient_generators = qp.generators;
  return r;
}

Polynomial hypersurface_section(const SimplexFan& f, const std::vector<RayPoint>& duals) {
  const std::size_t nv = f.vertices.size();
  std::vector<IntVector> monomials;
  for (const auto& dual : duals) {
    IntVector exps(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      exps[i] = dot(f.vertices[i].basis_coords, dual.basis_coords) + 1;
      if (exps[i] < 0)
        throw Error(ErrorKind::NegativeExponent, "pairing below -1 between vertex " + std::to_string(i) +
                                                     " and dual point " + std::to_string(dual.index));
    }
    monomials.push_back(std::move(exps));
  }
  return Polynomial(nv, std::move(monomials));
}

ToricData build_toric_data(const ExponentMatrix& e, const DiagonalGroup& g) {
  CyTypeVerdict verdict = is_cy_type(e, g);
  if (!verdict.ok) throw Error(ErrorKind::NotCalabiYauType, verdict.diagnostic);
  ToricData t;
  t.lattice = build_invariant_lattice(weight_system(e), g);
  t.nu = nu_points(t.lattice);
  t.mu = mu_points(e, t.lattice);
  t.pairing = pairing_matrix(t.mu, t.nu);
  const std::size_t n1 = e.size();
  t.pairing_ok = true;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      if (t.pairing(i, j) + 1 != e.matrix()(i, j)) t.pairing_ok = false;
  t.fan = simplex_fan(t.nu);
  t.dual = dual_fan(t.mu);
  t.ambient = ambient_structure(t.dual, t.lattice);
  return t;
}

// ---------------------------------------------------------------------------
// Verification

const ClauseResult* AmbientVerification::first_failure() const {
  for (const auto& c : clauses)
    if (!c.passed) return &c;
  return nullptr;
}

VerificationFailed::VerificationFailed(AmbientVerification record)
    : Error(ErrorKind::VerificationFailed,
            record.first_failure() ? record.first_failure()->name + ": " + record.first_failure()->detail
                                   : std::string("unknown clause")),
      record_(std::move(record)) {}

namespace {

struct MirrorSide {
  RatVector p;  // (E^T)^{-1} 1
  DiagonalGroup dual;
  PhaseVector j_transpose;
  DiagonalGroup j_cyclic;
};

// Phase vector t = (E^T)^{-1} A m for m in M-basis coordinates, together with
// r solving sum r_i mu_i = m.
std::pair<RatVector, RatVector> action_vectors(const ExponentMatrix& e, const ToricData& data, const IntVector& m) {
  const std::size_t n = data.lattice.rank();
  const std::size_t n1 = n + 1;
  IntVector am = data.lattice.basis.combine(m);
  RatVector am_q(am.begin(), am.end());
  RatVector t = solve_rational(to_rational(e.matrix().transposed()), am_q);

  // Drop one mu (any n of them are independent since the relation is positive).
  RationalMatrix mu_cols(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) mu_cols(k, i) = data.mu[i].basis_coords[k];
  RatVector m_q(m.begin(), m.end());
  RatVector r_head = n == 0 ? RatVector{} : solve_rational(mu_cols, m_q);
  RatVector r(n1);
  for (std::size_t i = 0; i < n; ++i) r[i] = r_head[i];
  return {std::move(r), std::move(t)};
}

bool in_cyclic(const DiagonalGroup& cyclic, const RatVector& t) { return cyclic.contains(PhaseVector(t)); }

}  // namespace

AmbientVerification check_mirror_ambient(const ExponentMatrix& e, const DiagonalGroup& g, const ToricData& data,
                                         const VerifyOptions& opts) {
  AmbientVerification out;
  out.report = data.ambient;
  const std::size_t n1 = e.size();
  ExponentMatrix et = transpose(e);

  MirrorSide side;
  side.p = solve_rational(to_rational(et.matrix()), RatVector(n1, Rational(1)));
  side.dual = dual_group(e, g);

  // (a) relation weights = dbar * p with dbar minimal, = weights of W^T.
  {
    ClauseResult c{"relation_weights", false, ""};
    Integer dbar = lcm_of_denominators(side.p);
    IntVector scaled;
    for (const auto& x : side.p) {
      Rational y = x * dbar;
      scaled.push_back(y.get_num());
    }
    WeightSystem wt = weight_system(et);
    bool coprime = gcd_of(scaled) == 1;
    c.passed = coprime && scaled == data.ambient.relation_weights && wt.c == scaled && wt.d == dbar;
    c.detail = "relation " + vec_str(data.ambient.relation_weights) + ", dbar*p = " + vec_str(scaled) +
               ", dbar = " + dbar.get_str() + ", W^T weights " + vec_str(wt.c) + " of degree " + wt.d.get_str();
    out.clauses.push_back(std::move(c));
  }

  // (b) M / <mu> has the invariants of G^T / <j_{W^T}>.
  side.j_transpose = exponential_element(weight_system(et));
  side.j_cyclic = DiagonalGroup(n1, {side.j_transpose});
  bool j_in_dual = side.dual.contains(side.j_transpose);
  {
    ClauseResult c{"quotient_invariants", false, ""};
    if (!j_in_dual) {
      c.detail = "j_{W^T} is not in G^T";
    } else {
      QuotientGroup q = quotient_by_j(side.dual, side.j_transpose);
      c.passed = q.invariants == data.ambient.quotient_invariants;
      c.detail = "M/<mu> = " + data.ambient.quotient_invariants.to_string() + ", G^T/<j> = " + q.invariants.to_string();
    }
    out.clauses.push_back(std::move(c));
  }

  // (c) each generator m of M/<mu> acts through r on Cox coordinates and
  // through t = (E^T)^{-1} A m as an element of G^T; t = r - (sum r) p and the
  // class of t in G~^T has the same order as m.
  {
    ClauseResult c{"action", true, ""};
    const auto& gens = data.ambient.quotient_generators;
    if (gens.size() != data.ambient.quotient_invariants.factors().size()) {
      c.passed = false;
      c.detail = "quotient generators do not match the invariant factors";
    }
    for (std::size_t k = 0; c.passed && k < gens.size(); ++k) {
      ActionCheck ac;
      ac.m = gens[k];
      ac.class_order = data.ambient.quotient_invariants.factors()[k];
      auto [r, t] = action_vectors(e, data, ac.m);
      Rational rs = 0;
      for (const auto& x : r) rs += x;
      bool identity = true;
      for (std::size_t i = 0; i < n1; ++i)
        if (t[i] != r[i] - rs * side.p[i]) identity = false;
      bool member = side.dual.contains(PhaseVector(t));
      Integer ord = 0;
      if (member) {
        for (Integer s = 1; s <= ac.class_order; ++s) {
          RatVector ts(n1);
          for (std::size_t i = 0; i < n1; ++i) ts[i] = t[i] * s;
          if (in_cyclic(side.j_cyclic, ts)) {
            ord = s;
            break;
          }
        }
      }
      ac.ok = identity && member && ord == ac.class_order;
      ac.r = std::move(r);
      ac.t = std::move(t);
      if (!ac.ok) {
        c.passed = false;
        c.detail += "generator " + vec_str(ac.m) + ": t=" + vec_str(ac.t) + " r=" + vec_str(ac.r) +
                    (identity ? "" : " [t != r - (sum r) p]") + (member ? "" : " [t not in G^T]") +
                    " order " + ord.get_str() + " vs " + ac.class_order.get_str() + "; ";
      }
      out.report.action_checks.push_back(std::move(ac));
    }
    if (c.passed) c.detail = std::to_string(gens.size()) + " quotient generators checked";
    out.clauses.push_back(std::move(c));
  }

  if (opts.full_action_check) {
    ClauseResult c{"full_action", true, ""};
    const auto& inv = data.ambient.quotient_invariants;
    if (inv.order() > opts.max_full_order) {
      c.passed = false;
      c.detail = "quotient order " + inv.order().get_str() + " exceeds the full-check bound";
    } else {
      const auto& gens = data.ambient.quotient_generators;
      const std::size_t r = gens.size();
      const std::size_t n = data.lattice.rank();
      std::vector<Integer> digits(r, 0);
      std::size_t checked = 0;
      for (;;) {
        IntVector m(n);
        bool zero = true;
        for (std::size_t k = 0; k < r; ++k) {
          if (digits[k] != 0) zero = false;
          for (std::size_t l = 0; l < n; ++l) m[l] += digits[k] * gens[k][l];
        }
        auto [rv, t] = action_vectors(e, data, m);
        bool trivial = in_cyclic(side.j_cyclic, t);
        if (trivial != zero || !side.dual.contains(PhaseVector(t))) {
          c.passed = false;
          c.detail = "element " + vec_str(m) + " maps incorrectly";
          break;
        }
        ++checked;
        std::size_t k = 0;
        while (k < r && ++digits[k] == inv.factors()[k]) digits[k++] = 0;
        if (k == r) break;
      }
      if (c.passed) c.detail = std::to_string(checked) + " elements map injectively";
    }
    out.clauses.push_back(std::move(c));
  }

  {
    ClauseResult c{"pairing", data.pairing_ok, data.pairing_ok ? "E = <mu_i, nu_j> + 1" : "pairing differs from E - 1"};
    out.clauses.push_back(std::move(c));
  }

  {
    ClauseResult c{"transpose_section", false, ""};
    Polynomial section = hypersurface_section(data.dual, data.nu);
    c.passed = section.monomials() == et.matrix().row_vectors();
    c.detail = c.passed ? "section of the dual fan is W^T" : "section of the dual fan differs from W^T";
    out.clauses.push_back(std::move(c));
  }

  out.verified = std::all_of(out.clauses.begin(), out.clauses.end(), [](const ClauseResult& c) { return c.passed; });
  return out;
}

AmbientVerification verify_mirror_ambient(const ExponentMatrix& e, const DiagonalGroup& g, const VerifyOptions& opts) {
  ToricData data = build_toric_data(e, g);
  AmbientVerification v = check_mirror_ambient(e, g, data, opts);
  if (!v.verified) throw VerificationFailed(std::move(v));
  return v;
}

}  // namespace bhk
