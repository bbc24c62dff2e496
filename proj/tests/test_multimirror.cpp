#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "bhk/multimirror.hpp"
#include "oracles.hpp"

using namespace bhk;

namespace {

ExponentMatrix parse_e(const char* text) { return exponent_matrix(parse_polynomial(text)); }

const char* kFermat = "x0^5+x1^5+x2^5+x3^5+x4^5";
const char* kChain = "x0^4*x1+x1^4*x2+x2^4*x3+x3^4*x4+x4^5";
const char* kMixed = "x0^4*x1+x1^5+x2^5+x3^5+x4^5";

DiagonalGroup j_group(const ExponentMatrix& e) {
  return DiagonalGroup(e.size(), {exponential_element(weight_system(e))});
}

using Rows = std::vector<std::vector<long>>;

// Canonical form by exhaustive search over weight-preserving permutations:
// smallest sorted row list.
Rows oracle_canonical(const Rows& e, const std::vector<long>& c) {
  const std::size_t n = c.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rows best;
  bool have = false;
  do {
    bool keeps = true;
    for (std::size_t j = 0; j < n; ++j)
      if (c[perm[j]] != c[j]) keeps = false;
    if (!keeps) continue;
    Rows rows(e.size(), std::vector<long>(n));
    for (std::size_t r = 0; r < e.size(); ++r)
      for (std::size_t j = 0; j < n; ++j) rows[r][perm[j]] = e[r][j];
    std::sort(rows.begin(), rows.end());
    if (!have || rows < best) {
      best = rows;
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Rows to_rows(const IntegerMatrix& m) {
  Rows out(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_si();
  return out;
}

long small_det(const std::vector<std::vector<long>>& rows, const std::vector<std::size_t>& pick) {
  auto a = [&](std::size_t r, std::size_t c) { return rows[pick[r]][c]; };
  switch (pick.size()) {
    case 1: return a(0, 0);
    case 2: return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    case 3:
      return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    default: throw std::logic_error("small_det handles at most 3 rows");
  }
}

// All invertible nondegenerate polynomials with weights c / d, by trying every
// set of n distinct monomials of degree d.
std::set<Rows> brute_force_invertible(const std::vector<long>& c, long d) {
  const std::size_t n = c.size();
  std::vector<std::vector<long>> monomials;
  std::vector<long> cur(n);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long rest) {
    if (i == n) {
      if (rest == 0) monomials.push_back(cur);
      return;
    }
    for (long a = 0; a * c[i] <= rest; ++a) {
      cur[i] = a;
      rec(i + 1, rest - a * c[i]);
    }
  };
  rec(0, d);

  std::set<Rows> out;
  std::vector<std::vector<std::size_t>> choices;
  oracle::subsets(monomials.size(), n, choices);
  for (const auto& pick : choices) {
    if (small_det(monomials, pick) == 0) continue;
    IntegerMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t j = 0; j < n; ++j) m(r, j) = monomials[pick[r]][j];
    try {
      atom_decomposition(ExponentMatrix(m));
    } catch (const Error&) {
      continue;
    }
    out.insert(oracle_canonical(to_rows(m), c));
  }
  return out;
}

}  // namespace

TEST(Pipeline, WorkedExamples) {
  MirrorReport r1 = mirror_pipeline(kFermat, "j");
  ASSERT_TRUE(r1.ambient);
  EXPECT_TRUE(r1.ambient->verified);
  EXPECT_EQ(r1.dual.invariants(), AbelianInvariants({5, 5, 5, 5}));
  EXPECT_EQ(r1.ambient->report.quotient_invariants, AbelianInvariants({5, 5, 5}));

  MirrorReport r2 = mirror_pipeline(kChain, "j");
  EXPECT_EQ(r2.transpose_weights.c, (IntVector{64, 48, 52, 51, 41}));
  ASSERT_TRUE(r2.gt_tilde);
  EXPECT_TRUE(r2.gt_tilde->invariants.trivial());

  MirrorReport r3 = mirror_pipeline(kMixed, "j");
  ASSERT_TRUE(r3.gt_tilde);
  EXPECT_EQ(r3.gt_tilde->invariants, AbelianInvariants({5, 5}));
}

TEST(Pipeline, NonCalabiYauSkipsToricPart) {
  MirrorReport r = mirror_pipeline("x0^3", "j");
  EXPECT_FALSE(r.cy_type.ok);
  EXPECT_FALSE(r.toric);
  EXPECT_FALSE(r.ambient);
}

TEST(Pipeline, ErrorsCarryInputContext) {
  try {
    mirror_pipeline("x0^5+x0^5", "j");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DuplicateMonomial);
    EXPECT_NE(std::string(e.what()).find("x0^5+x0^5"), std::string::npos);
  }
}

TEST(SharedSetup, WeightsMustAgree) {
  ExponentMatrix fermat = parse_e(kFermat);
  ExponentMatrix other = transpose(parse_e(kChain));
  SetupVerdict v = shared_setup_check(fermat, other, j_group(fermat));
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.reason.find("weights differ"), std::string::npos);
  try {
    common_chart(fermat, other, j_group(fermat));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SetupMismatch);
  }
}

TEST(Atlas, WorkedExamplesShareTheChart) {
  const char* polys[] = {kFermat, kChain, kMixed};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      ExponentMatrix e1 = parse_e(polys[a]), e2 = parse_e(polys[b]);
      BirationalAtlas atlas = common_chart(e1, e2, j_group(e1));
      EXPECT_TRUE(atlas.terms_identical);
      EXPECT_TRUE(atlas.sections_recovered[0]);
      EXPECT_TRUE(atlas.sections_recovered[1]);
      ProbeRecord p = rational_point_probe(atlas, 100, 2024);
      EXPECT_EQ(p.agreements, 100u);
      EXPECT_TRUE(p.passed);
    }
}

TEST(Atlas, ChartIsSumOfNu) {
  ExponentMatrix e1 = parse_e(kFermat), e2 = parse_e(kChain);
  BirationalAtlas atlas = common_chart(e1, e2, j_group(e1));
  ASSERT_EQ(atlas.shared_chart.size(), 5u);
  IntVector sum(4);
  for (const auto& t : atlas.shared_chart)
    for (std::size_t k = 0; k < 4; ++k) sum[k] += t[k];
  EXPECT_EQ(sum, (IntVector{0, 0, 0, 0}));
}

TEST(Probe, DeterministicForFixedSeed) {
  ExponentMatrix e1 = parse_e(kChain), e2 = parse_e(kMixed);
  BirationalAtlas atlas = common_chart(e1, e2, j_group(e1));
  ProbeRecord a = rational_point_probe(atlas, 20, 5);
  ProbeRecord b = rational_point_probe(atlas, 20, 5);
  EXPECT_EQ(a.power, b.power);
  EXPECT_EQ(a.zero_hits, b.zero_hits);
  EXPECT_EQ(a.agreements, b.agreements);
}

TEST(Probe, CorruptedDehomogenizationIsCaught) {
  ExponentMatrix e1 = parse_e(kFermat), e2 = parse_e(kMixed);
  BirationalAtlas atlas = common_chart(e1, e2, j_group(e1));
  atlas.sides[1].dehom(0, 0) += 1;
  try {
    rational_point_probe(atlas, 100, 1);
    FAIL();
  } catch (const ProbeFailure& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ProbeFailure);
    EXPECT_FALSE(std::string(e.what()).empty());
  }
}

TEST(Probe, CorruptedChartIsCaught) {
  ExponentMatrix e1 = parse_e(kFermat), e2 = parse_e(kChain);
  BirationalAtlas atlas = common_chart(e1, e2, j_group(e1));
  atlas.shared_chart[0][1] += 1;
  EXPECT_THROW(rational_point_probe(atlas, 10, 1), ProbeFailure);
}

TEST(Enumerate, QuinticsContainWorkedExamples) {
  WeightSystem w = make_weight_system({1, 1, 1, 1, 1}, 5);
  std::vector<ExponentMatrix> all = enumerate_invertible(w);
  for (const char* p : {kFermat, kChain, kMixed}) {
    IntegerMatrix canon = canonical_relabeling(parse_e(p).matrix(), w.c);
    bool found = std::any_of(all.begin(), all.end(), [&](const ExponentMatrix& e) { return e.matrix() == canon; });
    EXPECT_TRUE(found) << p;
  }
  // Listing is stable.
  EXPECT_EQ(enumerate_invertible(w), all);
}

TEST(Enumerate, BinaryCubics) {
  // Fermat, chain x0^2*x1 + x1^3 and loop x0^2*x1 + x0*x1^2.
  EXPECT_EQ(enumerate_invertible(make_weight_system({1, 1}, 3)).size(), 3u);
}

TEST(Enumerate, MatchesBruteForceUpToThreeVariables) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (long d = 2; d <= 12; ++d) {
      std::vector<long> c(n, 1);
      std::function<void(std::size_t, long)> rec = [&](std::size_t i, long lo) {
        if (i == n) {
          long g = d;
          for (long x : c) g = std::gcd(g, x);
          if (g != 1) return;
          IntVector ci(c.begin(), c.end());
          std::set<Rows> lib;
          for (const auto& e : enumerate_invertible(make_weight_system(ci, d)))
            lib.insert(oracle_canonical(to_rows(e.matrix()), c));
          EXPECT_EQ(lib, brute_force_invertible(c, d)) << "d=" << d << " n=" << n;
          return;
        }
        for (long x = lo; x < d; ++x) {
          c[i] = x;
          rec(i + 1, x);
        }
      };
      rec(0, 1);
    }
}

TEST(CanonicalRelabeling, InvariantUnderPermutation) {
  IntVector w{1, 1, 1, 1, 1};
  IntegerMatrix e = parse_e(kMixed).matrix();
  IntegerMatrix relabeled{{5, 0, 0, 0, 0}, {0, 5, 0, 0, 0}, {0, 0, 0, 5, 0}, {0, 0, 1, 0, 4}, {0, 0, 5, 0, 0}};
  // relabeled: x2 <-> x0 chain head swapped around, rows shuffled.
  IntegerMatrix rows_swapped{{0, 0, 0, 5, 0}, {0, 5, 0, 0, 0}, {0, 0, 0, 0, 5}, {0, 0, 5, 0, 0}, {4, 1, 0, 0, 0}};
  EXPECT_EQ(canonical_relabeling(e, w), canonical_relabeling(rows_swapped, w));
  EXPECT_EQ(canonical_relabeling(e, w), canonical_relabeling(relabeled, w));
}
