#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bhk/corpus.hpp"
#include "bhk/multimirror.hpp"
#include "bhk/report.hpp"
#include "oracles.hpp"

using namespace bhk;

namespace {

const char* kFermat = "x0^5+x1^5+x2^5+x3^5+x4^5";
const char* kChain = "x0^4*x1+x1^4*x2+x2^4*x3+x3^4*x4+x4^5";
const char* kMixed = "x0^4*x1+x1^5+x2^5+x3^5+x4^5";

struct Check {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) why << what;
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs < limit_s, "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s");
  if (!c.ok) ++failures;
  std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << secs << " s)";
  if (!c.ok) std::cout << ": " << c.why.str();
  std::cout << "\n";
}

ExponentMatrix parse_e(const char* text) { return exponent_matrix(parse_polynomial(text)); }

DiagonalGroup j_group(const ExponentMatrix& e) {
  return DiagonalGroup(e.size(), {exponential_element(weight_system(e))});
}

PhaseVector pv(std::initializer_list<Rational> xs) { return PhaseVector(RatVector(xs)); }

// |G^T| for every G of one entry, counted from the definition over the
// elements of Aut(W^T).
std::vector<std::size_t> brute_dual_orders(const ExponentMatrix& e, const std::vector<DiagonalGroup>& groups) {
  const std::size_t n = e.size();
  const Integer det = oracle::cofactor_det(e.matrix());
  const long big_d = Integer(abs(det)).get_si();
  const IntegerMatrix adj = oracle::adjugate(e.matrix());
  std::vector<oracle::Residues> gens;
  for (std::size_t r = 0; r < n; ++r) {
    oracle::Residues v(n);
    for (std::size_t c = 0; c < n; ++c) {
      long y = Integer(Integer(adj(r, c) * (det > 0 ? 1 : -1)) % big_d).get_si();
      v[c] = y < 0 ? y + big_d : y;
    }
    gens.push_back(v);
  }
  std::vector<std::vector<long>> exps;
  for (const auto& h : oracle::closure(gens, big_d, n)) {
    std::vector<long> s(n);
    for (std::size_t j = 0; j < n; ++j) {
      long acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += h[i] * e.matrix()(i, j).get_si();
      s[j] = acc / big_d;
    }
    exps.push_back(s);
  }
  std::vector<std::size_t> out;
  for (const auto& g : groups) {
    std::vector<oracle::Residues> gg;
    for (const auto& x : g.generators()) gg.push_back(oracle::to_residues(x.phases(), big_d));
    std::size_t count = 0;
    for (const auto& s : exps) {
      bool inv = true;
      for (const auto& x : gg) {
        long acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc = (acc + s[i] * x[i]) % big_d;
        if (acc != 0) inv = false;
      }
      if (inv) ++count;
    }
    out.push_back(count);
  }
  return out;
}

// Everything the suite reports, as one JSON document.
std::string suite_json(Execution mode) {
  Json doc;
  Json reports = Json::array();
  for (const char* p : {kFermat, kChain, kMixed}) reports.push_back(to_json(mirror_pipeline(p, "j")));
  doc["examples"] = reports;
  Json atlases = Json::array();
  const char* polys[] = {kFermat, kChain, kMixed};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      ExponentMatrix e1 = parse_e(polys[a]), e2 = parse_e(polys[b]);
      BirationalAtlas atlas = common_chart(e1, e2, j_group(e1));
      Json j = to_json(atlas);
      j["probe"] = to_json(rational_point_probe(atlas, 100, 1));
      atlases.push_back(j);
    }
  doc["atlases"] = atlases;
  std::vector<CorpusEntry> corpus = build_corpus(CorpusSpec{}, mode);
  doc["corpus"] = verification_to_json(verify_corpus(corpus, mode));
  return doc.dump(2);
}

}  // namespace

int main() {
  criterion(1, "Fermat quintic with <j>", 1.0, [](Check& c) {
    MirrorReport r = mirror_pipeline(kFermat, "j");
    c.require(r.dual.invariants() == AbelianInvariants({5, 5, 5, 5}), "G^T invariants " + to_json(r.dual.invariants()).dump());
    c.require(bool(r.ambient), "no ambient report");
    if (!r.ambient) return;
    c.require(r.ambient->verified, "ambient verification failed");
    c.require(r.ambient->report.relation_weights == IntVector{1, 1, 1, 1, 1}, "relation weights");
    c.require(r.ambient->report.quotient_invariants == AbelianInvariants({5, 5, 5}), "quotient invariants");
    c.require(r.transpose.polynomial() == parse_polynomial(kFermat), "W^T is not the Fermat quintic");
  });

  criterion(2, "chain quintic with <j>", 1.0, [](Check& c) {
    MirrorReport r = mirror_pipeline(kChain, "j");
    c.require(r.transpose_weights.c == IntVector{64, 48, 52, 51, 41} && r.transpose_weights.d == 256,
              "W^T weights");
    PhaseVector jt = exponential_element(r.transpose_weights);
    c.require(r.dual == DiagonalGroup(5, {jt}), "G^T is not <j_{W^T}>");
    c.require(r.dual.order() == 256 && r.dual.invariants() == AbelianInvariants({256}), "G^T not cyclic of order 256");
    c.require(r.ambient && r.ambient->verified, "ambient verification failed");
    c.require(r.ambient && r.ambient->report.quotient_invariants.trivial(), "quotient not trivial");
  });

  criterion(3, "mixed quintic with <j>", 1.0, [](Check& c) {
    MirrorReport r = mirror_pipeline(kMixed, "j");
    c.require(r.transpose_weights.c == IntVector{5, 3, 4, 4, 4} && r.transpose_weights.d == 20, "W^T weights");
    PhaseVector jt = exponential_element(r.transpose_weights);
    c.require(jt == pv({Rational(1, 4), Rational(3, 20), Rational(1, 5), Rational(1, 5), Rational(1, 5)}),
              "j_{W^T}");
    DiagonalGroup expected(5, {jt, pv({0, 0, Rational(1, 5), Rational(4, 5), 0}),
                               pv({0, 0, 0, Rational(1, 5), Rational(4, 5)})});
    c.require(r.dual == expected, "G^T differs from <j, g1, g2>");
    c.require(r.dual.order() == 500, "|G^T| != 500");
    c.require(r.gt_tilde && r.gt_tilde->invariants == AbelianInvariants({5, 5}), "quotient of G^T by j");
    c.require(r.ambient && r.ambient->verified, "ambient verification failed");
  });

  criterion(4, "shared charts among the three quintics", 5.0, [](Check& c) {
    const char* polys[] = {kFermat, kChain, kMixed};
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        ExponentMatrix e1 = parse_e(polys[a]), e2 = parse_e(polys[b]);
        BirationalAtlas atlas = common_chart(e1, e2, j_group(e1));
        std::string pair = std::to_string(a + 1) + " vs " + std::to_string(b + 1);
        c.require(atlas.terms_identical, "charts differ for " + pair);
        c.require(atlas.sections_recovered[0] && atlas.sections_recovered[1], "sections not recovered for " + pair);
        ProbeRecord p = rational_point_probe(atlas, 100, 1);
        c.require(p.passed && p.agreements == 100, "probe for " + pair);
      }
  });

  criterion(5, "corpus identities", 60.0, [](Check& c) {
    std::vector<CorpusEntry> corpus = build_corpus(CorpusSpec{}, Execution::Parallel);
    std::vector<EntryVerification> results = verify_corpus(corpus, Execution::Parallel);
    std::size_t groups = 0, failed = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const CorpusEntry& entry = corpus[i];
      c.require(entry.exponents.size() <= 4 && entry.weights.d <= 12 && is_calabi_yau(entry.weights),
                "entry outside the corpus bounds");
      std::vector<DiagonalGroup> all = entry.groups;
      all.insert(all.end(), entry.extra_groups.begin(), entry.extra_groups.end());
      std::vector<std::size_t> brute = brute_dual_orders(entry.exponents, all);
      const Integer det = abs(oracle::cofactor_det(entry.exponents.matrix()));
      for (std::size_t k = 0; k < all.size(); ++k) {
        ++groups;
        const GroupCheck& gc = results[i].checks[k];
        bool ok = gc.passed() && all[k].order() * brute[k] == det;
        if (k < entry.groups.size()) ok = ok && all[k].order() <= 200 && is_cy_type(entry.exponents, all[k]).ok;
        if (!ok) {
          ++failed;
          c.require(false, results[i].polynomial + " [" + gc.group + "] " + gc.failure);
        }
      }
    }
    c.require(groups > 0, "empty corpus");
    std::cout << "  corpus: " << corpus.size() << " polynomials, " << groups << " groups, " << failed
              << " failures\n";
  });

  criterion(6, "two runs give identical JSON", 60.0, [](Check& c) {
    std::string first = suite_json(Execution::Serial);
    std::string second = suite_json(Execution::Parallel);
    c.require(first == second, "reports differ between runs");
    std::cout << "  report size: " << first.size() << " bytes\n";
  });

  return failures == 0 ? 0 : 1;
}
