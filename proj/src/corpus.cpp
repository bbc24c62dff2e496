#include "bhk/corpus.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "bhk/multimirror.hpp"
#include "bhk/report.hpp"
#include "bhk/toric_mirror.hpp"

namespace bhk {

// ---------------------------------------------------------------------------
// Weight systems

std::vector<WeightSystem> calabi_yau_weight_systems(std::size_t max_vars, long max_degree) {
  std::vector<WeightSystem> out;
  for (std::size_t n = 1; n <= max_vars; ++n)
    for (long d = 1; d <= max_degree; ++d) {
      std::vector<long> c(n);
      std::function<void(std::size_t, long, long)> rec = [&](std::size_t i, long lo, long rest) {
        if (i + 1 == n) {
          if (rest < lo) return;
          c[i] = rest;
          long g = 0;
          for (long x : c) g = std::gcd(g, x);
          if (g != 1) return;
          IntVector ci;
          for (long x : c) ci.emplace_back(x);
          out.push_back(make_weight_system(std::move(ci), Integer(d)));
          return;
        }
        for (long x = lo; x * static_cast<long>(n - i) <= rest; ++x) {
          c[i] = x;
          rec(i + 1, x, rest - x);
        }
      };
      rec(0, 1, d);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Subgroups between <j> and SL cap Aut

namespace {

using Residues = std::vector<long>;

struct ResidueCodec {
  long modulus;
  std::size_t n;

  std::uint64_t key(const Residues& v) const {
    std::uint64_t k = 0;
    for (std::size_t i = n; i-- > 0;) k = k * static_cast<std::uint64_t>(modulus) + static_cast<std::uint64_t>(v[i]);
    return k;
  }
  Residues add(const Residues& a, const Residues& b) const {
    Residues c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (a[i] + b[i]) % modulus;
    return c;
  }
};

Residues scaled_phases(const PhaseVector& g, const Integer& scale) {
  Residues r;
  for (const auto& x : g.phases()) {
    Rational y = x * scale;
    r.push_back(Integer(y.get_num()).get_si());
  }
  return r;
}

PhaseVector unscale(const Residues& v, long modulus) {
  RatVector p;
  for (long x : v) p.emplace_back(Integer(x), Integer(modulus));
  return PhaseVector(std::move(p));
}

}  // namespace

std::vector<DiagonalGroup> cy_type_subgroups(const ExponentMatrix& e, std::size_t max_order) {
  const std::size_t n = e.size();
  WeightSystem w = weight_system(e);
  if (!is_calabi_yau(w)) return {};
  const Integer det = abs(e.determinant());
  // Keys are base-|det| digit strings and must fit in 64 bits.
  long double span = 1;
  for (std::size_t i = 0; i < n; ++i) span *= det.get_d();
  if (!det.fits_slong_p() || span > static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2))
    throw Error(ErrorKind::EnumerationCap, "|det E| = " + det.get_str() + " is too large to enumerate Aut(W)");
  const ResidueCodec codec{det.get_si(), n};

  std::vector<Residues> rho;
  for (const auto& g : aut_generators(e)) rho.push_back(scaled_phases(g, det));

  std::map<Residues, bool> aut;
  std::deque<Residues> queue{Residues(n, 0)};
  aut[queue.front()] = true;
  while (!queue.empty()) {
    Residues x = queue.front();
    queue.pop_front();
    for (const auto& r : rho) {
      Residues y = codec.add(x, r);
      if (aut.emplace(y, true).second) queue.push_back(std::move(y));
    }
  }

  std::vector<Residues> sl;
  std::unordered_map<std::uint64_t, int> index;
  for (const auto& [v, _] : aut) {
    long s = std::accumulate(v.begin(), v.end(), 0L);
    if (s % codec.modulus != 0) continue;
    index[codec.key(v)] = static_cast<int>(sl.size());
    sl.push_back(v);
  }
  auto add = [&](int a, int b) { return index.at(codec.key(codec.add(sl[a], sl[b]))); };

  const int j = index.at(codec.key(scaled_phases(exponential_element(w), det)));
  const int zero = index.at(codec.key(Residues(n, 0)));

  // <S, x> as a sorted index list; empty when it exceeds max_order.
  auto extend = [&](const std::vector<int>& s, const std::vector<char>& in_s, int x) {
    std::vector<int> out = s;
    int y = x;
    while (!in_s[y]) {
      if (out.size() + s.size() > max_order) return std::vector<int>{};
      for (int a : s) out.push_back(add(a, y));
      y = add(y, x);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  struct Found {
    std::vector<int> elements;
    std::vector<int> gens;
  };
  std::vector<Found> found;
  std::set<std::vector<int>> seen;
  {
    std::vector<char> in(sl.size(), 0);
    in[zero] = 1;
    std::vector<int> base = extend({zero}, in, j);
    if (base.empty()) return {};
    seen.insert(base);
    found.push_back({base, {j}});
  }
  for (std::size_t k = 0; k < found.size(); ++k) {
    std::vector<char> in(sl.size(), 0);
    for (int a : found[k].elements) in[a] = 1;
    for (int x = 0; x < static_cast<int>(sl.size()); ++x) {
      if (in[x]) continue;
      std::vector<int> bigger = extend(found[k].elements, in, x);
      if (bigger.empty() || !seen.insert(bigger).second) continue;
      std::vector<int> gens = found[k].gens;
      gens.push_back(x);
      found.push_back({std::move(bigger), std::move(gens)});
    }
  }

  std::vector<DiagonalGroup> out;
  for (const auto& f : found) {
    std::vector<PhaseVector> gens;
    for (int g : f.gens) gens.push_back(unscale(sl[g], codec.modulus));
    out.emplace_back(n, std::move(gens));
  }
  return out;
}

std::vector<DiagonalGroup> non_sl_controls(const ExponentMatrix& e) {
  std::vector<DiagonalGroup> out;
  auto push = [&](DiagonalGroup g) {
    if (is_special_linear(g)) return;
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
  };
  for (const auto& r : aut_generators(e)) push(DiagonalGroup(e.size(), {r}));
  push(aut_group(e));
  return out;
}

// ---------------------------------------------------------------------------
// Building and verifying

namespace {

std::vector<CorpusEntry> entries_for(const WeightSystem& w, const CorpusSpec& spec) {
  std::vector<CorpusEntry> out;
  for (auto& e : enumerate_invertible(w)) {
    CorpusEntry entry;
    entry.groups = cy_type_subgroups(e, spec.max_group_order);
    entry.extra_groups = non_sl_controls(e);
    entry.exponents = std::move(e);
    entry.weights = w;
    out.push_back(std::move(entry));
  }
  return out;
}

GroupCheck check_group(const ExponentMatrix& e, const DiagonalGroup& g, bool cy_type) {
  GroupCheck c;
  c.group = group_spec(g);
  c.cy_type = cy_type;
  try {
    DiagonalGroup gt = dual_group(e, g);
    ExponentMatrix et = transpose(e);
    c.double_dual = dual_group(et, gt) == g;
    c.order_product = g.order() * gt.order() == abs(e.determinant());
    c.sl_criterion = is_special_linear(g) == gt.contains(exponential_element(weight_system(et)));
    if (cy_type) {
      CyTypeVerdict v = is_cy_type(e, g);
      if (!v.ok) throw Error(ErrorKind::NotCalabiYauType, v.diagnostic);
      ToricData data = build_toric_data(e, g);
      c.pairing = data.pairing_ok;
      c.primitive = true;
      for (const auto& p : data.nu) c.primitive = c.primitive && p.primitive;
      for (const auto& p : data.mu) c.primitive = c.primitive && p.primitive;
      AmbientVerification av = check_mirror_ambient(e, g, data);
      c.ambient = av.verified;
      if (const ClauseResult* f = av.first_failure()) c.failure = f->name + ": " + f->detail;
    }
  } catch (const std::exception& ex) {
    c.failure = ex.what();
  }
  return c;
}

}  // namespace

bool GroupCheck::passed() const {
  if (!failure.empty() || !double_dual || !order_product || !sl_criterion) return false;
  return !cy_type || (pairing && primitive && ambient);
}

EntryVerification verify_entry(const CorpusEntry& entry) {
  EntryVerification r;
  r.polynomial = format_polynomial(entry.exponents.polynomial());
  for (const auto& g : entry.groups) r.checks.push_back(check_group(entry.exponents, g, true));
  for (const auto& g : entry.extra_groups) r.checks.push_back(check_group(entry.exponents, g, false));
  r.passed = std::all_of(r.checks.begin(), r.checks.end(), [](const GroupCheck& c) { return c.passed(); });
  return r;
}

std::vector<CorpusEntry> build_corpus(const CorpusSpec& spec, Execution mode) {
  const std::vector<WeightSystem> ws = calabi_yau_weight_systems(spec.max_vars, spec.max_degree);
  std::vector<std::vector<CorpusEntry>> parts(ws.size());
  const long count = static_cast<long>(ws.size());
  if (mode == Execution::Serial) {
    for (long i = 0; i < count; ++i) parts[i] = entries_for(ws[i], spec);
  } else {
    std::vector<std::string> errors(ws.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      try {
        parts[i] = entries_for(ws[i], spec);
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    }
    for (const auto& e : errors)
      if (!e.empty()) throw Error(ErrorKind::EnumerationCap, e);
  }
  std::vector<CorpusEntry> out;
  for (auto& p : parts)
    for (auto& e : p) out.push_back(std::move(e));
  return out;
}

std::vector<EntryVerification> verify_corpus(const std::vector<CorpusEntry>& entries, Execution mode) {
  std::vector<EntryVerification> out(entries.size());
  const long count = static_cast<long>(entries.size());
  if (mode == Execution::Serial) {
    for (long i = 0; i < count; ++i) out[i] = verify_entry(entries[i]);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) out[i] = verify_entry(entries[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::ordered_json corpus_entry_to_json(const CorpusEntry& entry) {
  nlohmann::ordered_json j;
  j["exponents"] = to_json(entry.exponents.matrix());
  nlohmann::ordered_json w;
  w["c"] = to_json(entry.weights.c);
  w["d"] = to_json(entry.weights.d);
  j["weights"] = w;
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const auto& g : entry.groups) groups.push_back(group_spec(g));
  j["groups"] = groups;
  nlohmann::ordered_json controls = nlohmann::ordered_json::array();
  for (const auto& g : entry.extra_groups) controls.push_back(group_spec(g));
  j["controls"] = controls;
  j["status"] = entry.status;
  return j;
}

namespace {

Integer integer_from_json(const nlohmann::ordered_json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos)
      throw Error(ErrorKind::SyntaxError, "bad integer '" + s + "'");
    return Integer(s);
  }
  throw Error(ErrorKind::SyntaxError, "expected an integer, got " + j.dump());
}

}  // namespace

CorpusEntry corpus_entry_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object() || !j.contains("exponents") || !j["exponents"].is_array())
    throw Error(ErrorKind::SyntaxError, "corpus entry needs an \"exponents\" array");
  std::vector<IntVector> rows;
  for (const auto& r : j["exponents"]) {
    if (!r.is_array()) throw Error(ErrorKind::SyntaxError, "exponent rows must be arrays");
    IntVector row;
    for (const auto& x : r) row.push_back(integer_from_json(x));
    rows.push_back(std::move(row));
  }
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  CorpusEntry entry;
  entry.exponents = ExponentMatrix(IntegerMatrix::from_rows(rows, cols));
  entry.weights = weight_system(entry.exponents);
  if (j.contains("weights")) {
    const auto& w = j["weights"];
    IntVector c;
    for (const auto& x : w.at("c")) c.push_back(integer_from_json(x));
    if (!(make_weight_system(std::move(c), integer_from_json(w.at("d"))) == entry.weights))
      throw Error(ErrorKind::SetupMismatch, "stated weights disagree with the exponent matrix");
  }
  const DiagonalGroup aut = aut_group(entry.exponents);
  const PhaseVector jw = exponential_element(entry.weights);
  auto groups = [&](const char* key) {
    std::vector<DiagonalGroup> out;
    if (!j.contains(key)) return out;
    for (const auto& s : j[key]) {
      if (!s.is_string()) throw Error(ErrorKind::SyntaxError, "group specs must be strings");
      out.push_back(subgroup(parse_group_spec(s.get<std::string>(), entry.exponents.size(), jw), aut));
    }
    return out;
  };
  entry.groups = groups("groups");
  entry.extra_groups = groups("controls");
  if (j.contains("status") && j["status"].is_string()) entry.status = j["status"].get<std::string>();
  return entry;
}

std::string write_corpus(const std::vector<CorpusEntry>& entries) {
  std::string out;
  for (const auto& e : entries) out += corpus_entry_to_json(e).dump() + "\n";
  return out;
}

std::vector<CorpusEntry> read_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(corpus_entry_from_json(nlohmann::ordered_json::parse(line)));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorKind::SyntaxError, "corpus line " + std::to_string(lineno) + ": " + ex.what());
    } catch (const Error& ex) {
      throw Error(ex.kind(), "corpus line " + std::to_string(lineno) + ": " + ex.message());
    }
  }
  return out;
}

nlohmann::ordered_json verification_to_json(const std::vector<EntryVerification>& results) {
  std::size_t groups = 0, failures = 0;
  nlohmann::ordered_json failed = nlohmann::ordered_json::array();
  for (const auto& r : results)
    for (const auto& c : r.checks) {
      ++groups;
      if (c.passed()) continue;
      ++failures;
      nlohmann::ordered_json f;
      f["polynomial"] = r.polynomial;
      f["group"] = c.group;
      f["cy_type"] = c.cy_type;
      f["double_dual"] = c.double_dual;
      f["order_product"] = c.order_product;
      f["sl_criterion"] = c.sl_criterion;
      if (c.cy_type) {
        f["pairing"] = c.pairing;
        f["primitive"] = c.primitive;
        f["ambient"] = c.ambient;
      }
      f["failure"] = c.failure;
      failed.push_back(f);
    }
  nlohmann::ordered_json j;
  j["entries"] = results.size();
  j["groups_checked"] = groups;
  j["failures"] = failures;
  j["passed"] = failures == 0;
  j["failed"] = failed;
  return j;
}

}  // namespace bhk
