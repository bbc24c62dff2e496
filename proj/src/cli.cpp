#include "bhk/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "bhk/corpus.hpp"
#include "bhk/multimirror.hpp"
#include "bhk/report.hpp"

namespace bhk {

namespace {

struct Options {
  std::string format = "json";
  std::string out_path;

  std::string poly, poly2;
  std::string group = "j";
  std::size_t probe = 100;
  std::uint64_t seed = 1;
  bool full_action = false;

  std::string weights;
  long degree = 0;
  bool compare_all = false;

  std::string corpus_path;
  bool serial = false;

  std::size_t max_vars = 4;
  long max_degree = 12;
  std::size_t max_group_order = 200;
};

struct Output {
  std::string text;
  int code = ExitOk;
};

bool text_format(const Options& o) { return o.format == "text"; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int report_code(const MirrorReport& r) {
  return r.ambient && !r.ambient->verified ? ExitVerificationFailure : ExitOk;
}

VerifyOptions verify_options(const Options& o) {
  VerifyOptions v;
  v.full_action_check = o.full_action;
  return v;
}

Output cmd_analyze(const Options& o, bool require_cy, std::ostream& err) {
  MirrorReport r = mirror_pipeline(o.poly, o.group, verify_options(o));
  if (require_cy && !r.cy_type.ok) {
    err << "error: " << r.cy_type.diagnostic << "\n";
    return {"", ExitInputError};
  }
  Output out{text_format(o) ? to_text(r) : dump(to_json(r)), report_code(r)};
  if (r.ambient && !r.ambient->verified) {
    const ClauseResult* f = r.ambient->first_failure();
    err << "verification failed: " << (f ? f->name + ": " + f->detail : "unknown clause") << "\n";
  }
  return out;
}

struct Comparison {
  Json json;
  std::string text;
  bool ok = false;
};

Comparison compare_pair(const ExponentMatrix& e1, const ExponentMatrix& e2, const DiagonalGroup& g, std::size_t probe,
                        std::uint64_t seed) {
  Comparison c;
  BirationalAtlas atlas = common_chart(e1, e2, g);
  c.json = to_json(atlas);
  c.text = to_text(atlas);
  bool probe_ok = true;
  try {
    ProbeRecord p = rational_point_probe(atlas, probe, seed);
    c.json["probe"] = to_json(p);
    c.text += to_text(p);
  } catch (const ProbeFailure& ex) {
    probe_ok = false;
    Json pj;
    pj["passed"] = false;
    pj["failure"] = ex.message();
    c.json["probe"] = pj;
    c.text += std::string("probe  FAILED: ") + ex.message() + "\n";
  }
  c.ok = atlas.terms_identical && atlas.sections_recovered[0] && atlas.sections_recovered[1] && probe_ok;
  return c;
}

Output cmd_compare(const Options& o, std::ostream& err) {
  Polynomial p1 = parse_polynomial_any(o.poly), p2 = parse_polynomial_any(o.poly2);
  ExponentMatrix e1 = exponent_matrix(p1), e2 = exponent_matrix(p2);
  WeightSystem w1 = weight_system(e1);
  std::vector<PhaseVector> gens = parse_group_spec(o.group, e1.size(), exponential_element(w1));
  DiagonalGroup g = subgroup(gens, aut_group(e1));
  if (!g.is_subgroup_of(aut_group(e2)))
    throw Error(ErrorKind::NotInAmbient, "the group is not a symmetry of the second polynomial");
  SetupVerdict v = shared_setup_check(e1, e2, g);
  if (!v.ok) throw Error(ErrorKind::SetupMismatch, v.reason);

  std::array<MirrorReport, 2> reports{mirror_pipeline(e1, g, {o.poly, o.group}, verify_options(o)),
                                      mirror_pipeline(e2, g, {o.poly2, o.group}, verify_options(o))};
  reports[0].polynomial = p1;
  reports[1].polynomial = p2;
  Comparison c = compare_pair(e1, e2, g, o.probe, o.seed);
  const bool ambient_ok = report_code(reports[0]) == ExitOk && report_code(reports[1]) == ExitOk;

  Output out;
  out.code = c.ok && ambient_ok ? ExitOk : ExitVerificationFailure;
  if (text_format(o)) {
    out.text = to_text(reports[0]) + "\n" + to_text(reports[1]) + "\n" + c.text;
  } else {
    Json j;
    j["reports"] = Json::array({to_json(reports[0]), to_json(reports[1])});
    j["atlas"] = c.json;
    j["identical"] = c.ok;
    out.text = dump(j);
  }
  if (!c.ok) err << "the two mirrors do not share the chart\n";
  return out;
}

IntVector parse_weight_list(const std::string& s) {
  IntVector c;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::SyntaxError, "bad weight '" + tok + "'");
    c.emplace_back(tok);
  }
  if (c.empty()) throw Error(ErrorKind::SyntaxError, "no weights given");
  return c;
}

Output cmd_enumerate(const Options& o, std::ostream& err) {
  if (o.degree <= 0) throw Error(ErrorKind::NonpositiveWeight, "degree must be positive");
  WeightSystem w = make_weight_system(parse_weight_list(o.weights), Integer(o.degree));
  std::vector<ExponentMatrix> polys = enumerate_invertible(w);

  Json j;
  j["weights"] = to_json(w);
  j["count"] = polys.size();
  Json list = Json::array();
  std::ostringstream text;
  text << "weights (";
  for (std::size_t i = 0; i < w.c.size(); ++i) text << (i ? "," : "") << w.c[i];
  text << ") / " << w.d << ": " << polys.size() << " invertible polynomials\n";
  for (const auto& e : polys) {
    Json p;
    p["polynomial"] = format_polynomial(e.polynomial());
    p["exponent_matrix"] = to_json(e.matrix());
    p["atoms"] = to_json(atom_decomposition(e));
    list.push_back(p);
    text << "  " << format_polynomial(e.polynomial()) << "\n";
  }
  j["polynomials"] = list;

  int code = ExitOk;
  if (o.compare_all) {
    Json comps = Json::array();
    DiagonalGroup g;
    bool have_group = false;
    if (!polys.empty()) {
      std::vector<PhaseVector> gens = parse_group_spec(o.group, w.c.size(), exponential_element(w));
      g = DiagonalGroup(w.c.size(), gens);
      have_group = true;
    }
    for (std::size_t a = 0; have_group && a < polys.size(); ++a)
      for (std::size_t b = a + 1; b < polys.size(); ++b) {
        Json cj;
        cj["left"] = a;
        cj["right"] = b;
        SetupVerdict v;
        if (g.is_subgroup_of(aut_group(polys[a])) && g.is_subgroup_of(aut_group(polys[b])))
          v = shared_setup_check(polys[a], polys[b], g);
        else
          v.reason = "the group is not a symmetry of both polynomials";
        if (!v.ok) {
          cj["setup"] = v.reason;
          text << "  [" << a << "," << b << "] skipped: " << v.reason << "\n";
          comps.push_back(cj);
          continue;
        }
        Comparison c = compare_pair(polys[a], polys[b], g, o.probe, o.seed);
        cj["identical"] = c.ok;
        cj["terms_identical"] = c.json["terms_identical"];
        cj["probe"] = c.json["probe"];
        text << "  [" << a << "," << b << "] " << (c.ok ? "shared chart" : "MISMATCH") << "\n";
        if (!c.ok) {
          code = ExitVerificationFailure;
          err << "comparison " << a << " vs " << b << " failed\n";
        }
        comps.push_back(cj);
      }
    j["comparisons"] = comps;
  }
  return {text_format(o) ? text.str() : dump(j), code};
}

Output cmd_verify(const Options& o, std::ostream& err) {
  std::ifstream in(o.corpus_path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open corpus file " + o.corpus_path);
  std::vector<CorpusEntry> entries = read_corpus(in);
  std::vector<EntryVerification> results = verify_corpus(entries, o.serial ? Execution::Serial : Execution::Parallel);
  Json j = verification_to_json(results);
  const bool ok = j["passed"].get<bool>();
  if (!ok) err << j["failures"].get<std::size_t>() << " verification failures\n";
  std::string text;
  if (text_format(o)) {
    std::ostringstream os;
    os << "entries " << j["entries"].get<std::size_t>() << ", groups " << j["groups_checked"].get<std::size_t>()
       << ", failures " << j["failures"].get<std::size_t>() << "\n";
    for (const auto& f : j["failed"])
      os << "  " << f["polynomial"].get<std::string>() << " [" << f["group"].get<std::string>()
         << "]: " << f["failure"].get<std::string>() << "\n";
    text = os.str();
  } else {
    text = dump(j);
  }
  return {text, ok ? ExitOk : ExitVerificationFailure};
}

Output cmd_corpus(const Options& o) {
  CorpusSpec spec;
  spec.max_vars = o.max_vars;
  spec.max_degree = o.max_degree;
  spec.max_group_order = o.max_group_order;
  return {write_corpus(build_corpus(spec, o.serial ? Execution::Serial : Execution::Parallel)), ExitOk};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Mirror constructions for invertible Landau-Ginzburg pairs", "bhkmirror"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", o.out_path, "Write the output to this file");

  auto* analyze = app.add_subcommand("analyze", "Report every construction for (W, G)");
  analyze->add_option("polynomial", o.poly)->required();
  analyze->add_option("--group", o.group, "Group generators, e.g. \"j;0,0,1/5,4/5,0\"");
  analyze->add_flag("--full-action", o.full_action, "Check the action on every element of M/<mu>");

  auto* mirror = app.add_subcommand("mirror", "Build and verify the mirror of a CY-type pair");
  mirror->add_option("polynomial", o.poly)->required();
  mirror->add_option("--group", o.group, "Group generators");
  mirror->add_flag("--full-action", o.full_action, "Check the action on every element of M/<mu>");

  auto* compare = app.add_subcommand("compare", "Compare the mirrors of two polynomials with a common group");
  compare->add_option("first", o.poly)->required();
  compare->add_option("second", o.poly2)->required();
  compare->add_option("--group", o.group, "Group generators");
  compare->add_option("--probe", o.probe, "Number of rational probe points");
  compare->add_option("--seed", o.seed, "Probe seed");

  auto* enumerate = app.add_subcommand("enumerate", "List invertible polynomials with given weights");
  enumerate->add_option("--weights", o.weights, "Comma separated integer weights")->required();
  enumerate->add_option("--degree", o.degree, "Degree")->required();
  enumerate->add_option("--group", o.group, "Group for --compare-all");
  enumerate->add_flag("--compare-all", o.compare_all, "Compare every pair of mirrors");
  enumerate->add_option("--probe", o.probe, "Number of rational probe points per comparison");
  enumerate->add_option("--seed", o.seed, "Probe seed");

  auto* verify = app.add_subcommand("verify", "Check the duality identities on a corpus file");
  verify->add_option("--corpus", o.corpus_path, "JSON lines corpus")->required();
  verify->add_flag("--serial", o.serial, "Use the serial reference path");

  auto* corpus = app.add_subcommand("corpus", "Generate a corpus of CY-type pairs as JSON lines");
  corpus->add_option("--max-vars", o.max_vars, "Largest number of variables");
  corpus->add_option("--max-degree", o.max_degree, "Largest degree");
  corpus->add_option("--max-group-order", o.max_group_order, "Largest group order");
  corpus->add_flag("--serial", o.serial, "Use the serial reference path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return ExitInputError;
  }

  Output result;
  try {
    if (*analyze) result = cmd_analyze(o, false, err);
    else if (*mirror) result = cmd_analyze(o, true, err);
    else if (*compare) result = cmd_compare(o, err);
    else if (*enumerate) result = cmd_enumerate(o, err);
    else if (*verify) result = cmd_verify(o, err);
    else if (*corpus) result = cmd_corpus(o);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_input_error() ? ExitInputError : ExitVerificationFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return ExitVerificationFailure;
  }

  if (o.out_path.empty()) {
    out << result.text;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << o.out_path << "\n";
      return ExitInputError;
    }
    f << result.text;
  }
  return result.code;
}

}  // namespace bhk
