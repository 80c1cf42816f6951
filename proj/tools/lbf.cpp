// Command-line front end: b-functions, annihilators and local cohomology.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lbf/annihilator.hpp"
#include "lbf/bfunction.hpp"
#include "lbf/catalog.hpp"
#include "lbf/cohomology.hpp"
#include "lbf/errors.hpp"
#include "lbf/parse.hpp"

using json = nlohmann::ordered_json;
using namespace lbf;

namespace {

enum Exit { kOk = 0, kParse = 2, kPrecondition = 3, kResource = 4, kInconsistent = 5 };

json rational_json(const Rational& r) {
  if (!fits_int64(r)) throw ArithmeticError("rational " + to_string(r) + " does not fit the JSON integer pair");
  return {{"num", r.get_num().get_si()}, {"den", r.get_den().get_si()}};
}

json roots_json(const RootList& r) {
  json a = json::array();
  for (const auto& g : r.roots) a.push_back(rational_json(g));
  return a;
}

json dims_json(const std::map<Rational, std::size_t>& dims) {
  json a = json::array();
  for (const auto& [g, d] : dims) a.push_back({{"root", rational_json(g)}, {"dim", d}});
  return a;
}

std::string dims_text(const std::map<Rational, std::size_t>& dims) {
  std::string out;
  for (const auto& [g, d] : dims) out += (out.empty() ? "" : ", ") + to_string(g) + ":" + std::to_string(d);
  return "{" + out + "}";
}

struct Common {
  std::string vars;
  std::string poly;
  std::string file;
  bool as_json = false;
  std::string order;
  unsigned degree_cap = 64;
  unsigned kmax = 2;
  std::string wdeg_weights;
  long wdeg = 0;
  std::string weights;
  std::string gamma;
  std::string entry;
  std::vector<std::string> strata;
  unsigned jobs = 1;
  double budget = 0;
  bool exact = false;
};

struct Output {
  json doc = json::object();
  std::ostringstream text;
};

std::vector<std::string> read_vars(const Common& c) {
  if (c.vars.empty()) throw PreconditionError("--vars is required");
  return parse_var_list(c.vars);
}

MultiPoly read_poly(const Common& c, const std::vector<std::string>& vars, Output& out) {
  std::string text = c.poly;
  if (!c.file.empty()) {
    std::ifstream in(c.file);
    if (!in) throw PreconditionError("cannot read " + c.file);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  if (text.empty()) throw PreconditionError("no polynomial given (use -f or --file)");
  out.doc["input"] = text;
  out.doc["vars"] = vars;
  return parse_poly(text, vars);
}

WeightSystem read_weights(const Common& c) {
  if (c.wdeg <= 0 || c.weights.empty()) throw PreconditionError("--wdeg and --weights are required");
  std::vector<long> w;
  std::stringstream ss(c.weights);
  for (std::string t; std::getline(ss, t, ',');) {
    try {
      w.push_back(std::stol(t));
    } catch (const std::exception&) {
      throw ParseError("bad weight '" + t + "'", 0);
    }
  }
  return WeightSystem(c.wdeg, std::move(w));
}

BFunctionOptions bf_options(const Common& c) {
  BFunctionOptions o;
  o.kmax = c.kmax;
  o.cohomology.degree_cap = c.degree_cap;
  o.jobs = c.jobs;
  if (c.exact) o.groebner.mode = CoefficientMode::Exact;
  if (c.budget > 0)
    o.groebner.deadline =
        std::chrono::steady_clock::now() + std::chrono::milliseconds(static_cast<long>(c.budget * 1000));
  return o;
}

void print_ops(const std::vector<PBWOperator>& ops, Output& out, const char* field) {
  json a = json::array();
  for (const auto& p : ops) {
    a.push_back(p.to_string());
    out.text << p.to_string() << "\n";
  }
  out.doc[field] = a;
}

void cmd_ann(const Common& c, Output& out) {
  auto vars = read_vars(c);
  MultiPoly f = read_poly(c, vars, out);
  out.doc["kind"] = "ann";
  auto ring = make_pbw_ring(vars);
  print_ops(ann_fs(ring, f, bf_options(c).groebner), out, "operators");
}

void cmd_global(const Common& c, Output& out, bool reduced) {
  auto vars = read_vars(c);
  MultiPoly f = read_poly(c, vars, out);
  out.doc["kind"] = reduced ? "global-reduced" : "global";
  RootList r = reduced ? global_reduced_bfunction(f, bf_options(c)) : global_bfunction(f, bf_options(c));
  out.doc["roots"] = roots_json(r);
  out.text << r.to_string() << "\n";
}

void cmd_local(const Common& c, Output& out) {
  auto vars = read_vars(c);
  MultiPoly f = read_poly(c, vars, out);
  out.doc["kind"] = "local";
  RootList r = local_bfunction_via_support(f, bf_options(c));
  out.doc["roots"] = roots_json(r);
  out.text << r.to_string() << "\n";
}

void cmd_local_swh(const Common& c, Output& out) {
  auto vars = read_vars(c);
  MultiPoly f = read_poly(c, vars, out);
  WeightSystem ws = read_weights(c);
  out.doc["kind"] = "local-swh";
  LocalBFResult r = local_bfunction_swh(f, ws, bf_options(c));
  out.doc["roots"] = roots_json(r.roots);
  out.doc["dims"] = dims_json(r.dims);
  out.doc["milnor"] = r.milnor;
  out.text << "roots  " << r.roots.to_string() << "\n"
           << "dims   " << dims_text(r.dims) << "\n"
           << "milnor " << r.milnor << "\n";
}

MonomialOrder cert_order(const Common& c, const PBWRing& ring) {
  if (c.order.empty()) return certification_order(ring);
  auto names = ring.names();
  return MonomialOrder::parse(c.order, names);
}

void cmd_certify(const Common& c, Output& out) {
  auto vars = read_vars(c);
  MultiPoly f = read_poly(c, vars, out);
  Rational gamma = parse_rational(c.gamma);
  out.doc["kind"] = "certify";
  auto ring = make_pbw_ring(vars);
  BFunctionOptions o = bf_options(c);
  auto ann = ann_fs(ring, f, o.groebner);
  RootCertificate cert = certify_root(ann, f, gamma, cert_order(c, *ring), o.groebner);
  out.doc["gamma"] = rational_json(gamma);
  out.doc["is_factor"] = cert.is_factor;
  out.doc["origin_in_support"] = cert.origin_in_support;
  json pp = json::array();
  for (const auto& p : cert.polynomial_part) pp.push_back(p.to_string());
  out.doc["polynomial_part"] = pp;
  out.text << "is_factor " << (cert.is_factor ? "true" : "false") << "\n"
           << "origin_in_support " << (cert.origin_in_support ? "true" : "false") << "\n";
  print_ops(cert.basis.generators, out, "basis");
}

void cmd_cohom(const Common& c, Output& out) {
  auto vars = read_vars(c);
  MultiPoly f = read_poly(c, vars, out);
  Rational gamma = parse_rational(c.gamma);
  out.doc["kind"] = "cohom";
  auto ring = make_pbw_ring(vars);
  BFunctionOptions o = bf_options(c);
  auto ann = ann_fs(ring, f, o.groebner);
  RootCertificate cert = certify_root(ann, f, gamma, cert_order(c, *ring), o.groebner);
  out.doc["gamma"] = rational_json(gamma);
  json basis = json::array();
  if (cert.is_factor) {
    EchelonBasis b = cohomology_solution_space(f, gamma, cert, o.cohomology);
    auto sym = cohom_symbols(vars);
    for (const auto& k : b.classes) {
      basis.push_back(k.to_string(sym));
      out.text << k.to_string(sym) << "\n";
    }
    out.doc["dims"] = json::array({{{"root", rational_json(gamma)}, {"dim", b.dimension()}}});
  } else {
    out.text << "s - (" << to_string(gamma) << ") is not a factor\n";
    out.doc["dims"] = json::array({{{"root", rational_json(gamma)}, {"dim", 0}}});
  }
  out.doc["basis"] = basis;
}

void cmd_milnor(const Common& c, Output& out) {
  auto vars = read_vars(c);
  MultiPoly f = read_poly(c, vars, out);
  out.doc["kind"] = "milnor";
  CohomologyOptions o;
  o.degree_cap = c.degree_cap;
  std::size_t mu = milnor_number(f, o);
  out.doc["milnor"] = mu;
  out.text << mu << "\n";
}

void cmd_poincare(const Common& c, Output& out) {
  WeightSystem ws = read_weights(c);
  out.doc["kind"] = "poincare";
  out.doc["input"] = ws.to_string();
  UniPoly P = poincare_polynomial(ws);
  std::size_t mu = P.evaluate(1).get_num().get_ui();
  out.doc["polynomial"] = P.to_string("t");
  out.doc["milnor"] = mu;
  out.doc["roots"] = roots_json(wh_bfunction_roots(ws));
  out.text << P.to_string("t") << "\n" << "P(1) = " << mu << "\n";
}

int cmd_verify(const Common& c, Output& out) {
  const CatalogEntry& e = find_entry(c.entry);
  out.doc["kind"] = "verify";
  out.doc["input"] = e.name;
  out.doc["vars"] = e.vars;
  VerifyOptions vo;
  for (const auto& s : c.strata) {
    // Accept a label or a 0-based index.
    if (!s.empty() && std::all_of(s.begin(), s.end(), ::isdigit)) {
      std::size_t i = std::stoul(s);
      if (i >= e.strata.size()) throw PreconditionError(e.name + " has no stratum " + s);
      vo.strata.push_back(e.strata[i].label);
    } else {
      vo.strata.push_back(s);
    }
  }
  vo.jobs = c.jobs;
  Common inner = c;
  inner.budget = 0;
  inner.jobs = 1;
  vo.bfunction = bf_options(inner);
  if (c.budget > 0) vo.budget = std::chrono::seconds(static_cast<long>(c.budget));
  VerificationReport rep = verify_entry(e, vo);

  json samples = json::array();
  for (const auto& s : rep.samples) {
    json point = json::array();
    for (const auto& u : s.point) point.push_back(rational_json(u));
    samples.push_back({{"stratum", s.stratum},
                       {"point", point},
                       {"polynomial", s.polynomial},
                       {"status", to_string(s.status)},
                       {"roots", roots_json(s.computed)},
                       {"dims", dims_json(s.dims)},
                       {"milnor", s.milnor},
                       {"missing", roots_json(s.missing)},
                       {"unexpected", roots_json(s.unexpected)},
                       {"message", s.message},
                       {"seconds", s.seconds}});
    out.text << e.name << " [" << s.stratum << "] at (";
    for (std::size_t i = 0; i < s.point.size(); ++i) out.text << (i ? "," : "") << to_string(s.point[i]);
    out.text << "): " << to_string(s.status);
    if (s.status == SampleStatus::Pass) out.text << " " << s.computed.to_string() << " dims " << dims_text(s.dims);
    if (!s.missing.empty()) out.text << " missing " << s.missing.to_string();
    if (!s.unexpected.empty()) out.text << " unexpected " << s.unexpected.to_string();
    if (!s.message.empty()) out.text << " (" << s.message << ")";
    out.text << "\n";
  }
  out.text << "weight-type cross-check: " << (rep.wh_crosscheck ? "pass" : "fail") << "\n";
  out.doc["report"] = {{"entry", rep.entry},
                       {"passed", rep.passed()},
                       {"wh_crosscheck", rep.wh_crosscheck},
                       {"seconds", rep.seconds},
                       {"samples", samples}};
  if (rep.passed()) return kOk;
  bool resource = std::any_of(rep.samples.begin(), rep.samples.end(),
                              [](const SampleOutcome& s) { return s.status == SampleStatus::ResourceError; });
  return resource ? kResource : kInconsistent;
}

void emit(const Output& out, bool as_json) {
  if (as_json)
    std::cout << out.doc.dump(2) << "\n";
  else
    std::cout << out.text.str();
}

int fail(Output& out, bool as_json, int code, const std::string& kind, const std::string& msg) {
  out.doc["diagnostics"] = {{"error", kind}, {"message", msg}, {"exit_code", code}};
  if (as_json) std::cout << out.doc.dump(2) << "\n";
  std::cerr << "error: " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernstein-Sato b-functions of isolated hypersurface singularities"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub, bool poly) {
    sub->add_flag("--json", c.as_json, "Machine-readable output");
    if (poly) {
      sub->add_option("--vars", c.vars, "Comma-separated variable names, e.g. x,y,z");
      sub->add_option("-f,--poly", c.poly, "Polynomial, e.g. \"x^3+y^2\"");
      sub->add_option("--file", c.file, "Read the polynomial from a file");
      sub->add_option("--order", c.order, "Certification order, e.g. \"dt >> dx,dy:dlex >> y,x:dlex >> s\"");
      sub->add_option("--degree-cap", c.degree_cap, "Largest degree tried for local cohomology")->capture_default_str();
      sub->add_option("--kmax", c.kmax, "Largest integer shift of candidate roots")->capture_default_str();
      sub->add_option("--budget", c.budget, "Wall-clock budget in seconds for Groebner computations (0: none)");
      sub->add_flag("--exact", c.exact, "Exact rational Groebner bases instead of modular lifting");
    }
  };

  auto* ann = app.add_subcommand("ann", "Basis of Ann(f^s)");
  auto* glob = app.add_subcommand("global", "Roots of the global b-function");
  auto* globr = app.add_subcommand("global-reduced", "Roots of the global b-function divided by s+1");
  auto* local = app.add_subcommand("local", "Local reduced b-function at the origin (support filtering)");
  auto* lswh = app.add_subcommand("local-swh", "Local reduced b-function of a semi-weighted homogeneous f");
  auto* cert = app.add_subcommand("certify", "Test whether s-gamma divides the reduced b-function");
  auto* cohom = app.add_subcommand("cohom", "Local cohomology solutions for a root gamma");
  auto* milnor = app.add_subcommand("milnor", "Milnor number at the origin");
  auto* poinc = app.add_subcommand("poincare", "Poincare polynomial of a weight type");
  auto* verify = app.add_subcommand("verify", "Check a catalog entry against its expected roots");

  for (auto* s : {ann, glob, globr, local, lswh, cert, cohom, milnor}) add_common(s, true);
  add_common(poinc, false);
  add_common(verify, false);
  for (auto* s : {lswh, poinc}) {
    s->add_option("--wdeg", c.wdeg, "Weighted degree d");
    s->add_option("--weights", c.weights, "Weights w1,...,wn");
  }
  lswh->add_option("--jobs", c.jobs, "Worker threads for root certificates")->capture_default_str();
  for (auto* s : {cert, cohom}) s->add_option("--gamma", c.gamma, "Root as p/q")->required();
  verify->add_option("--entry", c.entry, "Catalog entry, e.g. U16")->required();
  verify->add_option("--stratum", c.strata, "Stratum label or 0-based index (repeatable)");
  verify->add_option("--jobs", c.jobs, "Samples run concurrently")->capture_default_str();
  verify->add_option("--budget", c.budget, "Wall-clock budget per sample in seconds");
  verify->add_option("--kmax", c.kmax, "Largest integer shift of candidate roots")->capture_default_str();
  verify->add_flag("--exact", c.exact, "Exact rational Groebner bases instead of modular lifting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  Output out;
  try {
    int rc = kOk;
    if (*ann) cmd_ann(c, out);
    else if (*glob) cmd_global(c, out, false);
    else if (*globr) cmd_global(c, out, true);
    else if (*local) cmd_local(c, out);
    else if (*lswh) cmd_local_swh(c, out);
    else if (*cert) cmd_certify(c, out);
    else if (*cohom) cmd_cohom(c, out);
    else if (*milnor) cmd_milnor(c, out);
    else if (*poinc) cmd_poincare(c, out);
    else if (*verify) rc = cmd_verify(c, out);
    out.doc["diagnostics"] = {{"exit_code", rc}};
    emit(out, c.as_json);
    return rc;
  } catch (const ParseError& e) {
    return fail(out, c.as_json, kParse, "parse", e.what());
  } catch (const PreconditionError& e) {
    return fail(out, c.as_json, kPrecondition, "precondition", e.what());
  } catch (const StructuralError& e) {
    return fail(out, c.as_json, kPrecondition, "structural", e.what());
  } catch (const ResourceError& e) {
    return fail(out, c.as_json, kResource, "resource", e.what());
  } catch (const InconsistencyError& e) {
    return fail(out, c.as_json, kInconsistent, "inconsistency", e.what());
  } catch (const ArithmeticError& e) {
    return fail(out, c.as_json, kInconsistent, "arithmetic", e.what());
  }
}
