#include "lbf/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "lbf/errors.hpp"
#include "lbf/parse.hpp"
#include "parallel.hpp"

namespace lbf {

extern const char* const kCatalogText;

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct LineParser {
  std::size_t line = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError("catalog line " + std::to_string(line) + ": " + what, line); }

  template <class F>
  auto guard(F&& f) const {
    try {
      return f();
    } catch (const ParseError& e) {
      throw ParseError("catalog line " + std::to_string(line) + ": " + e.what(), line);
    }
  }

  std::vector<MultiPoly> polys(const std::vector<std::string>& ws, const std::vector<std::string>& params) const {
    std::vector<MultiPoly> out;
    if (ws.size() == 1 && ws[0] == "-") return out;
    for (const auto& w : ws) out.push_back(guard([&] { return parse_poly(w, params); }));
    return out;
  }

  RootList roots(const std::vector<std::string>& ws, const RootList& bst) const {
    std::vector<Rational> r;
    for (const auto& w : ws) {
      if (w == "bst")
        r.insert(r.end(), bst.roots.begin(), bst.roots.end());
      else
        r.push_back(guard([&] { return parse_rational(w); }));
    }
    return RootList(std::move(r));
  }
};

void validate(const CatalogEntry& e) {
  if (e.strata.empty()) throw PreconditionError("catalog: " + e.name + " has no strata");
  UniPoly P = poincare_polynomial(e.weights);
  for (const auto& st : e.strata) {
    if (st.samples.empty()) throw PreconditionError("catalog: " + e.name + "/" + st.label + " has no samples");
    for (const auto& pt : st.samples) {
      if (pt.size() != e.params.size())
        throw PreconditionError("catalog: " + e.name + "/" + st.label + " sample has the wrong dimension");
      if (!stratum_member(pt, st, e.constraint))
        throw PreconditionError("catalog: " + e.name + " sample outside stratum " + st.label);
      if (!classify_swh(specialize(e, pt), e.weights).ok)
        throw PreconditionError("catalog: " + e.name + " is not of type " + e.weights.to_string() + " at a sample");
    }
    for (const auto& r : e.bst.roots)
      if (!st.expected_roots.contains(r))
        throw PreconditionError("catalog: " + e.name + "/" + st.label + " does not contain the common roots");
  }
}

}  // namespace

const StratumSpec* CatalogEntry::find_stratum(std::string_view label) const {
  for (const auto& s : strata)
    if (s.label == label) return &s;
  return nullptr;
}

std::vector<CatalogEntry> parse_catalog(std::string_view text) {
  std::vector<CatalogEntry> out;
  std::optional<CatalogEntry> cur;
  LineParser lp;
  for (const auto& raw : split(text, '\n')) {
    ++lp.line;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto sp = line.find_first_of(" \t");
    std::string key = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp));

    if (key == "entry") {
      if (cur) lp.fail("entry inside entry");
      cur.emplace();
      cur->name = rest;
      continue;
    }
    if (!cur) lp.fail("'" + key + "' outside an entry");
    CatalogEntry& e = *cur;
    std::vector<std::string> all = e.vars;
    all.insert(all.end(), e.params.begin(), e.params.end());

    if (key == "end") {
      validate(e);
      out.push_back(std::move(e));
      cur.reset();
    } else if (key == "vars") {
      e.vars = lp.guard([&] { return parse_var_list(rest); });
    } else if (key == "params") {
      e.params = lp.guard([&] { return parse_var_list(rest); });
    } else if (key == "template") {
      e.template_poly = lp.guard([&] { return parse_poly(rest, all); });
    } else if (key == "weights") {
      auto ws = words(rest);
      if (ws.size() != 2) lp.fail("weights needs a degree and a weight list");
      std::vector<long> w;
      for (const auto& t : split(ws[1], ',')) w.push_back(std::stol(t));
      e.weights = WeightSystem(std::stol(ws[0]), std::move(w));
    } else if (key == "constraint") {
      if (rest != "-") e.constraint = lp.guard([&] { return parse_poly(rest, e.params); });
    } else if (key == "bst") {
      e.bst = lp.roots(words(rest), {});
    } else if (key == "bst-printed") {
      std::vector<Rational> r;
      for (const auto& w : words(rest)) r.push_back(lp.guard([&] { return parse_rational(w); }));
      e.bst_printed = RootList(std::move(r));
    } else if (key == "note") {
      e.notes.push_back(rest);
    } else if (key == "stratum") {
      e.strata.push_back({});
      e.strata.back().label = rest;
    } else {
      if (e.strata.empty()) lp.fail("unknown key '" + key + "'");
      StratumSpec& st = e.strata.back();
      auto ws = words(rest);
      if (key == "vanish") {
        st.vanishing = lp.polys(ws, e.params);
      } else if (key == "exclude") {
        st.excluded = lp.polys(ws, e.params);
      } else if (key == "roots") {
        st.expected_roots = lp.roots(ws, e.bst);
      } else if (key == "dims") {
        if (!(ws.size() == 1 && ws[0] == "-"))
          for (const auto& w : ws) {
            auto colon = w.rfind(':');
            if (colon == std::string::npos) lp.fail("dims entries look like root:dim");
            st.expected_dims[lp.guard([&] { return parse_rational(w.substr(0, colon)); })] =
                std::stoul(w.substr(colon + 1));
          }
      } else if (key == "samples") {
        for (const auto& pt : split(rest, ';')) {
          ParamPoint p;
          for (const auto& c : split(trim(pt), ',')) p.push_back(lp.guard([&] { return parse_rational(trim(c)); }));
          st.samples.push_back(std::move(p));
        }
      } else {
        lp.fail("unknown key '" + key + "'");
      }
    }
  }
  if (cur) lp.fail("missing 'end'");
  return out;
}

const std::vector<CatalogEntry>& load_catalog() {
  static const std::vector<CatalogEntry> catalog = parse_catalog(kCatalogText);
  return catalog;
}

const CatalogEntry& find_entry(std::string_view name) {
  for (const auto& e : load_catalog())
    if (e.name == name) return e;
  throw PreconditionError("unknown catalog entry '" + std::string(name) + "'");
}

MultiPoly specialize(const CatalogEntry& entry, std::span<const Rational> point) {
  if (point.size() != entry.params.size())
    throw StructuralError("specialize: expected " + std::to_string(entry.params.size()) + " parameter values");
  MultiPoly f = entry.template_poly;
  for (std::size_t j = 0; j < point.size(); ++j) f = f.substitute(entry.vars.size() + j, point[j]);
  return f.rename_vars(entry.vars);
}

bool stratum_member(std::span<const Rational> point, const StratumSpec& stratum,
                    const std::optional<MultiPoly>& constraint) {
  for (const auto& g : stratum.vanishing)
    if (g.evaluate(point) != 0) return false;
  if (!stratum.excluded.empty() &&
      std::all_of(stratum.excluded.begin(), stratum.excluded.end(), [&](const MultiPoly& g) { return g.evaluate(point) == 0; }))
    return false;
  return !constraint || constraint->evaluate(point) != 0;
}

const StratumSpec& f0_stratum(const CatalogEntry& entry) {
  return entry.has_modulus() ? entry.strata.at(1) : entry.strata.back();
}

bool wh_crosscheck(const CatalogEntry& entry) {
  return wh_bfunction_roots(entry.weights).as_set() == f0_stratum(entry).expected_roots.as_set();
}

std::string to_string(SampleStatus s) {
  switch (s) {
    case SampleStatus::Pass: return "pass";
    case SampleStatus::RootMismatch: return "root-mismatch";
    case SampleStatus::DimMismatch: return "dim-mismatch";
    case SampleStatus::ResourceError: return "resource-error";
    case SampleStatus::Error: return "error";
  }
  return "error";
}

bool VerificationReport::passed() const {
  return wh_crosscheck && !samples.empty() &&
         std::all_of(samples.begin(), samples.end(), [](const SampleOutcome& s) { return s.status == SampleStatus::Pass; });
}

VerificationReport verify_entry(const CatalogEntry& entry, const VerifyOptions& opts) {
  using clock = std::chrono::steady_clock;
  auto start = clock::now();
  VerificationReport report;
  report.entry = entry.name;
  report.wh_crosscheck = wh_crosscheck(entry);

  struct Job {
    const StratumSpec* stratum;
    ParamPoint point;
  };
  std::vector<Job> jobs;
  for (const auto& label : opts.strata)
    if (!entry.find_stratum(label)) throw PreconditionError(entry.name + " has no stratum '" + label + "'");
  for (const auto& st : entry.strata) {
    if (!opts.strata.empty() && std::find(opts.strata.begin(), opts.strata.end(), st.label) == opts.strata.end())
      continue;
    for (const auto& p : st.samples) jobs.push_back({&st, p});
  }
  report.samples.resize(jobs.size());

  detail::parallel_for(jobs.size(), opts.jobs, [&](std::size_t i) {
    const Job& job = jobs[i];
    SampleOutcome& out = report.samples[i];
    out.stratum = job.stratum->label;
    out.point = job.point;
    auto t0 = clock::now();
    BFunctionOptions bf = opts.bfunction;
    if (opts.budget) bf.groebner.deadline = t0 + *opts.budget;
    try {
      MultiPoly f = specialize(entry, job.point);
      out.polynomial = f.to_string();
      LocalBFResult r = local_bfunction_swh(f, entry.weights, bf);
      out.computed = r.roots;
      out.dims = r.dims;
      out.milnor = r.milnor;
      RootList expected = job.stratum->expected_roots.as_set();
      out.missing = expected.without(r.roots.as_set());
      out.unexpected = r.roots.as_set().without(expected);
      out.status = SampleStatus::Pass;
      if (!out.missing.empty() || !out.unexpected.empty()) {
        out.status = SampleStatus::RootMismatch;
      } else {
        for (const auto& [g, d] : job.stratum->expected_dims) {
          auto it = r.dims.find(g);
          if (it == r.dims.end() || it->second != d) {
            out.status = SampleStatus::DimMismatch;
            out.message += "dim(" + to_string(g) + ") expected " + std::to_string(d) + ", got " +
                           std::to_string(it == r.dims.end() ? 0 : it->second) + "; ";
          }
        }
      }
    } catch (const ResourceError& e) {
      out.status = SampleStatus::ResourceError;
      out.message = e.what();
    } catch (const Error& e) {
      out.status = SampleStatus::Error;
      out.message = e.what();
    }
    out.seconds = std::chrono::duration<double>(clock::now() - t0).count();
  });
  report.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return report;
}

}  // namespace lbf
