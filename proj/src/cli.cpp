#include "parafermion/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <climits>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "parafermion/census.hpp"
#include "parafermion/errors.hpp"
#include "parafermion/lattice.hpp"
#include "parafermion/observable.hpp"
#include "parafermion/winding.hpp"

namespace parafermion::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace

std::vector<double> parse_x_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad x grid '" + spec + "'");
    }
  }
  if (parts.size() != 3) throw std::invalid_argument("x grid must be start:stop:step");
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(start >= 0.0) || !(stop >= start) || !(step > 0.0)) {
    throw std::invalid_argument("x grid needs 0 <= start <= stop and step > 0");
  }
  const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 100000) throw std::invalid_argument("x grid has too many points");
  std::vector<double> xs;
  for (long i = 0; i < count; ++i) xs.push_back(start + static_cast<double>(i) * step);
  return xs;
}

WedgeAngle parse_alpha(const std::string& spec) {
  std::string s;
  for (char c : spec) {
    if (c != ' ' && c != '*') s += c;
  }
  const auto pos = s.find("pi");
  if (pos == std::string::npos) {
    double radians = 0;
    try {
      std::size_t used = 0;
      radians = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad wedge angle '" + spec + "'");
    }
    return {radians / std::numbers::pi, std::nullopt};
  }
  const std::string head = s.substr(0, pos);
  std::string tail = s.substr(pos + 2);
  Rational value = head.empty() ? Rational(1) : parse_rational(head);
  if (!tail.empty()) {
    if (tail[0] != '/') throw std::invalid_argument("bad wedge angle '" + spec + "'");
    const Rational den = parse_rational(tail.substr(1));
    if (den == 0) throw std::invalid_argument("bad wedge angle '" + spec + "'");
    value /= den;
  }
  return {static_cast<double>(value), value};
}

json to_json(const RunConfig& c) {
  json doc{{"command", c.command}};
  if (!c.mode.empty()) doc["mode"] = c.mode;
  if (c.command == "exponents" || c.command == "asymptotics" || c.command == "report") {
    if (c.command == "exponents") {
      doc["n"] = c.n;
      doc["branch"] = c.branch;
      doc["alpha"] = c.alpha;
    }
    if (c.command == "asymptotics") {
      doc["eta"] = c.eta;
      doc["j"] = c.j;
      doc["digits"] = c.digits;
    }
    if (c.command == "report") doc["inputs"] = c.inputs;
    return doc;
  }
  doc["T"] = c.T;
  doc["L"] = c.L;
  doc["vertexCap"] = c.vertexCap;
  if (c.command == "enumerate") return doc;
  doc["n"] = c.n;
  doc["branch"] = c.branch;
  if (c.command == "verify") {
    doc["xGrid"] = c.xGrid;
    doc["x"] = c.x;
    doc["tolerance"] = c.tolerance;
    doc["precision"] = c.precision;
    if (c.precision == "high") doc["digits"] = c.digits;
  }
  if (c.command == "winding") {
    doc["region"] = c.region;
    doc["jMin"] = c.jMin;
    doc["jMax"] = c.jMax;
  }
  return doc;
}

namespace {

struct Enumerated {
  HoneycombDomain domain;
  TerminalCensus census;
  LoopCensus loops;
  LoopCensus loopsAvoidStart;

  ObservableInput input() const { return {domain, census, loops, loopsAvoidStart}; }
};

Enumerated enumerate_all(const RunConfig& c) {
  EnumerationOptions options = default_enumeration_options();
  options.workers = c.workers;
  options.vertexCap = c.vertexCap;
  HoneycombDomain domain = build_trapezoid(c.T, c.L);
  TerminalCensus census = enumerate_terminal_census(domain, options);
  LoopCensus loops = enumerate_loop_census(domain, std::nullopt, options);
  LoopCensus avoid = enumerate_loop_census(domain, domain.start_vertex(), options);
  return {std::move(domain), std::move(census), std::move(loops), std::move(avoid)};
}

std::vector<Branch> branches_of(const std::string& b) {
  if (b == "both") return {Branch::Dilute, Branch::Dense};
  return {parse_branch(b)};
}

json envelope(const RunConfig& c, const std::string& kind) {
  return {{"schema", kSchemaVersion}, {"kind", kind}, {"config", to_json(c)}};
}

json domain_ref(const RunConfig& c, const HoneycombDomain& d) {
  return {{"T", c.T}, {"L", c.L}, {"hash", d.hash()}, {"vertices", d.vertex_count()},
          {"midEdges", d.mid_edge_count()}};
}

void write_file(const RunConfig& c, const std::string& name, const std::string& body) {
  fs::create_directories(c.out);
  std::ofstream f(fs::path(c.out) / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (fs::path(c.out) / name).string());
  f << body;
}

void write_json(const RunConfig& c, const std::string& name, const json& doc) {
  write_file(c, name, doc.dump(2) + "\n");
}

void validate(RunConfig& c) {
  if (c.command != "exponents" && c.command != "asymptotics" && c.command != "report") {
    if (c.T < 1) throw UsageError("--T must be at least 1");
    if (c.L < 0) throw UsageError("--L must be non-negative");
    if (c.vertexCap < 1 || c.vertexCap > 64) throw UsageError("--cap must lie in [1, 64]");
  }
  if (c.workers < 1) throw UsageError("--workers must be at least 1");
  if (!(c.tolerance > 0.0)) throw UsageError("--tol must be positive");
  for (double n : c.n) {
    if (!(n >= -2.0 && n <= 2.0)) throw UsageError("every --n must lie in [-2, 2]");
  }
  if (c.branch != "both") parse_branch(c.branch);
  if (c.precision != "double" && c.precision != "high") {
    throw UsageError("--precision must be double or high");
  }
  if (c.digits < 10 || c.digits > 1000) throw UsageError("--digits must lie in [10, 1000]");
  if (!c.xGrid.empty()) c.x = parse_x_grid(c.xGrid);
  parse_region(c.region);
  parse_alpha(c.alpha);
  for (const auto& e : c.eta) parse_rational(e);
  for (long j : c.j) {
    if (j < 0) throw UsageError("--j must be non-negative");
  }
  if (c.command == "report" && c.inputs.empty()) throw UsageError("report needs --in files");
}

// Default x grid for the massive and global checks: fractions of x_c.
std::vector<Fugacity> fugacities(const RunConfig& c) {
  std::vector<Fugacity> out;
  if (!c.x.empty()) {
    for (double x : c.x) out.push_back(Fugacity::at(x));
  } else {
    for (double f : {0.0, 0.25, 0.5, 0.75, 0.9, 1.0}) out.push_back(Fugacity::critical(f));
  }
  return out;
}

int cmd_enumerate(const RunConfig& c, std::ostream& out) {
  const Enumerated e = enumerate_all(c);
  json doc = envelope(c, "census-bundle");
  doc["domain"] = domain_ref(c, e.domain);
  doc["descriptor"] = e.domain.descriptor();
  doc["terminal"] = census_to_json(e.census);
  doc["loops"] = loop_census_to_json(e.loops);
  doc["loopsAvoidStart"] = loop_census_to_json(e.loopsAvoidStart);
  write_json(c, "census.json", doc);
  out << "census: " << e.census.size() << " cells, " << e.census.total().str()
      << " configurations on " << e.domain.vertex_count() << " vertices\n";
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const Enumerated e = enumerate_all(c);
  const ObservableInput in = e.input();
  const Precision precision{c.precision == "high", c.digits};
  json doc = envelope(c, "verify-" + c.mode);
  doc["domain"] = domain_ref(c, e.domain);
  json rows = json::array();
  std::ostringstream csv;
  bool ok = true;

  if (c.mode == "local") {
    csv << "n,branch,maxResidual,maxRelative,leadingOrder,pass\n";
    for (double n : c.n) {
      for (Branch b : branches_of(c.branch)) {
        const IdentityReport r = check_local_identity(in, make_parameters(n, b), precision);
        const bool pass = r.maxRelative <= c.tolerance;
        ok = ok && pass;
        json row = parafermion::to_json(r);
        row["pass"] = pass;
        rows.push_back(row);
        csv << format_real(n) << ',' << to_string(b) << ',' << format_real(r.maxResidual) << ','
            << format_real(r.maxRelative) << ',' << (r.leadingOrder ? 1 : 0) << ','
            << (pass ? 1 : 0) << '\n';
      }
    }
  } else if (c.mode == "massive") {
    csv << "n,branch,x,maxResidual,maxRelative,pass\n";
    for (double n : c.n) {
      for (Branch b : branches_of(c.branch)) {
        const ParameterPoint p = make_parameters(n, b);
        for (const Fugacity& f : fugacities(c)) {
          if (p.xc_infinite() && f.criticalFraction != 0.0) continue;
          const IdentityReport r = check_massive_identity(in, p, f, precision);
          const bool pass = r.maxRelative <= c.tolerance;
          ok = ok && pass;
          json row = parafermion::to_json(r);
          row["pass"] = pass;
          rows.push_back(row);
          csv << format_real(n) << ',' << to_string(b) << ',' << format_real(r.x) << ','
              << format_real(r.maxResidual) << ',' << format_real(r.maxRelative) << ','
              << (pass ? 1 : 0) << '\n';
        }
      }
    }
  } else {
    csv << "n,branch,x,exactResidual,exactRelative,literalResidual,literalRelative,pass\n";
    for (double n : c.n) {
      for (Branch b : branches_of(c.branch)) {
        const ParameterPoint p = make_parameters(n, b);
        for (const Fugacity& f : fugacities(c)) {
          if (p.xc_infinite() && f.criticalFraction != 0.0) continue;
          const GlobalIdentityResult g = check_global_identity(in, p, f, precision);
          const bool pass = g.exactRelative <= c.tolerance;
          ok = ok && pass;
          json row = parafermion::to_json(g);
          row["n"] = n;
          row["branch"] = to_string(b);
          row["pass"] = pass;
          rows.push_back(row);
          csv << format_real(n) << ',' << to_string(b) << ',' << format_real(g.x) << ','
              << format_real(g.exactResidual) << ',' << format_real(g.exactRelative) << ','
              << format_real(g.literalResidual) << ',' << format_real(g.literalRelative) << ','
              << (pass ? 1 : 0) << '\n';
        }
      }
    }
  }
  doc["rows"] = rows;
  doc["pass"] = ok;
  write_json(c, "verify-" + c.mode + ".json", doc);
  write_file(c, "verify-" + c.mode + ".csv", csv.str());
  out << "verify " << c.mode << ": " << rows.size() << " checks, "
      << (ok ? "all within" : "some above") << " tolerance " << c.tolerance << "\n";
  return ok ? kOk : kCheckFailed;
}

int cmd_winding(const RunConfig& c, std::ostream& out) {
  const Enumerated e = enumerate_all(c);
  const Region region = parse_region(c.region);
  const int jMax = c.jMax > 0 ? c.jMax : INT_MAX;
  json doc = envelope(c, "winding");
  doc["domain"] = domain_ref(c, e.domain);
  json results = json::array();
  std::ostringstream tableCsv, summaryCsv;
  tableCsv << "n,j,w,value\n";
  summaryCsv << "n,branch,logJ,logSum,targetSlope\n";

  for (double n : c.n) {
    const WindingTable table = winding_table(e.census, n, region);
    for (const auto& [key, value] : table.coefficients) {
      tableCsv << format_real(n) << ',' << key.first << ',' << key.second << ','
               << format_real(value) << '\n';
    }
    json entry{{"n", n}, {"table", parafermion::to_json(table)}};
    json fits = json::array();
    for (Branch b : branches_of(c.branch)) {
      const ParameterPoint p = make_parameters(n, b);
      json f{{"branch", to_string(b)}, {"sigmaTilde", p.sigmaTilde}};
      json sums = json::array();
      for (int j : table.lengths()) {
        const auto s = characteristic_sum(table, p.sigmaTilde, j);
        sums.push_back({{"j", j}, {"re", s.real()}, {"im", s.imag()}});
      }
      f["characteristicSums"] = sums;
      try {
        const WindingFit fit = fit_winding_exponent(table, p.sigmaTilde, c.jMin, jMax);
        f["fit"] = parafermion::to_json(fit);
        for (const auto& [lx, ly] : fit.points) {
          summaryCsv << format_real(n) << ',' << to_string(b) << ',' << format_real(lx) << ','
                     << format_real(ly) << ','
                     << (fit.target ? format_real(*fit.target) : std::string("nan")) << '\n';
        }
        out << "n=" << n << " " << to_string(b) << ": slope " << fit.slope << " +- "
            << fit.standardError;
        if (fit.target) out << " (target " << *fit.target << ")";
        out << "\n";
      } catch (const FitDomainError& err) {
        f["fit"] = nullptr;
        f["fitError"] = err.what();
        out << "n=" << n << " " << to_string(b) << ": no fit (" << err.what() << ")\n";
      } catch (const NoDataError& err) {
        f["fit"] = nullptr;
        f["fitError"] = err.what();
        out << "n=" << n << " " << to_string(b) << ": no fit (" << err.what() << ")\n";
      }
      fits.push_back(f);
    }
    entry["fits"] = fits;
    results.push_back(entry);
  }
  doc["results"] = results;
  write_json(c, "winding.json", doc);
  write_file(c, "winding.csv", tableCsv.str());
  write_file(c, "winding-summary.csv", summaryCsv.str());
  return kOk;
}

int cmd_exponents(const RunConfig& c, std::ostream& out) {
  const WedgeAngle alpha = parse_alpha(c.alpha);
  json doc = envelope(c, "exponents");
  json rows = json::array();
  for (double n : c.n) {
    for (Branch b : branches_of(c.branch)) {
      json row{{"n", n}, {"branch", to_string(b)}};
      try {
        const double kappa = kappa_of_n(n, b);
        const auto exact = exact_kappa(n, b);
        if (exact && alpha.exact) {
          row["exponents"] = parafermion::to_json(exponent_set_exact(*exact, *alpha.exact));
          row["exact"] = true;
        } else {
          row["exponents"] = parafermion::to_json(exponent_set(kappa, alpha.overPi));
          row["exact"] = false;
        }
        row["scalingDiscrepancy"] = verify_scaling_relations(kappa, alpha.overPi).maxDiscrepancy;
      } catch (const DivergenceError& err) {
        row["error"] = err.what();
      } catch (const std::invalid_argument& err) {
        row["error"] = err.what();
      }
      rows.push_back(row);
    }
  }
  doc["rows"] = rows;
  write_json(c, "exponents.json", doc);
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_asymptotics(const RunConfig& c, std::ostream& out) {
  const std::vector<std::string> etas =
      c.eta.empty() ? std::vector<std::string>{"1/2", "5/8", "61/64"} : c.eta;
  const std::vector<long> js = c.j.empty() ? std::vector<long>{100, 1000, 10000} : c.j;
  json doc = envelope(c, "asymptotics");
  json rows = json::array();
  std::ostringstream csv;
  csv << "eta,j,exact,asymptotic,relativeError\n";
  for (const auto& etaText : etas) {
    const Rational eta = parse_rational(etaText);
    const long jMax = *std::max_element(js.begin(), js.end());
    const auto series = exact_coeff_series(eta, jMax, c.digits);
    for (long j : js) {
      const double exact = static_cast<double>(series[static_cast<std::size_t>(j)]);
      const double approx = coeff_asymptotics(static_cast<double>(eta), static_cast<double>(j));
      const double rel = exact != 0.0 ? std::abs(approx - exact) / std::abs(exact) : 0.0;
      rows.push_back({{"eta", to_string(eta)},
                      {"j", j},
                      {"exact", series[static_cast<std::size_t>(j)].str(c.digits)},
                      {"asymptotic", approx},
                      {"relativeError", rel}});
      csv << to_string(eta) << ',' << j << ',' << format_real(exact) << ','
          << format_real(approx) << ',' << format_real(rel) << '\n';
      out << "eta=" << to_string(eta) << " j=" << j << " relative error " << rel << "\n";
    }
  }
  doc["rows"] = rows;
  write_json(c, "asymptotics.json", doc);
  write_file(c, "asymptotics.csv", csv.str());
  return kOk;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void summarise(const json& doc, std::ostream& s) {
  const std::string kind = doc.at("kind");
  const json& rows = doc.contains("rows") ? doc.at("rows") : json::array();
  if (kind == "verify-global") {
    std::map<double, std::pair<double, double>> perX;
    for (const auto& r : rows) {
      auto& [exact, literal] = perX[r.at("x").get<double>()];
      exact = std::max(exact, r.at("exactRelative").get<double>());
      literal = std::max(literal, r.at("literalRelative").get<double>());
    }
    s << "  x               max exact rel.   max literal rel.\n";
    for (const auto& [x, v] : perX) {
      char line[128];
      std::snprintf(line, sizeof line, "  %-15.6g %-16s %s\n", x, fmt(v.first).c_str(),
                    fmt(v.second).c_str());
      s << line;
    }
  } else if (kind == "verify-local" || kind == "verify-massive") {
    for (const auto& r : rows) {
      const json& p = r.at("params");
      s << "  n=" << p.at("n").get<double>() << " " << p.at("branch").get<std::string>();
      if (kind == "verify-massive") s << " x=" << r.at("x").get<double>();
      s << ": max relative " << fmt(r.at("maxRelative").get<double>())
        << (r.at("pass").get<bool>() ? "" : "  FAIL") << "\n";
    }
  } else if (kind == "winding") {
    for (const auto& entry : doc.at("results")) {
      for (const auto& f : entry.at("fits")) {
        s << "  n=" << entry.at("n").get<double>() << " " << f.at("branch").get<std::string>()
          << ": ";
        if (f.at("fit").is_null()) {
          s << "no fit (" << f.value("fitError", "") << ")\n";
          continue;
        }
        const json& fit = f.at("fit");
        s << "slope " << fmt(fit.at("slope").get<double>()) << " +- "
          << fmt(fit.at("standardError").get<double>()) << " vs target -omega ";
        s << (fit.at("target").is_null() ? std::string("n/a")
                                         : fmt(fit.at("target").get<double>()))
          << "\n";
      }
    }
  } else if (kind == "exponents") {
    for (const auto& r : rows) {
      s << "  n=" << r.at("n").get<double>() << " " << r.at("branch").get<std::string>() << ": ";
      if (r.contains("error")) {
        s << r.at("error").get<std::string>() << "\n";
        continue;
      }
      const json& e = r.at("exponents");
      auto show = [&](const char* key) {
        const json& v = e.at(key);
        return v.is_object() ? v.at("exact").get<std::string>() : fmt(v.get<double>());
      };
      s << "gamma1=" << show("gamma1") << " gamma11=" << show("gamma11")
        << " omega=" << show("omega") << "\n";
    }
  } else if (kind == "asymptotics") {
    for (const auto& r : rows) {
      s << "  eta=" << r.at("eta").get<std::string>() << " j=" << r.at("j").get<long>()
        << ": relative error " << fmt(r.at("relativeError").get<double>()) << "\n";
    }
  } else if (kind == "census-bundle") {
    s << "  " << doc.at("terminal").at("entries").size() << " terminal cells, "
      << doc.at("loops").at("entries").size() << " loop cells\n";
  }
}

int cmd_report(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::ostringstream s;
  for (const auto& path : c.inputs) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
      err << "report: cannot read " << path << "\n";
      return kUsageError;
    }
    json doc;
    try {
      doc = json::parse(f);
    } catch (const json::exception& e) {
      err << "report: " << path << " is not valid JSON\n";
      return kUsageError;
    }
    if (doc.value("schema", "") != kSchemaVersion || !doc.contains("kind")) {
      err << "report: " << path << " is not a " << kSchemaVersion << " artifact\n";
      return kUsageError;
    }
    if (doc.contains("domain")) {
      const json& d = doc.at("domain");
      std::string expected;
      try {
        expected = build_trapezoid(d.at("T").get<int>(), d.at("L").get<int>()).hash();
      } catch (const std::exception&) {
        err << "report: " << path << " has an unusable domain reference\n";
        return kUsageError;
      }
      bool match = d.value("hash", "") == expected;
      if (doc.contains("terminal")) {
        match = match && doc.at("terminal").value("domainHash", "") == expected;
      }
      if (!match) {
        err << "report: domain hash mismatch in " << path << "\n";
        return kUsageError;
      }
    }
    s << fs::path(path).filename().string() << " [" << doc.at("kind").get<std::string>() << "]";
    if (doc.contains("domain")) {
      s << " T=" << doc.at("domain").at("T") << " L=" << doc.at("domain").at("L");
    }
    s << "\n";
    summarise(doc, s);
  }
  write_file(c, "report.txt", s.str());
  out << s.str();
  return kOk;
}

void add_domain_options(CLI::App* app, RunConfig& c) {
  app->add_option("--T", c.T, "hexagon columns of the trapezoid");
  app->add_option("--L", c.L, "half-height of the trapezoid (0: pi/3 wedge)");
  app->add_option("--cap", c.vertexCap, "vertex cap of the enumerator");
  app->add_option("--workers", c.workers, "enumeration threads");
}

void add_model_options(CLI::App* app, RunConfig& c) {
  app->add_option("--n", c.n, "loop weights")->delimiter(',');
  app->add_option("--branch", c.branch, "dense, dilute or both");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact-enumeration lab for the honeycomb O(n) loop model", "parafermion-lab"};
  app.require_subcommand(1);

  auto* enumerate = app.add_subcommand("enumerate", "exact terminal and loop censuses");
  add_domain_options(enumerate, c);

  auto* verify = app.add_subcommand("verify", "check an observable identity");
  verify->add_option("mode", c.mode, "local, massive or global")
      ->required()
      ->check(CLI::IsMember({"local", "massive", "global"}));
  add_domain_options(verify, c);
  add_model_options(verify, c);
  verify->add_option("--x-grid", c.xGrid, "start:stop:step");
  verify->add_option("--precision", c.precision, "double or high");
  verify->add_option("--digits", c.digits, "decimal digits in high precision");

  auto* winding = app.add_subcommand("winding", "winding tables and exponent fits");
  add_domain_options(winding, c);
  add_model_options(winding, c);
  winding->add_option("--region", c.region, "interior or boundary");
  winding->add_option("--j-min", c.jMin, "smallest walk length in the fit");
  winding->add_option("--j-max", c.jMax, "largest walk length in the fit (0: all)");

  auto* exponents = app.add_subcommand("exponents", "closed-form exponents");
  add_model_options(exponents, c);
  exponents->add_option("--alpha", c.alpha, "wedge angle, e.g. pi, pi/3, 2pi/3");

  auto* asymptotics = app.add_subcommand("asymptotics", "coefficients of (1-z)^-eta");
  asymptotics->add_option("--eta", c.eta, "exponents as rationals")->delimiter(',');
  asymptotics->add_option("--j", c.j, "coefficient indices")->delimiter(',');
  asymptotics->add_option("--digits", c.digits, "working decimal digits");

  auto* report = app.add_subcommand("report", "summarise earlier artifacts");
  report->add_option("--in", c.inputs, "artifact files")->required();

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--tol", c.tolerance, "relative tolerance for checks");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsageError;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    validate(c);
    if (c.command == "enumerate") return cmd_enumerate(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "winding") return cmd_winding(c, out);
    if (c.command == "exponents") return cmd_exponents(c, out);
    if (c.command == "asymptotics") return cmd_asymptotics(c, out);
    return cmd_report(c, out, err);
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << "\n";
    return kCapacityError;
  } catch (const PoleError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace parafermion::cli
