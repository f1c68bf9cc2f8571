#include "parafermion/winding.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "parafermion/errors.hpp"
#include "parafermion/exponents.hpp"
#include "parafermion/lattice.hpp"

namespace parafermion {

std::string to_string(Region r) { return r == Region::Interior ? "interior" : "boundary"; }

Region parse_region(const std::string& s) {
  if (s == "interior") return Region::Interior;
  if (s == "boundary") return Region::Boundary;
  throw std::invalid_argument("unknown region '" + s + "'");
}

std::vector<int> WindingTable::lengths() const {
  std::vector<int> out;
  for (const auto& [key, value] : coefficients) {
    if (out.empty() || out.back() != key.first) out.push_back(key.first);
  }
  return out;
}

std::map<int, double> WindingTable::row(int j) const {
  std::map<int, double> out;
  for (auto it = coefficients.lower_bound({j, std::numeric_limits<int>::min()});
       it != coefficients.end() && it->first.first == j; ++it) {
    out.emplace(it->first.second, it->second);
  }
  return out;
}

namespace {

bool in_region(const TerminalKey& key, Region region) {
  return region == Region::Boundary ? key.is_exit() : !key.is_exit();
}

}  // namespace

WindingTable winding_table(const TerminalCensus& census, double n, Region region) {
  if (!(n >= -2.0 && n <= 2.0)) throw std::invalid_argument("n must lie in [-2, 2]");
  WindingTable table{n, region, census.domain_hash(), {}};
  for (const auto& [key, count] : census.entries()) {
    if (!in_region(key, region) || key.walkLength == 0) continue;
    const double weight = static_cast<double>(count) * std::pow(n, key.loops);
    table.coefficients[{key.walkLength, key.winding}] += weight;
  }
  return table;
}

std::map<std::tuple<int, int, int>, BigInt> exact_winding_counts(const TerminalCensus& census,
                                                                 Region region) {
  std::map<std::tuple<int, int, int>, BigInt> out;
  for (const auto& [key, count] : census.entries()) {
    if (!in_region(key, region) || key.walkLength == 0) continue;
    out[{key.walkLength, key.loops, key.winding}] += count;
  }
  return out;
}

WindingPdf winding_pdf(const WindingTable& table, int j) {
  const auto row = table.row(j);
  if (row.empty()) throw NoDataError("no walks of length " + std::to_string(j));
  double total = 0.0;
  for (const auto& [w, a] : row) total += a;
  if (total == 0.0) throw NoDataError("row " + std::to_string(j) + " has zero total weight");
  WindingPdf pdf{j, {}, total < 0.0};
  for (const auto& [w, a] : row) pdf.mass[w] = a / total;
  return pdf;
}

std::complex<double> characteristic_sum(const WindingTable& table, double sigmaTilde, int j) {
  const auto row = table.row(j);
  if (row.empty()) throw NoDataError("no walks of length " + std::to_string(j));
  // Pair w with -w so that symmetric rows give an exactly real sum, and
  // accumulate the total in the same order so that sigmaTilde = 0 gives 1.
  double total = 0.0;
  std::complex<double> s = 0.0;
  for (const auto& [w, a] : row) {
    const auto mirror = row.find(-w);
    const bool paired = w != 0 && mirror != row.end();
    if (paired && w < 0) continue;
    const double theta = sigmaTilde * w * std::numbers::pi / 3.0;
    if (paired) {
      const double b = mirror->second;
      total += a + b;
      s += std::complex<double>((a + b) * std::cos(theta), (a - b) * std::sin(theta));
    } else {
      total += a;
      s += a * std::polar(1.0, theta);
    }
  }
  if (total == 0.0) throw NoDataError("row " + std::to_string(j) + " has zero total weight");
  return s / total;
}

WindingFit fit_winding_exponent(const WindingTable& table, double sigmaTilde, int jMin,
                                int jMax) {
  WindingFit fit;
  for (int j : table.lengths()) {
    if (j < jMin || j > jMax) continue;
    const double s = characteristic_sum(table, sigmaTilde, j).real();
    if (!(s > 0.0)) {
      throw FitDomainError("characteristic sum is not positive at j = " + std::to_string(j));
    }
    fit.points.emplace_back(std::log(static_cast<double>(j)), std::log(s));
  }
  const std::size_t m = fit.points.size();
  if (m < 3) throw FitDomainError("fewer than three usable lengths in the fit range");

  double mx = 0, my = 0;
  for (const auto& [x, y] : fit.points) {
    mx += x;
    my += y;
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : fit.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0;
  for (const auto& [x, y] : fit.points) {
    const double r = y - fit.intercept - fit.slope * x;
    ssr += r * r;
  }
  fit.standardError = std::sqrt(ssr / static_cast<double>(m - 2) / sxx);

  if (sigmaTilde < 1.5) {
    const double kappa = 3.0 / (1.5 - sigmaTilde);
    try {
      fit.target = -exponent_set(kappa).omega;
    } catch (const std::exception&) {
      fit.target.reset();
    }
  }
  return fit;
}

namespace {

double ds_variance(double kappa, long ell) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (std::abs(kappa - 4.0) < 1e-12) throw DivergenceError("nu diverges at kappa = 4");
  if (ell < 2) throw std::invalid_argument("walk length must be at least 2");
  return kappa / (4.0 - kappa) * std::log(static_cast<double>(ell));
}

}  // namespace

double ds_gaussian(double kappa, long ell, double theta) {
  const double v = ds_variance(kappa, ell);
  return std::exp(-theta * theta / (2.0 * v)) / std::sqrt(2.0 * std::numbers::pi * v);
}

double ds_omega(double kappa) {
  if (!(kappa > 0.0 && kappa < 4.0)) {
    if (std::abs(kappa - 4.0) < 1e-12) throw DivergenceError("omega diverges at kappa = 4");
    throw std::invalid_argument("kappa must lie in (0, 4)");
  }
  return 9.0 * (2.0 - kappa) * (2.0 - kappa) / (8.0 * kappa * (4.0 - kappa));
}

double ds_characteristic(double kappa, long ell, double sigmaTilde) {
  const double v = ds_variance(kappa, ell);
  if (v < 0.0) throw std::invalid_argument("kappa must lie in (0, 4)");
  const double half = 40.0 * std::sqrt(v);
  auto f = [&](double theta) { return std::cos(sigmaTilde * theta) * ds_gaussian(kappa, ell, theta); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -half, half, 20, 1e-14);
}

double ds_characteristic_closed(double kappa, long ell, double sigmaTilde) {
  return std::exp(-sigmaTilde * sigmaTilde * ds_variance(kappa, ell) / 2.0);
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string winding_table_csv(const WindingTable& table) {
  std::ostringstream out;
  out << "j,w,value\n";
  for (const auto& [key, value] : table.coefficients) {
    out << key.first << ',' << key.second << ',' << format_real(value) << '\n';
  }
  return out.str();
}

std::string winding_pdf_csv(const WindingPdf& pdf) {
  std::ostringstream out;
  out << "j,w,value\n";
  for (const auto& [w, p] : pdf.mass) out << pdf.j << ',' << w << ',' << format_real(p) << '\n';
  return out.str();
}

nlohmann::json to_json(const WindingTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [key, value] : table.coefficients) {
    rows.push_back({{"j", key.first}, {"w", key.second}, {"value", value}});
  }
  return {{"schema", kSchemaVersion}, {"kind", "winding-table"}, {"n", table.n},
          {"region", to_string(table.region)}, {"domainHash", table.domainHash},
          {"rows", rows}};
}

nlohmann::json to_json(const WindingPdf& pdf) {
  nlohmann::json mass = nlohmann::json::array();
  for (const auto& [w, p] : pdf.mass) mass.push_back({{"w", w}, {"mass", p}});
  return {{"j", pdf.j}, {"signedMeasure", pdf.signedMeasure}, {"mass", mass}};
}

nlohmann::json to_json(const WindingFit& fit) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& [x, y] : fit.points) points.push_back({{"logJ", x}, {"logSum", y}});
  nlohmann::json doc{{"slope", fit.slope},
                     {"intercept", fit.intercept},
                     {"standardError", fit.standardError},
                     {"points", points}};
  doc["target"] = fit.target ? nlohmann::json(*fit.target) : nlohmann::json(nullptr);
  return doc;
}

}  // namespace parafermion
