#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "parafermion/census.hpp"

namespace parafermion {

// Interior: every walk that stops inside the domain, whatever occupies the
// vertex ahead. Boundary: walks that leave through a boundary mid-edge.
enum class Region { Interior, Boundary };

std::string to_string(Region r);
Region parse_region(const std::string& s);

// a_theta(j) for theta = w pi/3, keyed by (j, w), j in walk steps.
struct WindingTable {
  double n = 0;
  Region region = Region::Interior;
  std::string domainHash;
  std::map<std::pair<int, int>, double> coefficients;

  std::vector<int> lengths() const;
  // Coefficients of row j keyed by w; empty when the row is absent.
  std::map<int, double> row(int j) const;
};

WindingTable winding_table(const TerminalCensus& census, double n, Region region);

// Unweighted big-integer counts keyed by (j, loops, w).
std::map<std::tuple<int, int, int>, BigInt> exact_winding_counts(const TerminalCensus& census,
                                                                 Region region);

struct WindingPdf {
  int j = 0;
  std::map<int, double> mass;
  // Set when the row total is negative (possible for n < 0); masses are then
  // normalised by the signed total.
  bool signedMeasure = false;
};

// Throws NoDataError when row j is absent or sums to zero.
WindingPdf winding_pdf(const WindingTable& table, int j);

// sum_w exp(i sigmaTilde w pi/3) P(w, j).
std::complex<double> characteristic_sum(const WindingTable& table, double sigmaTilde, int j);

struct WindingFit {
  double slope = 0;
  double intercept = 0;
  double standardError = 0;
  // -omega at the kappa belonging to sigmaTilde = 3/2 - 3/kappa.
  std::optional<double> target;
  std::vector<std::pair<double, double>> points;  // (log j, log Re S)
};

// Least squares of log Re S(j) against log j over rows jMin..jMax. Throws
// FitDomainError with fewer than three rows or a non-positive sum.
WindingFit fit_winding_exponent(const WindingTable& table, double sigmaTilde, int jMin, int jMax);

// Normal density in theta with variance kappa nu log(ell), nu = 1/(4-kappa).
double ds_gaussian(double kappa, long ell, double theta);
// 9(2-kappa)^2 / (8 kappa (4-kappa)). DivergenceError at kappa = 4.
double ds_omega(double kappa);
// Numerical integral of cos(sigmaTilde theta) ds_gaussian(kappa, ell, theta).
double ds_characteristic(double kappa, long ell, double sigmaTilde);
// Closed form of the same integral, ell^(-kappa nu sigmaTilde^2 / 2).
double ds_characteristic_closed(double kappa, long ell, double sigmaTilde);

std::string winding_table_csv(const WindingTable& table);
std::string winding_pdf_csv(const WindingPdf& pdf);
nlohmann::json to_json(const WindingTable& table);
nlohmann::json to_json(const WindingPdf& pdf);
nlohmann::json to_json(const WindingFit& fit);

// %.17g, used for every real number written to CSV.
std::string format_real(double v);

}  // namespace parafermion
