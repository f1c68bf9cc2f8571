#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <json.hpp>

#include "parafermion/branch.hpp"

namespace parafermion {

using Rational = boost::multiprecision::cpp_rational;

// Coulomb-gas parametrisation n = -2 cos(4 pi / kappa). Dilute maps to
// kappa in [2, 4]; dense maps to kappa in [4, inf), with n = -2 (kappa
// infinite) rejected.
double kappa_of_n(double n, Branch branch);
double n_of_kappa(double kappa);

// kappa as a small-denominator rational when it is one (n = -2, -1, 0, 1
// on the dilute line, for instance).
std::optional<Rational> exact_kappa(double n, Branch branch);

// Closed-form exponents at Coulomb-gas parameter kappa and wedge angle
// alpha = alphaOverPi * pi. Everything is a rational function of (kappa,
// 1/alphaOverPi), so T may be double or Rational.
template <class T>
struct ExponentSetT {
  T kappa;
  T alphaOverPi;
  T nu;
  T sigma;
  T sigmaTilde;
  T gamma;    // bulk, from nu (2 y0 - d)
  T gamma1;
  T gamma11;
  T gamma2;   // wedge
  T gamma21;  // wedge
  T omega;
  T y0;
  T y1;
  T y2;
  // kappa > 4: dense-branch analytic continuation, not a derived claim.
  bool extrapolation = false;
};

using ExponentSet = ExponentSetT<double>;
using ExactExponentSet = ExponentSetT<Rational>;

inline constexpr int kSpatialDimension = 2;

// Throws DivergenceError at kappa = 4 and std::invalid_argument for
// kappa < 2 or non-positive alpha.
template <class T>
ExponentSetT<T> exponent_set_t(const T& kappa, const T& alphaOverPi);

ExponentSet exponent_set(double kappa, double alphaOverPi = 1.0);
ExactExponentSet exponent_set_exact(const Rational& kappa, const Rational& alphaOverPi = 1);

struct ScalingCheck {
  std::string name;
  double fromScaling;
  double closedForm;
};

struct ScalingReport {
  double kappa;
  double alphaOverPi;
  std::vector<ScalingCheck> checks;
  double maxDiscrepancy = 0;
};

// gamma1 = nu(y0+y1-d+1), gamma11 = nu(2y1-d+1), gamma2 = nu(y0+y2-d+2),
// gamma21 = nu(y1+y2-d+2) against their closed forms, plus
// gamma1 - gamma11 - 1 = omega and kappa nu sigmaTilde^2 / 2 = omega.
ScalingReport verify_scaling_relations(double kappa, double alphaOverPi);

struct InequalityRow {
  double n;
  double kappa = 0;
  double difference = 0;  // gamma1 - gamma11
  bool pass = false;
  bool divergent = false;
  bool extrapolation = false;
};

std::vector<InequalityRow> inequality_scan(const std::vector<double>& nGrid, Branch branch);

// j^(eta-1) / Gamma(eta). Throws PoleError for eta in {0, -1, -2, ...}.
double coeff_asymptotics(double eta, double j);

// [z^j] (1 - z)^(-eta) = binomial(j + eta - 1, j), exactly.
Rational exact_coeff_rational(const Rational& eta, long j);

// The same coefficient as a running product at `digits` decimal digits.
boost::multiprecision::mpfr_float exact_coeff(const Rational& eta, long j, unsigned digits = 50);

// Coefficients for j = 0..jMax in one pass.
std::vector<boost::multiprecision::mpfr_float> exact_coeff_series(const Rational& eta, long jMax,
                                                                  unsigned digits = 50);

// Parses "61/64", "-3", "0.5" into a rational.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);

nlohmann::json to_json(const ExponentSet& e);
nlohmann::json to_json(const ExactExponentSet& e);

}  // namespace parafermion
