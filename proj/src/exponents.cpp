#include "parafermion/exponents.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "parafermion/errors.hpp"

namespace parafermion {

namespace mp = boost::multiprecision;

double kappa_of_n(double n, Branch branch) {
  if (!(n >= -2.0 && n <= 2.0)) throw std::invalid_argument("n must lie in [-2, 2]");
  const double pi = std::numbers::pi;
  const double angle = std::acos(std::clamp(-n / 2.0, -1.0, 1.0));
  if (branch == Branch::Dilute) return 4.0 * pi / (2.0 * pi - angle);
  if (angle == 0.0) {
    throw std::invalid_argument("the dense branch has no finite kappa at n = -2");
  }
  return 4.0 * pi / angle;
}

double n_of_kappa(double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  return -2.0 * std::cos(4.0 * std::numbers::pi / kappa);
}

std::optional<Rational> exact_kappa(double n, Branch branch) {
  const double kappa = kappa_of_n(n, branch);
  for (long q = 1; q <= 64; ++q) {
    const double p = std::round(kappa * static_cast<double>(q));
    if (std::abs(p / static_cast<double>(q) - kappa) < 1e-12) {
      return Rational(static_cast<long>(p), q);
    }
  }
  return std::nullopt;
}

namespace {

template <class T>
bool is_four(const T& kappa) {
  if constexpr (std::is_same_v<T, double>) {
    return std::abs(kappa - 4.0) < 1e-12;
  } else {
    return kappa == 4;
  }
}

}  // namespace

template <class T>
ExponentSetT<T> exponent_set_t(const T& kappa, const T& alphaOverPi) {
  if (!(kappa >= 2)) throw std::invalid_argument("kappa must be >= 2");
  if (is_four(kappa)) {
    throw DivergenceError("exponents diverge at kappa = 4 (n = 2)");
  }
  if (!(alphaOverPi > 0) || alphaOverPi > 2) {
    throw std::invalid_argument("wedge angle must lie in (0, 2 pi]");
  }
  const T d = kSpatialDimension;
  const T k = kappa;
  const T inv = T(1) / alphaOverPi;  // pi / alpha
  const T denom = k * (4 - k);

  ExponentSetT<T> e;
  e.kappa = k;
  e.alphaOverPi = alphaOverPi;
  e.extrapolation = k > 4;
  e.nu = T(1) / (4 - k);
  e.sigma = T(3) / k - T(1) / 2;
  e.sigmaTilde = 1 - e.sigma;
  e.gamma1 = (k * k + 12 * k - 12) / (8 * denom);
  e.gamma11 = -2 * (3 - k) / denom;
  e.gamma2 = (k * k + 8 * k + 12 - 24 * inv + 4 * k * inv) / (8 * denom);
  e.gamma21 = (3 * k - 6 - 6 * inv + k * inv) / (2 * denom);
  e.omega = 9 * (2 - k) * (2 - k) / (8 * denom);
  e.y0 = (e.sigma + 1) * (e.sigma + 2) / (2 * e.sigma + 1);
  e.y1 = 1 - e.sigma;
  e.y2 = -e.sigma * inv;
  e.gamma = e.nu * (2 * e.y0 - d);
  return e;
}

template ExponentSetT<double> exponent_set_t(const double&, const double&);
template ExponentSetT<Rational> exponent_set_t(const Rational&, const Rational&);

ExponentSet exponent_set(double kappa, double alphaOverPi) {
  return exponent_set_t<double>(kappa, alphaOverPi);
}

ExactExponentSet exponent_set_exact(const Rational& kappa, const Rational& alphaOverPi) {
  return exponent_set_t<Rational>(kappa, alphaOverPi);
}

ScalingReport verify_scaling_relations(double kappa, double alphaOverPi) {
  const ExponentSet e = exponent_set(kappa, alphaOverPi);
  const double d = kSpatialDimension;
  ScalingReport r{kappa, alphaOverPi, {}, 0.0};
  r.checks = {
      {"gamma1", e.nu * (e.y0 + e.y1 - d + 1), e.gamma1},
      {"gamma11", e.nu * (2 * e.y1 - d + 1), e.gamma11},
      {"gamma2", e.nu * (e.y0 + e.y2 - d + 2), e.gamma2},
      {"gamma21", e.nu * (e.y1 + e.y2 - d + 2), e.gamma21},
      {"omega(surface)", e.gamma1 - e.gamma11 - 1, e.omega},
      {"omega(wedge)", e.gamma2 - e.gamma21 - 1, e.omega},
      {"omega(winding)", kappa * e.nu * e.sigmaTilde * e.sigmaTilde / 2, e.omega},
  };
  for (const auto& c : r.checks) {
    r.maxDiscrepancy = std::max(r.maxDiscrepancy, std::abs(c.fromScaling - c.closedForm));
  }
  return r;
}

std::vector<InequalityRow> inequality_scan(const std::vector<double>& nGrid, Branch branch) {
  std::vector<InequalityRow> rows;
  rows.reserve(nGrid.size());
  for (double n : nGrid) {
    InequalityRow row{n};
    try {
      row.kappa = kappa_of_n(n, branch);
      if (auto exact = exact_kappa(n, branch)) {
        const ExactExponentSet e = exponent_set_exact(*exact);
        row.difference = static_cast<double>(e.gamma1 - e.gamma11);
        row.pass = e.gamma1 - e.gamma11 >= 1;
        row.extrapolation = e.extrapolation;
      } else {
        const ExponentSet e = exponent_set(row.kappa);
        row.difference = e.gamma1 - e.gamma11;
        // omega >= 0 is the same statement without cancellation near n = -2.
        row.pass = e.omega >= 0.0;
        row.extrapolation = e.extrapolation;
      }
    } catch (const DivergenceError&) {
      row.divergent = true;
    } catch (const std::invalid_argument&) {
      row.divergent = true;
    }
    rows.push_back(row);
  }
  return rows;
}

double coeff_asymptotics(double eta, double j) {
  if (eta <= 0.0 && eta == std::floor(eta)) {
    throw PoleError("eta must not be a non-positive integer");
  }
  return std::pow(j, eta - 1.0) / std::tgamma(eta);
}

Rational exact_coeff_rational(const Rational& eta, long j) {
  if (j < 0) throw std::invalid_argument("j must be non-negative");
  Rational c = 1;
  for (long k = 1; k <= j; ++k) c = c * (Rational(k - 1) + eta) / k;
  return c;
}

std::vector<mp::mpfr_float> exact_coeff_series(const Rational& eta, long jMax, unsigned digits) {
  if (jMax < 0) throw std::invalid_argument("j must be non-negative");
  const unsigned saved = mp::mpfr_float::default_precision();
  mp::mpfr_float::default_precision(digits);
  std::vector<mp::mpfr_float> out;
  out.reserve(static_cast<std::size_t>(jMax) + 1);
  const mp::mpfr_float e =
      mp::mpfr_float(mp::numerator(eta).str()) / mp::mpfr_float(mp::denominator(eta).str());
  mp::mpfr_float c = 1;
  out.push_back(c);
  for (long k = 1; k <= jMax; ++k) {
    c = c * (e + (k - 1)) / k;
    out.push_back(c);
  }
  mp::mpfr_float::default_precision(saved);
  return out;
}

mp::mpfr_float exact_coeff(const Rational& eta, long j, unsigned digits) {
  return exact_coeff_series(eta, j, digits).back();
}

namespace {

// Decimal digits only; cpp_int would read a leading zero as octal.
mp::cpp_int parse_integer(std::string s) {
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("not a number");
  }
  const auto first = s.find_first_not_of('0');
  mp::cpp_int v(first == std::string::npos ? std::string("0") : s.substr(first));
  return negative ? mp::cpp_int(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& s) {
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      const mp::cpp_int num = parse_integer(s.substr(0, slash));
      const mp::cpp_int den = parse_integer(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      const std::string fraction = s.substr(dot + 1);
      if (fraction.find_first_of("+-") != std::string::npos) throw std::invalid_argument(s);
      const mp::cpp_int scale = mp::pow(mp::cpp_int(10), static_cast<unsigned>(fraction.size()));
      return Rational(parse_integer(s.substr(0, dot) + fraction), scale);
    }
    return Rational(parse_integer(s));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: '" + s + "'");
  }
}

std::string to_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

nlohmann::json to_json(const ExponentSet& e) {
  return {{"kappa", e.kappa},     {"alphaOverPi", e.alphaOverPi},
          {"nu", e.nu},           {"sigma", e.sigma},
          {"sigmaTilde", e.sigmaTilde},
          {"gamma", e.gamma},     {"gamma1", e.gamma1},
          {"gamma11", e.gamma11}, {"gamma2", e.gamma2},
          {"gamma21", e.gamma21}, {"omega", e.omega},
          {"y0", e.y0},           {"y1", e.y1},
          {"y2", e.y2},           {"extrapolation", e.extrapolation}};
}

nlohmann::json to_json(const ExactExponentSet& e) {
  auto cell = [](const Rational& r) {
    return nlohmann::json{{"exact", to_string(r)}, {"value", static_cast<double>(r)}};
  };
  return {{"kappa", cell(e.kappa)},     {"alphaOverPi", cell(e.alphaOverPi)},
          {"nu", cell(e.nu)},           {"sigma", cell(e.sigma)},
          {"sigmaTilde", cell(e.sigmaTilde)},
          {"gamma", cell(e.gamma)},     {"gamma1", cell(e.gamma1)},
          {"gamma11", cell(e.gamma11)}, {"gamma2", cell(e.gamma2)},
          {"gamma21", cell(e.gamma21)}, {"omega", cell(e.omega)},
          {"y0", cell(e.y0)},           {"y1", cell(e.y1)},
          {"y2", cell(e.y2)},           {"extrapolation", e.extrapolation}};
}

}  // namespace parafermion
