#include "parafermion/observable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

namespace parafermion {

std::string to_string(Branch b) { return b == Branch::Dense ? "dense" : "dilute"; }

Branch parse_branch(const std::string& s) {
  if (s == "dense") return Branch::Dense;
  if (s == "dilute") return Branch::Dilute;
  throw std::invalid_argument("branch must be 'dense' or 'dilute', got '" + s + "'");
}

template <class Real>
Real ParametersT<Real>::xc() const {
  if (xc_infinite()) return std::numeric_limits<Real>::infinity();
  return Real(1) / xcInverse;
}

template <class Real>
ParametersT<Real> make_parameters_t(const Real& n, Branch branch) {
  using std::abs;
  using std::acos;
  using std::cos;
  if (!(n >= -2 && n <= 2)) throw std::invalid_argument("n must lie in [-2, 2]");
  const Real pi = boost::math::constants::pi<Real>();
  ParametersT<Real> p;
  p.n = n;
  p.branch = branch;
  p.phi = acos(n / 2);
  if (branch == Branch::Dense) {
    p.sigma = (pi - 3 * p.phi) / (4 * pi);
    p.xcInverse = 2 * cos((pi + p.phi) / 4);
  } else {
    p.sigma = (pi + 3 * p.phi) / (4 * pi);
    p.xcInverse = 2 * cos((pi - p.phi) / 4);
  }
  p.sigmaTilde = 1 - p.sigma;
  // cos(pi/2) is not exactly zero in floating point.
  if (abs(p.xcInverse) < Real(8) * std::numeric_limits<Real>::epsilon()) p.xcInverse = 0;
  return p;
}

ParameterPoint make_parameters(double n, Branch branch) { return make_parameters_t<double>(n, branch); }

std::complex<double> turn_phase(const ParameterPoint& p) {
  return std::polar(1.0, -p.sigma * boost::math::constants::pi<double>() / 3.0);
}

std::complex<double> cube_root_of_unity() {
  return std::polar(1.0, 2.0 * boost::math::constants::pi<double>() / 3.0);
}

std::string Fugacity::label() const {
  std::ostringstream os;
  os.precision(17);
  if (criticalFraction == 0.0) {
    os << absolute;
  } else if (absolute == 0.0) {
    os << criticalFraction << "*x_c";
  } else {
    os << absolute << "+" << criticalFraction << "*x_c";
  }
  return os.str();
}

namespace {

template <class R>
struct Cx {
  R re = 0;
  R im = 0;

  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend Cx operator+(Cx a, const Cx& b) { return a += b; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator*(const R& s, const Cx& a) { return {s * a.re, s * a.im}; }
  R abs() const {
    using std::sqrt;
    return sqrt(re * re + im * im);
  }
  std::complex<double> to_std() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

template <class R>
Cx<R> unit(const R& angle) {
  using std::cos;
  using std::sin;
  return {cos(angle), sin(angle)};
}

template <class R>
R to_real(const BigInt& c) {
  if constexpr (std::is_same_v<R, double>) {
    return c.convert_to<double>();
  } else {
    return R(c.str());
  }
}

template <class R>
Cx<R> direction_vector(Direction d) {
  return unit<R>(boost::math::constants::pi<R>() * d.index() / 3);
}

template <class R>
struct Tables {
  std::vector<Cx<R>> F;
  std::vector<R> Fabs;
  std::vector<std::array<Cx<R>, 2>> restricted;
  std::vector<std::array<R, 2>> restrictedAbs;
  Cx<R> H, Gr, Gf, C, Ca;
  R Habs = 0, Grabs = 0, Gfabs = 0, Cabs = 0, Caabs = 0;
  R x = 0;
  R mass = 0;  // 1 - x/x_c
  // x_c infinite: F per mid-edge as polynomial coefficients in x.
  bool leadingOrder = false;
  std::vector<std::vector<Cx<R>>> Fpoly;
  std::vector<std::vector<R>> FabsPoly;
};

// Resolves a fugacity against the parameters; leading order when x = x_c
// is infinite.
template <class R>
void resolve(const ParametersT<R>& p, const Fugacity& f, Tables<R>& t) {
  if (f.criticalFraction != 0.0 && p.xc_infinite()) {
    if (f.absolute != 0.0 || f.criticalFraction != 1.0) {
      throw std::invalid_argument("x_c is infinite; only x = x_c (leading order) is defined");
    }
    t.leadingOrder = true;
    t.x = std::numeric_limits<R>::infinity();
    t.mass = 0;
    return;
  }
  t.x = R(f.absolute);
  if (f.criticalFraction != 0.0) t.x += R(f.criticalFraction) * p.xc();
  if (t.x < 0) throw std::invalid_argument("x must be non-negative");
  t.mass = 1 - t.x * p.xcInverse;
}

template <class R>
Tables<R> tabulate(const ObservableInput& in, const ParametersT<R>& p, const Fugacity& f) {
  using std::abs;
  using std::pow;
  const auto& d = in.domain;
  if (!in.census.domain_hash().empty() && in.census.domain_hash() != d.hash()) {
    throw std::invalid_argument("census was enumerated on a different domain");
  }
  Tables<R> t;
  resolve(p, f, t);
  const std::size_t M = d.mid_edge_count();
  const int V = static_cast<int>(d.vertex_count());
  t.F.assign(M, {});
  t.Fabs.assign(M, R(0));
  t.restricted.assign(M, {});
  t.restrictedAbs.assign(M, {R(0), R(0)});
  if (t.leadingOrder) {
    t.Fpoly.assign(M, std::vector<Cx<R>>(V + 1));
    t.FabsPoly.assign(M, std::vector<R>(V + 1, R(0)));
  }

  std::vector<R> xpow(V + 1, R(0));
  for (int l = 0; l <= V; ++l) {
    if (t.leadingOrder) {
      xpow[l] = R(1);
    } else {
      xpow[l] = pow(t.x, l);
    }
  }
  int maxLoops = 0;
  int maxWinding = 0;
  for (const auto& [k, c] : in.census.entries()) {
    maxLoops = std::max(maxLoops, k.loops);
    maxWinding = std::max(maxWinding, std::abs(k.winding));
  }
  for (const auto& [k, c] : in.loops.entries()) maxLoops = std::max(maxLoops, k.second);
  std::vector<R> npow(maxLoops + 1);
  for (int c = 0; c <= maxLoops; ++c) npow[c] = c == 0 ? R(1) : pow(p.n, c);
  const R third = boost::math::constants::pi<R>() / 3;
  std::vector<Cx<R>> spin(2 * maxWinding + 1), conjugate(2 * maxWinding + 1);
  for (int w = -maxWinding; w <= maxWinding; ++w) {
    spin[w + maxWinding] = unit<R>(-p.sigma * third * w);
    conjugate[w + maxWinding] = unit<R>(p.sigmaTilde * third * w);
  }

  for (const auto& [k, c] : in.census.entries()) {
    const R weight = to_real<R>(c) * xpow[k.length] * npow[k.loops];
    if (weight == 0) continue;
    const R mag = abs(weight);
    const Cx<R> term = weight * spin[k.winding + maxWinding];
    const Cx<R> surface = weight * conjugate[k.winding + maxWinding];
    t.F[k.endMidEdge] += term;
    t.Fabs[k.endMidEdge] += mag;
    if (t.leadingOrder) {
      t.Fpoly[k.endMidEdge][k.length] += term;
      t.FabsPoly[k.endMidEdge][k.length] += mag;
    }
    if (k.is_exit()) {
      t.H += surface;
      t.Habs += mag;
      continue;
    }
    t.Gf += surface;
    t.Gfabs += mag;
    if (k.forward_free()) {
      const int slot = d.vertex_slot(k.endMidEdge, k.forwardVertex);
      t.restricted[k.endMidEdge][slot] += term;
      t.restrictedAbs[k.endMidEdge][slot] += mag;
      t.Gr += surface;
      t.Grabs += mag;
    }
  }

  const MidEdgeId a = d.start_mid_edge();
  for (const auto& [k, c] : in.loops.entries()) {
    const R weight = to_real<R>(c) * xpow[k.first] * npow[k.second];
    t.F[a] += Cx<R>{weight, R(0)};
    t.Fabs[a] += abs(weight);
    if (t.leadingOrder) {
      t.Fpoly[a][k.first] += Cx<R>{weight, R(0)};
      t.FabsPoly[a][k.first] += abs(weight);
    }
    t.C += Cx<R>{weight, R(0)};
    t.Cabs += abs(weight);
  }
  const int slot = d.vertex_slot(a, d.start_vertex());
  for (const auto& [k, c] : in.loopsAvoidStart.entries()) {
    const R weight = to_real<R>(c) * xpow[k.first] * npow[k.second];
    t.restricted[a][slot] += Cx<R>{weight, R(0)};
    t.restrictedAbs[a][slot] += abs(weight);
    t.Ca += Cx<R>{weight, R(0)};
    t.Caabs += abs(weight);
  }
  return t;
}

template <class R>
IdentityReport vertex_identity(const ObservableInput& in, const ParametersT<R>& p,
                               const Fugacity& f, bool withMass, const std::string& name) {
  using std::abs;
  const Tables<R> t = tabulate(in, p, f);
  const auto& d = in.domain;
  IdentityReport r;
  r.identity = name;
  r.params = make_parameters(static_cast<double>(p.n), p.branch);
  r.x = static_cast<double>(t.x);
  r.leadingOrder = t.leadingOrder;
  R totalScale = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(d.vertex_count()); ++v) {
    Cx<R> lhs, rhs;
    R scale = 0, rhsScale = 0;
    if (t.leadingOrder) {
      // Top-degree coefficient of sum (p-v)F(p) among the terms around v.
      int top = -1;
      for (MidEdgeId z : d.vertex(v).midEdges) {
        for (int l = static_cast<int>(t.FabsPoly[z].size()) - 1; l > top; --l) {
          if (t.FabsPoly[z][l] != 0) {
            top = l;
            break;
          }
        }
      }
      if (top >= 0) {
        for (MidEdgeId z : d.vertex(v).midEdges) {
          const Cx<R> offset = direction_vector<R>(d.heading_towards(z, v).opposite());
          lhs += offset * t.Fpoly[z][top];
          scale += t.FabsPoly[z][top];
        }
      }
    }
    for (MidEdgeId z : d.vertex(v).midEdges) {
      if (t.leadingOrder) break;
      const Cx<R> offset = direction_vector<R>(d.heading_towards(z, v).opposite());
      lhs += offset * t.F[z];
      scale += t.Fabs[z];
      const int slot = d.vertex_slot(z, v);
      rhs += offset * t.restricted[z][slot];
      rhsScale += t.restrictedAbs[z][slot];
    }
    Cx<R> diff = lhs;
    if (withMass) {
      diff = lhs - t.mass * rhs;
      scale += abs(t.mass) * rhsScale;
    }
    const R residual = diff.abs();
    VertexResidual vr{v, static_cast<double>(residual), static_cast<double>(scale), 0.0};
    if (scale > 0) vr.relative = static_cast<double>(residual / scale);
    r.perVertex.push_back(vr);
    r.maxResidual = std::max(r.maxResidual, vr.residual);
    r.maxRelative = std::max(r.maxRelative, vr.relative);
    totalScale += scale;
  }
  r.scale = static_cast<double>(totalScale);
  return r;
}

template <class R>
GlobalIdentityResult global_identity(const ObservableInput& in, const ParametersT<R>& p,
                                     const Fugacity& f) {
  using std::abs;
  if (f.criticalFraction != 0.0 && p.xc_infinite()) {
    throw std::invalid_argument("x_c is infinite; the global identity needs a finite x");
  }
  const Tables<R> t = tabulate(in, p, f);
  GlobalIdentityResult g;
  g.x = static_cast<double>(t.x);
  g.H = t.H.to_std();
  g.restrictedG = t.Gr.to_std();
  g.fullG = t.Gf.to_std();
  g.C = t.C.to_std();
  g.CAvoid = t.Ca.to_std();
  const Cx<R> exact = t.H + t.mass * (t.Gr + t.Ca) - t.C;
  const Cx<R> literal = t.H + t.mass * t.Gf - t.C;
  const R scale = t.Habs + abs(t.mass) * (t.Gfabs + t.Caabs) + t.Cabs;
  g.exactResidual = static_cast<double>(exact.abs());
  g.literalResidual = static_cast<double>(literal.abs());
  g.scale = static_cast<double>(scale);
  if (scale > 0) {
    g.exactRelative = static_cast<double>(exact.abs() / scale);
    g.literalRelative = static_cast<double>(literal.abs() / scale);
  }
  return g;
}

class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(HighReal::default_precision()) {
    HighReal::default_precision(digits);
  }
  ~PrecisionScope() { HighReal::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

template <class F>
auto dispatch(const ParameterPoint& params, const Precision& precision, F&& body) {
  if (!precision.high) return body(params);
  PrecisionScope scope(precision.digits);
  return body(make_parameters_t<HighReal>(HighReal(params.n), params.branch));
}

}  // namespace

template struct ParametersT<double>;
template struct ParametersT<HighReal>;
template ParametersT<double> make_parameters_t(const double&, Branch);
template ParametersT<HighReal> make_parameters_t(const HighReal&, Branch);

ObservableValues evaluate_observable(const ObservableInput& in, const ParameterPoint& params,
                                     double x) {
  const Tables<double> t = tabulate(in, params, Fugacity::at(x));
  ObservableValues out;
  out.F.reserve(t.F.size());
  out.restricted.reserve(t.F.size());
  for (std::size_t z = 0; z < t.F.size(); ++z) {
    out.F.push_back(t.F[z].to_std());
    out.restricted.push_back({t.restricted[z][0].to_std(), t.restricted[z][1].to_std()});
  }
  return out;
}

std::complex<double> eval_F(const ObservableInput& in, MidEdgeId z, const ParameterPoint& params,
                            double x) {
  if (z < 0 || z >= static_cast<MidEdgeId>(in.domain.mid_edge_count())) {
    throw std::invalid_argument("mid-edge is not in the domain");
  }
  return evaluate_observable(in, params, x).F[z];
}

std::complex<double> eval_Fbar(const ObservableInput& in, VertexId v,
                               const ParameterPoint& params, double x) {
  if (v < 0 || v >= static_cast<VertexId>(in.domain.vertex_count())) {
    throw std::invalid_argument("vertex is not in the domain");
  }
  const ObservableValues values = evaluate_observable(in, params, x);
  std::complex<double> sum = 0.0;
  for (MidEdgeId z : in.domain.vertex(v).midEdges) {
    sum += in.domain.offset(z, v) * values.restricted[z][in.domain.vertex_slot(z, v)];
  }
  return sum;
}

IdentityReport check_local_identity(const ObservableInput& in, const ParameterPoint& params,
                                    const Precision& precision) {
  return local_identity_residuals(in, params, Fugacity::critical(), precision);
}

IdentityReport local_identity_residuals(const ObservableInput& in, const ParameterPoint& params,
                                        const Fugacity& x, const Precision& precision) {
  return dispatch(params, precision, [&](const auto& p) {
    return vertex_identity(in, p, x, false, "local");
  });
}

IdentityReport check_massive_identity(const ObservableInput& in, const ParameterPoint& params,
                                      const Fugacity& x, const Precision& precision) {
  return dispatch(params, precision, [&](const auto& p) {
    return vertex_identity(in, p, x, true, "massive");
  });
}

GlobalIdentityResult check_global_identity(const ObservableInput& in,
                                           const ParameterPoint& params, const Fugacity& x,
                                           const Precision& precision) {
  return dispatch(params, precision, [&](const auto& p) { return global_identity(in, p, x); });
}

namespace {

nlohmann::json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

nlohmann::json complex_json(std::complex<double> z) { return {z.real(), z.imag()}; }

}  // namespace

nlohmann::json to_json(const ParameterPoint& p) {
  return {{"n", p.n},
          {"branch", to_string(p.branch)},
          {"phi", p.phi},
          {"sigma", p.sigma},
          {"sigmaTilde", p.sigmaTilde},
          {"xc", finite_or_string(p.xc())}};
}

nlohmann::json to_json(const IdentityReport& r) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& v : r.perVertex) {
    per.push_back({{"vertex", v.vertex},
                   {"residual", v.residual},
                   {"scale", v.scale},
                   {"relative", v.relative}});
  }
  return {{"identity", r.identity},
          {"params", to_json(r.params)},
          {"x", finite_or_string(r.x)},
          {"leadingOrder", r.leadingOrder},
          {"perVertex", per},
          {"maxResidual", r.maxResidual},
          {"scale", r.scale},
          {"maxRelative", r.maxRelative}};
}

nlohmann::json to_json(const GlobalIdentityResult& g) {
  return {{"x", finite_or_string(g.x)},
          {"H", complex_json(g.H)},
          {"G_restricted", complex_json(g.restrictedG)},
          {"G_full", complex_json(g.fullG)},
          {"C", complex_json(g.C)},
          {"C_avoid", complex_json(g.CAvoid)},
          {"exactResidual", g.exactResidual},
          {"literalResidual", g.literalResidual},
          {"scale", g.scale},
          {"exactRelative", g.exactRelative},
          {"literalRelative", g.literalRelative}};
}

}  // namespace parafermion
