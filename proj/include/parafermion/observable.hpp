#pragma once

#include <complex>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>
#include <json.hpp>

#include "parafermion/branch.hpp"
#include "parafermion/census.hpp"
#include "parafermion/lattice.hpp"

namespace parafermion {

using HighReal = boost::multiprecision::mpfr_float;

// Critical parameters for n = 2 cos(phi), phi in [0, pi].
template <class Real>
struct ParametersT {
  Real n = 0;
  Real phi = 0;
  Branch branch = Branch::Dilute;
  Real sigma = 0;
  Real sigmaTilde = 0;
  // 1/x_c. Exactly zero on the dense branch at n = -2, where x_c is infinite.
  Real xcInverse = 0;

  bool xc_infinite() const { return xcInverse == 0; }
  Real xc() const;
};

using ParameterPoint = ParametersT<double>;

// Throws std::invalid_argument for |n| > 2.
template <class Real>
ParametersT<Real> make_parameters_t(const Real& n, Branch branch);

ParameterPoint make_parameters(double n, Branch branch);

// lambda = exp(-i sigma pi/3), the weight of one left turn.
std::complex<double> turn_phase(const ParameterPoint& p);
// j = exp(2 pi i / 3).
std::complex<double> cube_root_of_unity();

// x = absolute + criticalFraction * x_c.
struct Fugacity {
  double absolute = 0.0;
  double criticalFraction = 0.0;

  static Fugacity at(double x) { return {x, 0.0}; }
  static Fugacity critical(double fraction = 1.0) { return {0.0, fraction}; }
  std::string label() const;
};

struct Precision {
  bool high = false;
  unsigned digits = 50;
};

// Everything the observable is built from.
struct ObservableInput {
  const HoneycombDomain& domain;
  const TerminalCensus& census;
  const LoopCensus& loops;           // avoid = none
  const LoopCensus& loopsAvoidStart; // avoid = v_a
};

struct ObservableValues {
  std::vector<std::complex<double>> F;  // per mid-edge, zero-length term included at a
  // F(z; v) for each incident vertex slot of z: forward vertex v free.
  std::vector<std::array<std::complex<double>, 2>> restricted;
};

ObservableValues evaluate_observable(const ObservableInput& in, const ParameterPoint& params,
                                     double x);

// F(z). Throws std::invalid_argument when z is not a mid-edge of the domain.
std::complex<double> eval_F(const ObservableInput& in, MidEdgeId z, const ParameterPoint& params,
                            double x);

// (p-v)F(p;v) + (q-v)F(q;v) + (r-v)F(r;v).
std::complex<double> eval_Fbar(const ObservableInput& in, VertexId v,
                               const ParameterPoint& params, double x);

struct VertexResidual {
  VertexId vertex;
  double residual;
  double scale;     // sum of |term| over every contributing configuration
  double relative;  // residual / scale, 0 when both vanish
};

struct IdentityReport {
  std::string identity;  // "local" or "massive"
  ParameterPoint params;
  double x = 0;
  // At n = -2 on the dense branch x_c is infinite; the critical identity is
  // then checked, vertex by vertex, on the highest power of x appearing in
  // the terms around the vertex.
  bool leadingOrder = false;
  std::vector<VertexResidual> perVertex;
  double maxResidual = 0;
  double scale = 0;
  double maxRelative = 0;
};

// Per-vertex |(p-v)F(p) + (q-v)F(q) + (r-v)F(r)| at x = x_c.
IdentityReport check_local_identity(const ObservableInput& in, const ParameterPoint& params,
                                    const Precision& precision = {});

// Per-vertex residual of the local identity at arbitrary x, without the
// (1 - x/x_c) correction. Used to show the identity fails off criticality.
IdentityReport local_identity_residuals(const ObservableInput& in, const ParameterPoint& params,
                                        const Fugacity& x, const Precision& precision = {});

// Per-vertex |sum (p-v)F(p) - (1 - x/x_c) Fbar(v)|.
IdentityReport check_massive_identity(const ObservableInput& in, const ParameterPoint& params,
                                      const Fugacity& x, const Precision& precision = {});

struct GlobalIdentityResult {
  double x = 0;
  std::complex<double> H, restrictedG, fullG, C, CAvoid;
  // |H + (1-x/x_c)(G_restricted + C^a) - C|
  double exactResidual = 0;
  // |H + (1-x/x_c) G_full - C|
  double literalResidual = 0;
  double scale = 0;
  double exactRelative = 0;
  double literalRelative = 0;
};

GlobalIdentityResult check_global_identity(const ObservableInput& in,
                                           const ParameterPoint& params, const Fugacity& x,
                                           const Precision& precision = {});

nlohmann::json to_json(const ParameterPoint& p);
nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const GlobalIdentityResult& r);

}  // namespace parafermion
