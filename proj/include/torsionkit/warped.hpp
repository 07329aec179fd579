#pragma once

// Frame-level checks on M = N x R with g_M = e^{2t} g_N + dt^2, where N is a
// compact-type Lie group with bi-invariant metric.
//
// Adapted orthonormal frame: f_0 = d/dt, f_i = e^{-t} E_i with E_i invariant
// and orthonormal on N. Index 0 is xi; nu = e^{3t} tau has constant frame
// coefficients tau_scale * (canonical 3-form of N).

#include "torsionkit/tau.hpp"

#include <vector>

namespace torsionkit {

/// Per-direction matrices: m[a](c, b) is the f_c component of X(f_a, f_b).
using FrameTensor = std::vector<Matrix>;

/// Levi-Civita coefficients of an orthonormal frame from its structure
/// functions: Gamma_ab^c = (C_ab^c - C_bc^a + C_ca^b) / 2.
FrameTensor koszul(const FrameTensor& structure);

struct BaseConnection {
  FrameTensor gamma;               // Gamma_ij^k = c_ij^k / 2
  double parallel_residual = 0;    // max_i |nabla_{E_i} tau|
};

/// Throws kUnsupportedSignature for non-compact bases.
BaseConnection base_connection(const MetricLieAlgebra& base, const KForm& tau);
BaseConnection base_connection(const MetricLieAlgebra& base);

/// 50 uniform points in [-2, 2] by default.
std::vector<double> default_t_samples(int count = 50);

struct WarpedModel {
  MetricLieAlgebra base = MetricLieAlgebra::abelian(0);
  double tau_scale = 1.0;
  std::vector<double> t_samples;

  int dim() const { return base.dim() + 1; }
  /// nu in the adapted frame (constant in t).
  KForm nu() const;
};

/// Validates the base (compact type, canonical form passes tau-Jacobi).
WarpedModel make_warped_model(const MetricLieAlgebra& base, double tau_scale,
                              std::vector<double> t_samples = default_t_samples());

/// [f_a, f_b] at parameter t.
FrameTensor warped_structure(const MetricLieAlgebra& base, double t);

struct FrameConnection {
  double t = 0;
  FrameTensor gamma;
  double metric_residual = 0;       // Gamma_ab^c + Gamma_ac^b
  double torsion_residual = 0;      // Gamma_ab - Gamma_ba - C_ab
  double xi_formula_residual = 0;       // nabla_{f_a} xi - (f_a - eta(f_a) xi)
  double normal_residual = 0;       // nabla_{f_0} xi
  double second_fundamental = 0;    // <nabla_{f_i} xi, f_j> - delta_ij
};

FrameConnection warped_connection(const WarpedModel& model, double t);

struct ParallelSample {
  double t = 0;
  double nabla_xi = 0;
  double nabla_nu = 0;
};

struct IdentitySample {
  double t = 0;
  double nu_xi = 0;       // xi _| nu
  double d_xi = 0;        // d(eta)
  double four_form = 0;   // sum_a nu_a ^ nu_a
  double d_nu = 0;        // d nu - 3 xi ^ nu
  double lie_cartan = 0;  // xi _| d nu + d(xi _| nu) - 3 nu
  double lie_direct = 0;  // L_xi nu - 3 nu from the frame brackets
};

struct ConformalSample {
  double t = 0;
  double frame = 0;    // nabla~ (e^t xi) from the rescaled frame e^t f_a
  double formula = 0;  // the same via the conformal change formula
};

struct WarpedReport {
  std::vector<FrameConnection> connections;
  std::vector<ParallelSample> parallel;
  std::vector<IdentitySample> identities;
  std::vector<ConformalSample> conformal;

  // maxima over samples
  double max_metric = 0, max_torsion = 0, max_xi_formula = 0, max_normal = 0, max_second_fundamental = 0;
  double max_nabla_xi = 0, max_nabla_nu = 0;
  double max_nu_xi = 0, max_d_xi = 0, max_four_form = 0, max_d_nu = 0, max_lie_cartan = 0, max_lie_direct = 0;
  double max_conformal_frame = 0, max_conformal_formula = 0;
};

std::vector<ParallelSample> check_connection_parallel(const WarpedModel& model);
std::vector<IdentitySample> check_identities(const WarpedModel& model);
std::vector<ConformalSample> check_conformal(const WarpedModel& model);

WarpedReport verify_warped(const WarpedModel& model);

}  // namespace torsionkit
