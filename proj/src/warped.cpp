#include "torsionkit/warped.hpp"

#include <algorithm>
#include <cmath>

namespace torsionkit {

FrameTensor koszul(const FrameTensor& c) {
  const int n = static_cast<int>(c.size());
  FrameTensor g(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  auto C = [&](int a, int b, int k) { return c[static_cast<std::size_t>(a)](k, b); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(a)](k, b) = 0.5 * (C(a, b, k) - C(b, k, a) + C(k, a, b));
  return g;
}

namespace {

double max_over(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

// A_* sigma for an arbitrary endomorphism: -sum_i (A^T e_i) ^ (e_i _| sigma);
// this agrees with derivation_action for skew A.
KForm general_derivation(const Matrix& a, const KForm& sigma) {
  const int n = sigma.dim();
  KForm out(sigma.space(), sigma.degree());
  for (int i = 0; i < n; ++i) {
    const KForm inner = contract(Vector::Unit(n, i), sigma);
    if (inner.is_zero()) continue;
    out -= wedge(KForm::one_form(a.row(i).transpose()), inner);
  }
  return out;
}

// d of a form with constant frame coefficients: sum_c d f^c ^ (f_c _| sigma),
// with d f^c = -sum_{a<b} C_ab^c f^a ^ f^b.
KForm frame_d(const FrameTensor& c, const KForm& sigma) {
  const int n = sigma.dim();
  const Space s(n);
  KForm out(s, sigma.degree() + 1);
  for (int k = 0; k < n; ++k) {
    const KForm inner = contract(Vector::Unit(n, k), sigma);
    if (inner.is_zero()) continue;
    KForm dfk(s, 2);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const double v = c[static_cast<std::size_t>(a)](k, b);
        if (v != 0.0) dfk.add(blade_of(std::vector<int>{a, b}), -v);
      }
    out += wedge(dfk, inner);
  }
  return out;
}

double max_skew_residual(const FrameTensor& g) {
  double worst = 0;
  for (const auto& m : g) worst = std::max(worst, (m + m.transpose()).cwiseAbs().maxCoeff());
  return worst;
}

// Structure functions of the frame h_a = e^t f_a:
// [h_a, h_b] = e^t (C_ab^c + f_a(t) delta_bc - f_b(t) delta_ac) h_c.
FrameTensor rescaled_structure(const FrameTensor& c, double t) {
  const int n = static_cast<int>(c.size());
  FrameTensor out = c;
  for (int a = 0; a < n; ++a) {
    Matrix& m = out[static_cast<std::size_t>(a)];
    for (int b = 0; b < n; ++b) {
      // f_a(t) = delta_a0
      if (a == 0) m(b, b) += 1.0;
      if (b == 0) m(a, b) -= 1.0;
    }
    m *= std::exp(t);
  }
  return out;
}

}  // namespace

BaseConnection base_connection(const MetricLieAlgebra& base, const KForm& tau) {
  const CompactType type = is_compact_type(base);
  if (type != CompactType::kCompactSemisimple && type != CompactType::kCompactWithCenter)
    fail(ErrorCode::kUnsupportedSignature, "warped models need a compact-type base, got " + to_string(type));
  if (tau.dim() != base.dim() || tau.degree() != 3) fail(ErrorCode::kDimensionMismatch, "tau must be a 3-form on the base");
  BaseConnection out;
  for (int i = 0; i < base.dim(); ++i) out.gamma.push_back(0.5 * base.ad_basis(i));
  // nabla_{E_i} tau = (Gamma_i)_* tau for constant coefficients
  for (const auto& g : out.gamma) out.parallel_residual = std::max(out.parallel_residual, derivation_action(SkewEndo(g), tau).norm());
  return out;
}

BaseConnection base_connection(const MetricLieAlgebra& base) { return base_connection(base, canonical_three_form(base)); }

std::vector<double> default_t_samples(int count) {
  if (count < 1) fail(ErrorCode::kOutOfRange, "need at least one t sample");
  std::vector<double> out;
  if (count == 1) return {0.0};
  for (int i = 0; i < count; ++i) out.push_back(-2.0 + 4.0 * i / (count - 1));
  return out;
}

KForm WarpedModel::nu() const {
  const int n = base.dim();
  const Matrix embed = Matrix::Identity(n + 1, n + 1).rightCols(n);
  return tau_scale * push_forward(canonical_three_form(base), embed);
}

WarpedModel make_warped_model(const MetricLieAlgebra& base, double tau_scale, std::vector<double> t_samples) {
  if (!std::isfinite(tau_scale)) fail(ErrorCode::kOutOfRange, "tau scale must be finite");
  if (base_connection(base).parallel_residual > kTolJacobi * std::max(1.0, base.max_abs_structure()))
    fail(ErrorCode::kInternalConsistency, "canonical form of the base is not parallel");
  if (!tau_jacobi_defects(canonical_three_form(base)).holds(kTolJacobi))
    fail(ErrorCode::kNotLieStructure, "canonical form fails tau-Jacobi");
  for (double t : t_samples)
    if (!std::isfinite(t)) fail(ErrorCode::kOutOfRange, "t samples must be finite");
  return WarpedModel{base, tau_scale, std::move(t_samples)};
}

FrameTensor warped_structure(const MetricLieAlgebra& base, double t) {
  const int n = base.dim() + 1;
  FrameTensor c(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  const double w = std::exp(-t);
  for (int i = 1; i < n; ++i) {
    c[0](i, i) = -1.0;  // [f_0, f_i] = -f_i
    c[static_cast<std::size_t>(i)](i, 0) = 1.0;
    const Matrix ad = base.ad_basis(i - 1);
    c[static_cast<std::size_t>(i)].bottomRightCorner(n - 1, n - 1) = w * ad;
  }
  return c;
}

FrameConnection warped_connection(const WarpedModel& model, double t) {
  const int n = model.dim();
  FrameConnection fc;
  fc.t = t;
  const FrameTensor c = warped_structure(model.base, t);
  fc.gamma = koszul(c);
  fc.metric_residual = max_skew_residual(fc.gamma);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Vector tor = fc.gamma[static_cast<std::size_t>(a)].col(b) - fc.gamma[static_cast<std::size_t>(b)].col(a) -
                         c[static_cast<std::size_t>(a)].col(b);
      fc.torsion_residual = std::max(fc.torsion_residual, tor.cwiseAbs().maxCoeff());
    }
  const Vector xi = Vector::Unit(n, 0);
  for (int a = 0; a < n; ++a) {
    const Vector fa = Vector::Unit(n, a);
    const Vector nabla_xi = fc.gamma[static_cast<std::size_t>(a)].col(0);
    fc.xi_formula_residual = std::max(fc.xi_formula_residual, (nabla_xi - (fa - fa(0) * xi)).norm());
    if (a == 0) {
      fc.normal_residual = nabla_xi.norm();
    } else {
      for (int j = 1; j < n; ++j)
        fc.second_fundamental = std::max(fc.second_fundamental, std::abs(nabla_xi(j) - (a == j ? 1.0 : 0.0)));
    }
  }
  return fc;
}

namespace {

ParallelSample parallel_at(const WarpedModel& model, const FrameConnection& fc, const KForm& nu) {
  const int n = model.dim();
  const Space s(n);
  const Vector xi = Vector::Unit(n, 0);
  ParallelSample out;
  out.t = fc.t;
  for (int a = 0; a < n; ++a) {
    const Vector fa = Vector::Unit(n, a);
    // nabla_X = nabla^g_X + X ^ xi + nu_X
    const Matrix omega = fc.gamma[static_cast<std::size_t>(a)] +
                         two_form_to_endo(wedge(KForm::one_form(fa), KForm::one_form(xi))).matrix() +
                         threeform_slice(nu, fa).matrix();
    out.nabla_xi = std::max(out.nabla_xi, (omega * xi).norm());
    out.nabla_nu = std::max(out.nabla_nu, derivation_action(SkewEndo(omega), nu).norm());
  }
  return out;
}

IdentitySample identities_at(const WarpedModel& model, double t, const KForm& nu) {
  const int n = model.dim();
  const Vector xi = Vector::Unit(n, 0);
  const KForm eta = KForm::one_form(xi);
  const FrameTensor c = warped_structure(model.base, t);
  IdentitySample out;
  out.t = t;
  const KForm nu_xi = contract(xi, nu);
  out.nu_xi = nu_xi.norm();
  out.d_xi = frame_d(c, eta).norm();
  out.four_form = four_form_sum(nu).norm();
  const KForm dnu = frame_d(c, nu);
  out.d_nu = (dnu - 3.0 * wedge(eta, nu)).norm();
  out.lie_cartan = (contract(xi, dnu) + frame_d(c, nu_xi) - 3.0 * nu).norm();
  // (L_xi nu)(f_b..) = -sum_r nu(.., [f_0, f_br], ..) for constant coefficients
  out.lie_direct = (general_derivation(c[0], nu) - 3.0 * nu).norm();
  return out;
}

ConformalSample conformal_at(const WarpedModel& model, const FrameConnection& fc) {
  const int n = model.dim();
  ConformalSample out;
  out.t = fc.t;
  // e^t xi = h_0 has constant coefficients in the frame h_a = e^t f_a
  const FrameTensor g = koszul(rescaled_structure(warped_structure(model.base, fc.t), fc.t));
  for (int a = 0; a < n; ++a) out.frame = std::max(out.frame, g[static_cast<std::size_t>(a)].col(0).norm());

  // nabla~_X Y = nabla_X Y - X(t) Y - Y(t) X + g(X, Y) xi with Y = e^t xi,
  // expressed in the frame f_a; X(e^t) = e^t eta(X).
  const double et = std::exp(fc.t);
  const Vector xi = Vector::Unit(n, 0);
  for (int a = 0; a < n; ++a) {
    const Vector x = Vector::Unit(n, a);
    const double xt = x(0);
    const Vector y = et * xi;
    const Vector nabla_y = xt * et * xi + et * fc.gamma[static_cast<std::size_t>(a)].col(0);
    const Vector r = nabla_y - xt * y - y(0) * x + x.dot(y) * xi;
    out.formula = std::max(out.formula, r.norm() / et);
  }
  return out;
}

}  // namespace

std::vector<ParallelSample> check_connection_parallel(const WarpedModel& model) {
  const KForm nu = model.nu();
  std::vector<ParallelSample> out;
  for (double t : model.t_samples) out.push_back(parallel_at(model, warped_connection(model, t), nu));
  return out;
}

std::vector<IdentitySample> check_identities(const WarpedModel& model) {
  const KForm nu = model.nu();
  std::vector<IdentitySample> out;
  for (double t : model.t_samples) out.push_back(identities_at(model, t, nu));
  return out;
}

std::vector<ConformalSample> check_conformal(const WarpedModel& model) {
  std::vector<ConformalSample> out;
  for (double t : model.t_samples) out.push_back(conformal_at(model, warped_connection(model, t)));
  return out;
}

WarpedReport verify_warped(const WarpedModel& model) {
  WarpedReport r;
  const KForm nu = model.nu();
  for (double t : model.t_samples) {
    const FrameConnection fc = warped_connection(model, t);
    r.parallel.push_back(parallel_at(model, fc, nu));
    r.identities.push_back(identities_at(model, t, nu));
    r.conformal.push_back(conformal_at(model, fc));
    r.connections.push_back(fc);
  }
  auto fold = [](const auto& v, auto member) {
    std::vector<double> vals;
    for (const auto& s : v) vals.push_back(s.*member);
    return max_over(vals);
  };
  r.max_metric = fold(r.connections, &FrameConnection::metric_residual);
  r.max_torsion = fold(r.connections, &FrameConnection::torsion_residual);
  r.max_xi_formula = fold(r.connections, &FrameConnection::xi_formula_residual);
  r.max_normal = fold(r.connections, &FrameConnection::normal_residual);
  r.max_second_fundamental = fold(r.connections, &FrameConnection::second_fundamental);
  r.max_nabla_xi = fold(r.parallel, &ParallelSample::nabla_xi);
  r.max_nabla_nu = fold(r.parallel, &ParallelSample::nabla_nu);
  r.max_nu_xi = fold(r.identities, &IdentitySample::nu_xi);
  r.max_d_xi = fold(r.identities, &IdentitySample::d_xi);
  r.max_four_form = fold(r.identities, &IdentitySample::four_form);
  r.max_d_nu = fold(r.identities, &IdentitySample::d_nu);
  r.max_lie_cartan = fold(r.identities, &IdentitySample::lie_cartan);
  r.max_lie_direct = fold(r.identities, &IdentitySample::lie_direct);
  r.max_conformal_frame = fold(r.conformal, &ConformalSample::frame);
  r.max_conformal_formula = fold(r.conformal, &ConformalSample::formula);
  return r;
}

}  // namespace torsionkit
