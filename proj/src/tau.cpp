#include "torsionkit/tau.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace torsionkit {

bool TauJacobiDefects::holds(double tol) const {
  return relative(derivation) <= tol && relative(commutator) <= tol && relative(four_form) <= tol;
}

bool TauJacobiDefects::consistent(double tol) const {
  const bool a = relative(derivation) <= tol;
  return a == (relative(commutator) <= tol) && a == (relative(four_form) <= tol);
}

TauJacobiDefects tau_jacobi_defects(const KForm& tau) {
  if (tau.degree() != 3) fail(ErrorCode::kDegree, "tau-Jacobi needs a 3-form");
  const int n = tau.dim();
  TauJacobiDefects d;
  d.norm_sq = tau.dot(tau);
  std::vector<SkewEndo> slices;
  for (int i = 0; i < n; ++i) slices.push_back(threeform_slice(tau, Vector::Unit(n, i)));
  for (int i = 0; i < n; ++i) {
    d.derivation = std::max(d.derivation, derivation_action(slices[static_cast<std::size_t>(i)], tau).norm());
    for (int j = i + 1; j < n; ++j) {
      const auto& ti = slices[static_cast<std::size_t>(i)];
      const Matrix lhs = commutator(ti, slices[static_cast<std::size_t>(j)]).matrix();
      const Matrix rhs = threeform_slice(tau, ti.apply(Vector::Unit(n, j))).matrix();
      // 2-form norm of a skew matrix is its Frobenius norm / sqrt(2)
      d.commutator = std::max(d.commutator, (lhs - rhs).norm() / std::sqrt(2.0));
    }
  }
  d.four_form = four_form_sum(tau).norm();
  return d;
}

double tau_jacobi_defect(const KForm& tau) { return tau_jacobi_defects(tau).derivation; }

MetricLieAlgebra algebra_of(const KForm& tau) {
  if (tau.degree() != 3) fail(ErrorCode::kDegree, "expected a 3-form");
  const int n = tau.dim();
  std::vector<double> c(static_cast<std::size_t>(n) * n * n, 0.0);
  auto at = [&](int i, int j, int k) -> double& { return c[(static_cast<std::size_t>(i) * n + j) * n + k]; };
  for (const auto& [blade, v] : tau.terms()) {
    const auto idx = indices_of(blade);
    const int i = idx[0], j = idx[1], k = idx[2];
    at(i, j, k) = v;
    at(j, k, i) = v;
    at(k, i, j) = v;
    at(j, i, k) = -v;
    at(i, k, j) = -v;
    at(k, j, i) = -v;
  }
  return MetricLieAlgebra(n, std::move(c));
}

namespace {

std::string format_defect(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require_jacobi(const TauJacobiDefects& d, double tol) {
  if (!d.holds(tol))
    fail(ErrorCode::kNotLieStructure,
         "tau-Jacobi condition fails: relative defect " + format_defect(d.relative(d.derivation)));
}

}  // namespace

TauLieAlgebra lie_from_tau(const KForm& tau, double tol) {
  require_jacobi(tau_jacobi_defects(tau), tol);
  const Matrix q = orthogonal_complement(kernel_of_threeform(tau));
  return {q, algebra_of(pullback(tau, q))};
}

namespace {

double brick_scale(const KForm& restricted, const MetricLieAlgebra& algebra) {
  const Matrix b = killing_form(algebra);
  const double kappa = -b.trace() / algebra.dim();
  double top = 0, sign = 1;
  for (const auto& [blade, v] : restricted.terms())
    if (std::abs(v) > top * (1.0 + 1e-9)) {
      top = std::abs(v);
      sign = v < 0 ? -1.0 : 1.0;
    }
  return sign * std::sqrt(std::max(kappa, 0.0) / 2.0);
}

}  // namespace

BrickReport classify_bricks(const KForm& tau, Rng& rng, double tol) {
  BrickReport r;
  r.defects = tau_jacobi_defects(tau);
  require_jacobi(r.defects, tol);
  r.kernel = kernel_of_threeform(tau);
  r.kernel_dim = static_cast<int>(r.kernel.cols());
  const Matrix q = orthogonal_complement(r.kernel);
  if (q.cols() == 0) return r;

  const MetricLieAlgebra algebra = algebra_of(pullback(tau, q));
  const IdealDecomposition ideals = simple_ideal_decomposition(algebra, rng);
  if (ideals.center.cols() != 0)
    fail(ErrorCode::kInternalConsistency, "tau has a kernel direction missed by the rank cutoff");

  KForm reassembled(tau.space(), 3);
  for (const Matrix& ideal : ideals.ideals) {
    Brick b;
    b.basis = canonical_basis(q * ideal);
    b.dim = static_cast<int>(b.basis.cols());
    const KForm restricted = pullback(tau, b.basis);
    const MetricLieAlgebra sub = algebra_of(restricted);
    b.type = identify_type(sub, rng);
    b.rank = b.type.rank;
    b.scale = brick_scale(restricted, sub);
    b.case_tag = b.dim == 3 ? "dim3-volume" : "simple-algebra";
    reassembled += push_forward(restricted, b.basis);
    r.bricks.push_back(std::move(b));
  }
  const double norm = std::sqrt(r.defects.norm_sq);
  r.cross_terms = (tau - reassembled).norm() / norm;
  if (r.cross_terms > tol)
    fail(ErrorCode::kInternalConsistency, "tau has cross terms between bricks; rerun with a tighter rank cutoff");
  return r;
}

namespace {

Vector dense_two_form(const Matrix& m) { return endo_to_two_form(SkewEndo(m)).to_dense(); }

}  // namespace

LemmaResult alglemma_check(const std::vector<SkewEndo>& rho, const KForm& tau, double tol) {
  LemmaResult out;
  const int n = tau.dim();
  const double tnorm = tau.norm();
  for (const auto& g : rho) {
    if (g.dim() != n) fail(ErrorCode::kDimensionMismatch, "representation matrices have wrong size");
    const double gnorm = g.matrix().norm();
    if (derivation_action(g, tau).norm() > tol * std::max(gnorm * tnorm, 1e-300)) {
      out.diagnostics.emplace_back("invariance-failed");
      break;
    }
  }
  if (kernel_of_threeform(tau).cols() != 0) out.diagnostics.emplace_back("kernel-nontrivial");
  if (!tau_jacobi_defects(tau).holds(tol)) out.diagnostics.emplace_back("jacobi-failed");
  out.preconditions_hold = out.diagnostics.empty();
  if (!out.preconditions_hold) return out;

  const Matrix span = orthonormalize(slice_matrix(tau));
  for (const auto& g : rho) {
    const Vector v = dense_two_form(g.matrix());
    const double vn = v.norm();
    if (vn == 0.0) continue;
    out.margin = std::max(out.margin, (v - span * (span.transpose() * v)).norm() / vn);
  }
  out.holds = out.margin <= tol;
  return out;
}

int full_commutant_dimension(const std::vector<Matrix>& gens, int n) {
  if (n == 0) return 0;
  const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  Matrix normal = Matrix::Zero(n2, n2);
  const Matrix id = Matrix::Identity(n, n);
  for (const auto& a : gens) {
    // vec(M A - A M) = (A^T kron I - I kron A) vec(M), column-major vec
    Matrix k(n2, n2);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) k.block(r * n, s * n, n, n) = a(s, r) * id - (r == s ? a : Matrix::Zero(n, n));
    normal.noalias() += k.transpose() * k;
  }
  if (normal.cwiseAbs().maxCoeff() == 0.0) return static_cast<int>(n2);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(normal);
  const double top = eig.eigenvalues().maxCoeff();
  int count = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
    if (eig.eigenvalues()(i) <= 1e-10 * top) ++count;
  return count;
}

LemmaResult lemmalg_check(const std::vector<Matrix>& rho1, const std::vector<Matrix>& rho2, const KForm& tau,
                          double tol) {
  LemmaResult out;
  if (rho1.size() != rho2.size()) fail(ErrorCode::kDimensionMismatch, "rho1 and rho2 need the same generators");
  const int n = tau.dim();
  const int n1 = rho1.empty() ? 0 : static_cast<int>(rho1.front().rows());
  const int n2 = n - n1;
  if (n2 < 0) fail(ErrorCode::kDimensionMismatch, "V1 is larger than the space of tau");
  for (std::size_t a = 0; a < rho1.size(); ++a)
    if (rho1[a].rows() != n1 || rho1[a].cols() != n1 || rho2[a].rows() != n2 || rho2[a].cols() != n2)
      fail(ErrorCode::kDimensionMismatch, "representation matrices have inconsistent sizes");

  // V2 = {0}: nothing to check
  if (n2 == 0) {
    out.preconditions_hold = true;
    out.holds = true;
    return out;
  }

  out.commutant_dim = full_commutant_dimension(rho1, n1);
  if (out.commutant_dim == 2 || out.commutant_dim == 4) {
    out.irreducibility_warning = true;
  } else if (out.commutant_dim != 1) {
    out.diagnostics.emplace_back("rho1-reducible");
  }

  // some A in the span of the generators with rho2(A) = 0 and rho1(A) != 0
  const Eigen::Index g = static_cast<Eigen::Index>(rho1.size());
  Matrix r2(static_cast<Eigen::Index>(n2) * n2, g), r1(static_cast<Eigen::Index>(n1) * n1, g);
  for (Eigen::Index a = 0; a < g; ++a) {
    r2.col(a) = Eigen::Map<const Vector>(rho2[static_cast<std::size_t>(a)].data(), r2.rows());
    r1.col(a) = Eigen::Map<const Vector>(rho1[static_cast<std::size_t>(a)].data(), r1.rows());
  }
  const Matrix ker2 = g == 0 ? Matrix(0, 0) : null_space(r2, kTolRank);
  const double r1scale = std::max(1e-300, r1.size() ? r1.cwiseAbs().maxCoeff() : 0.0);
  if (ker2.cols() == 0 || (r1 * ker2).cwiseAbs().maxCoeff() <= kTolRank * r1scale)
    out.diagnostics.emplace_back("no-separating-generator");

  const double tnorm = tau.norm();
  for (std::size_t a = 0; a < rho1.size(); ++a) {
    Matrix block = Matrix::Zero(n, n);
    block.topLeftCorner(n1, n1) = rho1[a];
    block.bottomRightCorner(n2, n2) = rho2[a];
    if (derivation_action(SkewEndo(block), tau).norm() > tol * std::max(block.norm() * tnorm, 1e-300)) {
      out.diagnostics.emplace_back("invariance-failed");
      break;
    }
  }
  out.preconditions_hold = out.diagnostics.empty();
  if (!out.preconditions_hold) return out;

  for (const auto& [blade, v] : tau.terms()) {
    const auto idx = indices_of(blade);
    // increasing indices: exactly one in V1, two in V2
    if (idx[0] < n1 && idx[1] >= n1) out.margin = std::max(out.margin, std::abs(v));
  }
  out.holds = out.margin <= tol * std::max(tnorm, 1e-300);
  return out;
}

}  // namespace torsionkit
