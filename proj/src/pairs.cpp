#include "torsionkit/pairs.hpp"

#include <algorithm>
#include <cmath>

namespace torsionkit {

namespace {

void require_compact_simple(const MetricLieAlgebra& h) {
  if (h.dim() == 0 || is_compact_type(h) != CompactType::kCompactSemisimple || commutant_dimension(h) != 1)
    fail(ErrorCode::kPrecondition, "symmetric pair models need a compact simple algebra");
}

MetricLieAlgebra from_ad(int n, const std::vector<Matrix>& ads) {
  std::vector<double> c(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double v = 0.5 * (ads[static_cast<std::size_t>(i)](k, j) - ads[static_cast<std::size_t>(j)](k, i));
        c[(static_cast<std::size_t>(i) * n + j) * n + k] = v;
        c[(static_cast<std::size_t>(j) * n + i) * n + k] = -v;
      }
  return MetricLieAlgebra(n, std::move(c));
}

SymmetricPairModel finish(SymmetricPairModel p) {
  const int m = p.half_dim();
  p.h_basis = Matrix::Identity(2 * m, 2 * m).leftCols(m);
  p.m_basis = Matrix::Identity(2 * m, 2 * m).rightCols(m);
  p.h = p.g.restrict_to(p.h_basis);
  p.psi = Matrix::Identity(m, m);
  return p;
}

}  // namespace

std::vector<SkewEndo> SymmetricPairModel::isotropy() const {
  std::vector<SkewEndo> out;
  for (int a = 0; a < half_dim(); ++a) out.emplace_back(m_basis.transpose() * g.ad(h_basis.col(a)) * m_basis);
  return out;
}

MetricLieAlgebra complexification(const MetricLieAlgebra& h) {
  const int m = h.dim();
  std::vector<double> c(static_cast<std::size_t>(8) * m * m * m, 0.0);
  const int n = 2 * m;
  auto set = [&](int i, int j, int k, double v) {
    c[(static_cast<std::size_t>(i) * n + j) * n + k] = v;
    c[(static_cast<std::size_t>(j) * n + i) * n + k] = -v;
  };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int k = 0; k < m; ++k) {
        const double v = h.c(a, b, k);
        if (v == 0.0) continue;
        if (a < b) {
          set(a, b, k, v);              // [A, A'] in the real part
          set(m + a, m + b, k, -v);     // -[B, B']
        }
        set(a, m + b, m + k, v);        // [A, B'] in the imaginary part
      }
  return MetricLieAlgebra(n, std::move(c));
}

SymmetricPairModel build_type_II(const MetricLieAlgebra& h) {
  require_compact_simple(h);
  const int m = h.dim();
  // adapted basis (e_a, e_a)/sqrt2 and (e_a, -e_a)/sqrt2
  Matrix q(2 * m, 2 * m);
  const Matrix id = Matrix::Identity(m, m) / std::sqrt(2.0);
  q << id, id, id, -id;
  SymmetricPairModel p;
  p.kind = "type-II";
  p.base = h;
  p.g = direct_sum(h, h).restrict_to(q);
  p.epsilon = -1;
  p = finish(std::move(p));
  // psi(X) = (X, -X) = sqrt2 * (X, -X)/sqrt2
  p.psi_scale = std::sqrt(2.0);
  return p;
}

SymmetricPairModel build_type_IV(const MetricLieAlgebra& h) {
  require_compact_simple(h);
  SymmetricPairModel p;
  p.kind = "type-IV";
  p.base = h;
  p.g = complexification(h);
  p.epsilon = 1;
  return finish(std::move(p));
}

double PairResiduals::max() const {
  return std::max({hh_in_h, mm_in_h, hm_in_m, epsilon_identity, orthogonality, killing_hm});
}

PairResiduals pair_residuals(const SymmetricPairModel& p) {
  PairResiduals r;
  const int m = p.half_dim();
  const Matrix& hb = p.h_basis;
  const Matrix& mb = p.m_basis;
  const Matrix proj_h = hb * hb.transpose();
  const Matrix proj_m = mb * mb.transpose();
  for (int a = 0; a < m; ++a) {
    const Matrix ad_a = p.g.ad(hb.col(a));
    const Matrix ad_x = p.g.ad(mb.col(a));
    r.hh_in_h = std::max(r.hh_in_h, (proj_m * ad_a * hb).cwiseAbs().maxCoeff());
    r.hm_in_m = std::max(r.hm_in_m, (proj_h * ad_a * mb).cwiseAbs().maxCoeff());
    r.mm_in_h = std::max(r.mm_in_h, (proj_m * ad_x * mb).cwiseAbs().maxCoeff());
  }
  for (int x = 0; x < m; ++x) {
    const Matrix ad_x = p.g.ad(mb.col(x));
    for (int y = 0; y < m; ++y)
      for (int a = 0; a < m; ++a) {
        const double lhs = (ad_x * mb.col(y)).dot(hb.col(a));
        const double rhs = mb.col(y).dot(ad_x * hb.col(a));
        r.epsilon_identity = std::max(r.epsilon_identity, std::abs(lhs - p.epsilon * rhs));
      }
  }
  r.orthogonality = (hb.transpose() * mb).cwiseAbs().maxCoeff();
  r.killing_hm = (hb.transpose() * killing_form(p.g) * mb).cwiseAbs().maxCoeff();
  return r;
}

KForm example_tau(const SymmetricPairModel& p) {
  const Eigen::FullPivLU<Matrix> lu(p.psi);
  if (!lu.isInvertible()) fail(ErrorCode::kPrecondition, "psi is singular");
  return pullback(canonical_three_form(p.h), lu.inverse());
}

SymmetricTriple extract_triple(const SymmetricPairModel& p) {
  return {p.h, p.isotropy(), example_tau(p), p.epsilon};
}

TripleResiduals triple_residuals(const SymmetricTriple& t) {
  TripleResiduals r;
  const int m = t.h.dim();
  if (static_cast<int>(t.lambda.size()) != m) fail(ErrorCode::kDimensionMismatch, "one lambda matrix per generator");
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      Matrix expected = Matrix::Zero(t.tau.dim(), t.tau.dim());
      for (int k = 0; k < m; ++k) expected += t.h.c(a, b, k) * t.lambda[static_cast<std::size_t>(k)].matrix();
      const Matrix got = commutator(t.lambda[static_cast<std::size_t>(a)], t.lambda[static_cast<std::size_t>(b)]).matrix();
      r.representation = std::max(r.representation, (got - expected).cwiseAbs().maxCoeff());
    }
    // [lambda(A), tau_X] - tau_{lambda(A) X} is the slice of -(lambda(A))_* tau
    r.invariance = std::max(r.invariance, derivation_action(t.lambda[static_cast<std::size_t>(a)], t.tau).max_abs());
  }
  return r;
}

MetricLieAlgebra triple_algebra(const SymmetricTriple& t) {
  const int m = t.h.dim();
  const int d = t.tau.dim();
  const int n = m + d;
  std::vector<Matrix> ads(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  for (int a = 0; a < m; ++a) {
    Matrix& ad = ads[static_cast<std::size_t>(a)];
    ad.topLeftCorner(m, m) = t.h.ad_basis(a);
    ad.bottomRightCorner(d, d) = t.lambda[static_cast<std::size_t>(a)].matrix();
  }
  for (int x = 0; x < d; ++x) {
    Matrix& ad = ads[static_cast<std::size_t>(m + x)];
    // [X, A] = -lambda(A) X
    for (int a = 0; a < m; ++a) ad.block(m, a, d, 1) = -t.lambda[static_cast<std::size_t>(a)].matrix().col(x);
    for (int y = 0; y < d; ++y)
      for (int c = 0; c < m; ++c) ad(c, m + y) = -t.epsilon * t.lambda[static_cast<std::size_t>(c)].matrix()(y, x);
  }
  return from_ad(n, ads);
}

namespace {

Vector two_form_vector(const Matrix& skew) { return endo_to_two_form(SkewEndo(skew)).to_dense(); }

}  // namespace

PhiRecovery recover_phi(const SymmetricTriple& t, double tol) {
  const int m = t.h.dim();
  const int d = t.tau.dim();
  if (static_cast<int>(t.lambda.size()) != m) fail(ErrorCode::kDimensionMismatch, "one lambda matrix per generator");
  const Matrix slices = slice_matrix(t.tau);
  if (numerical_rank(slices, kTolRank) != d) fail(ErrorCode::kPrecondition, "tau is not injective on m");
  const LemmaResult lemma = alglemma_check(t.lambda, t.tau, tol);
  if (!lemma.preconditions_hold || !lemma.holds)
    fail(ErrorCode::kPrecondition, "lemma hypothesis failed: lambda(h) is not contained in tau(m)");

  PhiRecovery r;
  const auto solver = slices.completeOrthogonalDecomposition();
  Matrix raw(d, m);
  double rhs_norm = 0;
  for (int a = 0; a < m; ++a) {
    const Vector rhs = two_form_vector(t.lambda[static_cast<std::size_t>(a)].matrix());
    raw.col(a) = solver.solve(rhs);
    r.solve_residual = std::max(r.solve_residual, (slices * raw.col(a) - rhs).norm());
    rhs_norm = std::max(rhs_norm, rhs.norm());
  }
  if (rhs_norm > 0) r.solve_residual /= rhs_norm;
  r.scale = raw.norm() / std::sqrt(static_cast<double>(m));
  if (r.scale == 0.0) fail(ErrorCode::kPrecondition, "lambda vanishes; phi is undetermined");
  r.phi = raw / r.scale;
  r.isometry_defect = (r.phi.transpose() * r.phi - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();

  const MetricLieAlgebra full = triple_algebra(t);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      // [phi(A), B] = -lambda(B) phi(A)
      const Vector lhs = -t.lambda[static_cast<std::size_t>(b)].apply(r.phi.col(a));
      Vector ab(m);
      for (int k = 0; k < m; ++k) ab(k) = t.h.c(a, b, k);
      r.id1_residual = std::max(r.id1_residual, (lhs - r.phi * ab).norm());

      Vector xa = Vector::Zero(m + d), xb = Vector::Zero(m + d);
      xa.tail(d) = r.phi.col(a);
      xb.tail(d) = r.phi.col(b);
      const Vector br = full.bracket(xa, xb);
      r.ident_residual = std::max(r.ident_residual, (br.head(m) + t.epsilon * ab).norm() + br.tail(d).norm());
    }
  return r;
}

PsiMap build_psi_maps(const SymmetricTriple& t, const Matrix& phi) {
  const int m = t.h.dim();
  const int d = t.tau.dim();
  if (phi.rows() != d || phi.cols() != m) fail(ErrorCode::kDimensionMismatch, "phi has wrong shape");
  if (d != m) fail(ErrorCode::kDimensionMismatch, "Psi maps need dim m = dim h");
  PsiMap out{t.epsilon < 0 ? direct_sum(t.h, t.h) : complexification(t.h), triple_algebra(t), Matrix::Zero(2 * m, 2 * m), 0};
  const Matrix id = Matrix::Identity(m, m);
  if (t.epsilon < 0) {
    // (A, B) -> ((A + B)/2, phi(A - B)/2)
    out.iso.topLeftCorner(m, m) = 0.5 * id;
    out.iso.topRightCorner(m, m) = 0.5 * id;
    out.iso.bottomLeftCorner(m, m) = 0.5 * phi;
    out.iso.bottomRightCorner(m, m) = -0.5 * phi;
  } else {
    // A + iB -> A + phi(B)
    out.iso.topLeftCorner(m, m) = id;
    out.iso.bottomRightCorner(m, m) = phi;
  }
  for (int u = 0; u < 2 * m; ++u)
    for (int v = u + 1; v < 2 * m; ++v) {
      const Vector lhs = out.iso * out.domain.ad_basis(u).col(v);
      const Vector rhs = out.target.bracket(out.iso.col(u), out.iso.col(v));
      out.defect = std::max(out.defect, (lhs - rhs).norm());
    }
  return out;
}

}  // namespace torsionkit
