#include "torsionkit/linalg.hpp"

#include <cmath>

namespace torsionkit {

namespace {

// JacobiSVD rather than BDCSVD: the divide-and-conquer variant leaves
// spurious O(1e-2) singular values on some exact projectors of size > 200.
Eigen::JacobiSVD<Matrix> full_svd(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a, Eigen::ComputeFullV);
}

}  // namespace

Matrix null_space(const Matrix& a, double rel_tol) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0 || a.cwiseAbs().maxCoeff() == 0.0) return Matrix::Identity(n, n);
  auto svd = full_svd(a);
  const Vector& s = svd.singularValues();
  const double cutoff = rel_tol * s(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

int numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  if (a.cwiseAbs().maxCoeff() == 0.0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

Matrix orthogonal_complement(const Matrix& q) {
  const Eigen::Index n = q.rows();
  if (q.cols() == 0) return Matrix::Identity(n, n);
  Matrix p = Matrix::Identity(n, n) - q * q.transpose();
  return canonical_basis(orthonormalize(p));
}

Matrix orthonormalize(const Matrix& a, double rel_tol) {
  const Eigen::Index n = a.rows();
  Matrix out(n, 0);
  if (a.cols() == 0) return out;
  const double scale = a.colwise().norm().maxCoeff();
  if (scale == 0.0) return out;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    Vector v = a.col(j);
    // two passes of classical Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass)
      if (out.cols() > 0) v -= out * (out.transpose() * v);
    const double nv = v.norm();
    if (nv <= std::sqrt(rel_tol) * scale) continue;
    out.conservativeResize(n, out.cols() + 1);
    out.col(out.cols() - 1) = v / nv;
  }
  return out;
}

Matrix canonical_basis(const Matrix& q) {
  const Eigen::Index n = q.rows();
  const Eigen::Index m = q.cols();
  Matrix residual = q * q.transpose();
  Matrix out(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double nj = residual.col(j).norm();
      // ties resolve to the lowest ambient index
      if (nj > best_norm * (1.0 + 1e-9) + 1e-300) {
        best_norm = nj;
        best = j;
      }
    }
    Vector v = residual.col(best) / best_norm;
    for (Eigen::Index i = 0; i < k; ++i) v -= out.col(i) * out.col(i).dot(v);
    v.normalize();
    out.col(k) = v;
    residual -= v * (v.transpose() * residual);
  }
  return out;
}

Vector gaussian_vector(Rng& rng, int n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

Matrix random_orthogonal(Rng& rng, int n) {
  Matrix g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = gaussian_vector(rng, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace torsionkit
