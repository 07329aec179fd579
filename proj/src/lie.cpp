#include "torsionkit/lie.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace torsionkit {

MetricLieAlgebra::MetricLieAlgebra(int dim, std::vector<double> c) : dim_(dim), c_(std::move(c)) {
  if (dim < 0) fail(ErrorCode::kOutOfRange, "algebra dimension must be non-negative");
  if (c_.size() != static_cast<std::size_t>(dim) * dim * dim)
    fail(ErrorCode::kDimensionMismatch, "structure constants need dim^3 entries");
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        const double v = c_[index(i, j, k)];
        if (!std::isfinite(v)) fail(ErrorCode::kInvariantViolation, "structure constants must be finite");
        if (v != -c_[index(j, i, k)]) fail(ErrorCode::kInvariantViolation, "structure constants must satisfy c_ij^k = -c_ji^k");
      }
}

MetricLieAlgebra MetricLieAlgebra::abelian(int dim) {
  return MetricLieAlgebra(dim, std::vector<double>(static_cast<std::size_t>(dim) * dim * dim, 0.0));
}

double MetricLieAlgebra::max_abs_structure() const {
  double m = 0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Vector MetricLieAlgebra::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) fail(ErrorCode::kDimensionMismatch, "bracket arguments have wrong dimension");
  return ad(x) * y;
}

Matrix MetricLieAlgebra::ad_basis(int i) const {
  Matrix m(dim_, dim_);
  for (int j = 0; j < dim_; ++j)
    for (int k = 0; k < dim_; ++k) m(k, j) = c_[index(i, j, k)];
  return m;
}

Matrix MetricLieAlgebra::ad(const Vector& x) const {
  if (x.size() != dim_) fail(ErrorCode::kDimensionMismatch, "ad argument has wrong dimension");
  Matrix m = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (x(i) != 0.0) m += x(i) * ad_basis(i);
  return m;
}

MetricLieAlgebra MetricLieAlgebra::restrict_to(const Matrix& q) const {
  if (q.rows() != dim_) fail(ErrorCode::kDimensionMismatch, "basis matrix has wrong row count");
  const int m = static_cast<int>(q.cols());
  std::vector<Matrix> adq;
  adq.reserve(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) adq.push_back(q.transpose() * ad(q.col(a)) * q);
  std::vector<double> c(static_cast<std::size_t>(m) * m * m, 0.0);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int k = 0; k < m; ++k) {
        // average the two orders so the result is exactly antisymmetric
        const double v = 0.5 * (adq[static_cast<std::size_t>(a)](k, b) - adq[static_cast<std::size_t>(b)](k, a));
        c[(static_cast<std::size_t>(a) * m + b) * m + k] = v;
        c[(static_cast<std::size_t>(b) * m + a) * m + k] = -v;
      }
  return MetricLieAlgebra(m, std::move(c));
}

namespace {

class StructureBuilder {
 public:
  explicit StructureBuilder(int n) : n_(n), c_(static_cast<std::size_t>(n) * n * n, 0.0) {}
  void set(int i, int j, int k, double v) {
    c_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k] = v;
    c_[(static_cast<std::size_t>(j) * n_ + i) * n_ + k] = -v;
  }
  /// Sets all orderings of a totally antisymmetric f_ijk.
  void set_antisymmetric(int i, int j, int k, double v) {
    set(i, j, k, v);
    set(j, k, i, v);
    set(k, i, j, v);
  }
  MetricLieAlgebra build() && { return MetricLieAlgebra(n_, std::move(c_)); }

 private:
  int n_;
  std::vector<double> c_;
};

}  // namespace

MetricLieAlgebra su2() {
  StructureBuilder b(3);
  b.set_antisymmetric(0, 1, 2, 1.0);
  return std::move(b).build();
}

MetricLieAlgebra su3() {
  const double h = 0.5;
  const double r = std::sqrt(3.0) / 2.0;
  StructureBuilder b(8);
  b.set_antisymmetric(0, 1, 2, 1.0);
  b.set_antisymmetric(0, 3, 6, h);
  b.set_antisymmetric(0, 4, 5, -h);
  b.set_antisymmetric(1, 3, 5, h);
  b.set_antisymmetric(1, 4, 6, h);
  b.set_antisymmetric(2, 3, 4, h);
  b.set_antisymmetric(2, 5, 6, -h);
  b.set_antisymmetric(3, 4, 7, r);
  b.set_antisymmetric(5, 6, 7, r);
  return std::move(b).build();
}

MetricLieAlgebra so(int n) {
  if (n < 2) fail(ErrorCode::kDegenerateDimension, "so(n) needs n >= 2");
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      e(j, i) = -1.0;
      basis.push_back(e);
    }
  const int m = static_cast<int>(basis.size());
  StructureBuilder b(m);
  for (int a = 0; a < m; ++a)
    for (int c = a + 1; c < m; ++c) {
      const Matrix br = basis[static_cast<std::size_t>(a)] * basis[static_cast<std::size_t>(c)] -
                        basis[static_cast<std::size_t>(c)] * basis[static_cast<std::size_t>(a)];
      for (int k = 0; k < m; ++k) {
        // coefficients are exactly 0 or +-1
        const double v = 0.5 * (basis[static_cast<std::size_t>(k)].array() * br.array()).sum();
        if (v != 0.0) b.set(a, c, k, v);
      }
    }
  return std::move(b).build();
}

MetricLieAlgebra so4() { return direct_sum(su2(), su2()); }

MetricLieAlgebra direct_sum(const MetricLieAlgebra& a, const MetricLieAlgebra& b) {
  const int n = a.dim() + b.dim();
  StructureBuilder s(n);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        if (a.c(i, j, k) != 0.0) s.set(i, j, k, a.c(i, j, k));
  const int o = a.dim();
  for (int i = 0; i < b.dim(); ++i)
    for (int j = i + 1; j < b.dim(); ++j)
      for (int k = 0; k < b.dim(); ++k)
        if (b.c(i, j, k) != 0.0) s.set(o + i, o + j, o + k, b.c(i, j, k));
  return std::move(s).build();
}

double jacobi_defect(const MetricLieAlgebra& l) {
  const int n = l.dim();
  std::vector<Matrix> ads;
  for (int i = 0; i < n; ++i) ads.push_back(l.ad_basis(i));
  double worst = 0;
  // the Jacobiator is alternating, so increasing triples suffice
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vector bij = ads[static_cast<std::size_t>(i)].col(j);
      const Matrix ad_ij = l.ad(bij);
      for (int k = j + 1; k < n; ++k) {
        const Vector bjk = ads[static_cast<std::size_t>(j)].col(k);
        const Vector bki = ads[static_cast<std::size_t>(k)].col(i);
        const Vector jac = ad_ij.col(k) + l.ad(bjk).col(i) + l.ad(bki).col(j);
        worst = std::max(worst, jac.norm());
      }
    }
  return worst;
}

bool satisfies_jacobi(const MetricLieAlgebra& l) {
  const double s = std::max(1.0, l.max_abs_structure());
  return jacobi_defect(l) <= kTolJacobi * s * s;
}

double ad_invariance_defect(const MetricLieAlgebra& l) {
  const int n = l.dim();
  double worst = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = y; z < n; ++z) worst = std::max(worst, std::abs(l.c(x, y, z) + l.c(x, z, y)));
  return worst;
}

Matrix killing_form(const MetricLieAlgebra& l) {
  const int n = l.dim();
  std::vector<Matrix> ads;
  for (int i = 0; i < n; ++i) ads.push_back(l.ad_basis(i));
  Matrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      // tr(A B) = sum of A .* B^T
      const double v = (ads[static_cast<std::size_t>(i)].array() * ads[static_cast<std::size_t>(j)].transpose().array()).sum();
      b(i, j) = v;
      b(j, i) = v;
    }
  return b;
}

std::string to_string(CompactType t) {
  switch (t) {
    case CompactType::kCompactSemisimple: return "compact-semisimple";
    case CompactType::kCompactWithCenter: return "compact-with-center";
    case CompactType::kNonCompact: return "non-compact";
    case CompactType::kInvalid: return "invalid";
  }
  return "invalid";
}

namespace {

Matrix center_of(const MetricLieAlgebra& l) {
  const Matrix b = killing_form(l);
  return canonical_basis(null_space(b, kTolRank));
}

}  // namespace

CompactType is_compact_type(const MetricLieAlgebra& l) {
  if (!satisfies_jacobi(l)) return CompactType::kInvalid;
  const double s = std::max(1.0, l.max_abs_structure());
  if (ad_invariance_defect(l) > kTolAdInvariance * s) return CompactType::kNonCompact;
  const int n = l.dim();
  if (n == 0) return CompactType::kCompactSemisimple;
  const Matrix b = killing_form(l);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(b);
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  if (eig.eigenvalues().maxCoeff() > kTolRank * scale) return CompactType::kNonCompact;
  const Matrix center = center_of(l);
  if (center.cols() == 0) return CompactType::kCompactSemisimple;
  // the Killing kernel must consist of central elements
  double worst = 0;
  for (Eigen::Index a = 0; a < center.cols(); ++a) worst = std::max(worst, l.ad(center.col(a)).cwiseAbs().maxCoeff());
  return worst <= kTolAdInvariance * s ? CompactType::kCompactWithCenter : CompactType::kNonCompact;
}

namespace {

// Symmetric matrices in the basis S_pq (p <= q) with unit Frobenius norm.
struct SymmetricBasis {
  int m;
  std::vector<std::pair<int, int>> pairs;
  explicit SymmetricBasis(int m_) : m(m_) {
    for (int p = 0; p < m; ++p)
      for (int q = p; q < m; ++q) pairs.emplace_back(p, q);
  }
  Matrix element(const Vector& coeffs) const {
    Matrix s = Matrix::Zero(m, m);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      const auto [p, q] = pairs[r];
      if (p == q) {
        s(p, p) = coeffs(static_cast<Eigen::Index>(r));
      } else {
        s(p, q) = coeffs(static_cast<Eigen::Index>(r)) / std::sqrt(2.0);
        s(q, p) = s(p, q);
      }
    }
    return s;
  }
};

// Rows of the linear map S -> S A - A S on symmetric S.
Matrix commutator_rows(const SymmetricBasis& sb, const Matrix& a) {
  const int m = sb.m;
  Matrix k = Matrix::Zero(static_cast<Eigen::Index>(m) * m, static_cast<Eigen::Index>(sb.pairs.size()));
  for (std::size_t r = 0; r < sb.pairs.size(); ++r) {
    const auto [p, q] = sb.pairs[r];
    Matrix s = Matrix::Zero(m, m);
    const double w = p == q ? 1.0 : 1.0 / std::sqrt(2.0);
    s(p, q) = w;
    s(q, p) = w;
    const Matrix d = s * a - a * s;
    k.col(static_cast<Eigen::Index>(r)) = Eigen::Map<const Vector>(d.data(), d.size());
  }
  return k;
}

// Symmetric commutant of the ad-representation, as coefficient vectors.
Matrix symmetric_commutant(const MetricLieAlgebra& l, Rng& rng) {
  const int m = l.dim();
  const SymmetricBasis sb(m);
  const double s = std::max(1.0, l.max_abs_structure());
  auto solve = [&](const std::vector<Matrix>& gens) {
    Matrix normal = Matrix::Zero(static_cast<Eigen::Index>(sb.pairs.size()), static_cast<Eigen::Index>(sb.pairs.size()));
    for (const auto& g : gens) {
      const Matrix k = commutator_rows(sb, g);
      normal.noalias() += k.transpose() * k;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(normal);
    const double top = std::max(eig.eigenvalues().maxCoeff(), 0.0);
    Eigen::Index count = 0;
    while (count < eig.eigenvalues().size() && eig.eigenvalues()(count) <= 1e-10 * top) ++count;
    return Matrix(eig.eigenvectors().leftCols(count));
  };
  auto commutes = [&](const Matrix& basis) {
    for (Eigen::Index r = 0; r < basis.cols(); ++r) {
      const Matrix e = sb.element(basis.col(r));
      for (int i = 0; i < m; ++i) {
        const Matrix a = l.ad_basis(i);
        if ((e * a - a * e).cwiseAbs().maxCoeff() > 1e-8 * s) return false;
      }
    }
    return true;
  };
  // Three generic elements generate a semisimple algebra; fall back to the
  // whole basis if the check says otherwise.
  std::vector<Matrix> gens;
  for (int g = 0; g < 3; ++g) gens.push_back(l.ad(gaussian_vector(rng, m)));
  Matrix basis = solve(gens);
  if (commutes(basis)) return basis;
  gens.clear();
  for (int i = 0; i < m; ++i) gens.push_back(l.ad_basis(i));
  return solve(gens);
}

Eigen::Index first_touched_index(const Matrix& q) {
  const Matrix p = q * q.transpose();
  for (Eigen::Index j = 0; j < p.rows(); ++j)
    if (p(j, j) > 1e-9) return j;
  return p.rows();
}

void split_semisimple(const MetricLieAlgebra& l, const Matrix& q, Rng& rng, std::vector<Matrix>& out, int depth) {
  const MetricLieAlgebra sub = l.restrict_to(q);
  const Matrix comm = symmetric_commutant(sub, rng);
  if (comm.cols() <= 1) {
    out.push_back(q);
    return;
  }
  if (depth > sub.dim()) fail(ErrorCode::kInternalConsistency, "ideal splitting did not converge");
  const SymmetricBasis sb(sub.dim());
  const Matrix s = sb.element(comm * gaussian_vector(rng, static_cast<int>(comm.cols())));
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  const Vector& ev = eig.eigenvalues();
  const double scale = std::max(1e-300, ev.cwiseAbs().maxCoeff());
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= ev.size(); ++i) {
    if (i < ev.size() && ev(i) - ev(i - 1) <= 1e-6 * scale) continue;
    const Matrix block = q * eig.eigenvectors().middleCols(start, i - start);
    // a cluster may still hold several ideals if two eigenvalues collided
    split_semisimple(l, block, rng, out, depth + 1);
    start = i;
  }
}

}  // namespace

int commutant_dimension(const MetricLieAlgebra& l) {
  Rng rng(0);
  return static_cast<int>(symmetric_commutant(l, rng).cols());
}

IdealDecomposition simple_ideal_decomposition(const MetricLieAlgebra& l, Rng& rng) {
  const CompactType type = is_compact_type(l);
  if (type != CompactType::kCompactSemisimple && type != CompactType::kCompactWithCenter)
    fail(ErrorCode::kUnsupportedSignature, "ideal decomposition needs a compact-type algebra, got " + to_string(type));
  IdealDecomposition d;
  d.center = center_of(l);
  const Matrix derived = orthogonal_complement(d.center);
  if (derived.cols() > 0) {
    std::vector<Matrix> raw;
    split_semisimple(l, derived, rng, raw, 0);
    for (const auto& q : raw) d.ideals.push_back(canonical_basis(orthonormalize(q)));
  }
  std::stable_sort(d.ideals.begin(), d.ideals.end(), [](const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) return a.cols() < b.cols();
    return first_touched_index(a) < first_touched_index(b);
  });

  // closure and mutual commutation
  const double s = std::max(1.0, l.max_abs_structure());
  for (std::size_t a = 0; a < d.ideals.size(); ++a) {
    const Matrix& qa = d.ideals[a];
    const Matrix pa = Matrix::Identity(l.dim(), l.dim()) - qa * qa.transpose();
    for (Eigen::Index u = 0; u < qa.cols(); ++u) {
      const Matrix adu = l.ad(qa.col(u));
      if ((pa * adu * qa).cwiseAbs().maxCoeff() > 1e-9 * s)
        fail(ErrorCode::kInternalConsistency, "ideal is not closed under the bracket");
      for (std::size_t b = a + 1; b < d.ideals.size(); ++b)
        if ((adu * d.ideals[b]).cwiseAbs().maxCoeff() > 1e-9 * s)
          fail(ErrorCode::kInternalConsistency, "distinct ideals do not commute");
    }
  }
  return d;
}

int cartan_rank(const MetricLieAlgebra& l, Rng& rng, int samples) {
  const int n = l.dim();
  if (n == 0) return 0;
  int best = n;
  for (int s = 0; s < samples; ++s) best = std::min(best, n - numerical_rank(l.ad(gaussian_vector(rng, n)), kTolRank));
  return best;
}

std::string LieTypeLabel::label() const {
  if (candidates.empty()) return "unidentified";
  std::string out;
  for (const auto& c : candidates) {
    if (!out.empty()) out += "|";
    out += c;
  }
  return out;
}

namespace {

struct TableEntry {
  int dim;
  int rank;
  const char* name;
};

// Compact simple algebras up to dimension 52 (B2 = C2 and D3 = A3 listed once).
constexpr TableEntry kTypeTable[] = {
    {3, 1, "A1"},  {8, 2, "A2"},   {10, 2, "B2"}, {14, 2, "G2"}, {15, 3, "A3"}, {21, 3, "B3"}, {21, 3, "C3"},
    {24, 4, "A4"}, {28, 4, "D4"},  {35, 5, "A5"}, {36, 4, "B4"}, {36, 4, "C4"}, {45, 5, "D5"}, {48, 6, "A6"},
    {52, 4, "F4"},
};

// Squared root lengths from the 2-planes of -ad(h)^2 for a generic Cartan
// element h. Returns false when the planes cannot be separated cleanly.
bool root_lengths(const MetricLieAlgebra& l, Rng& rng, int rank, std::vector<double>& lengths) {
  const int n = l.dim();
  const Vector x = gaussian_vector(rng, n);
  const Matrix adx = l.ad(x);
  const Matrix t = null_space(adx, kTolRank);
  if (t.cols() != rank) return false;
  const Matrix p = orthogonal_complement(t);
  const Matrix a = -(p.transpose() * adx * adx * p);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (a + a.transpose()));
  const Vector& ev = eig.eigenvalues();
  if (ev.size() % 2 != 0) return false;
  const double scale = std::max(1e-300, ev.cwiseAbs().maxCoeff());
  std::vector<Matrix> hs;
  for (Eigen::Index c = 0; c < t.cols(); ++c) hs.push_back(l.ad(t.col(c)));
  lengths.clear();
  for (Eigen::Index i = 0; i < ev.size(); i += 2) {
    if (ev(i + 1) - ev(i) > 1e-7 * scale) return false;
    if (i + 2 < ev.size() && ev(i + 2) - ev(i + 1) <= 1e-4 * scale) return false;
    const Vector u = p * eig.eigenvectors().col(i);
    const Vector v = p * eig.eigenvectors().col(i + 1);
    double len = 0;
    for (const auto& h : hs) {
      const double theta = u.dot(h * v);
      len += theta * theta;
    }
    lengths.push_back(len);
  }
  return true;
}

}  // namespace

LieTypeLabel identify_type(const MetricLieAlgebra& l, Rng& rng) {
  LieTypeLabel out;
  out.dim = l.dim();
  out.rank = cartan_rank(l, rng);
  for (const auto& e : kTypeTable)
    if (e.dim == out.dim && e.rank == out.rank) out.candidates.emplace_back(e.name);
  if (out.candidates.size() < 2) return out;

  // B_r has 2r(r-1) long and 2r short roots; C_r the other way round.
  std::vector<double> lengths;
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (!root_lengths(l, rng, out.rank, lengths)) continue;
    const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
    if (*hi < 1.5 * *lo) break;  // single length: inconclusive
    const double cut = std::sqrt(*lo * *hi);
    int long_planes = 0;
    for (double v : lengths) long_planes += v > cut ? 1 : 0;
    out.long_roots = 2 * long_planes;
    out.short_roots = 2 * (static_cast<int>(lengths.size()) - long_planes);
    const int r = out.rank;
    if (out.long_roots == 2 * r * (r - 1) && out.short_roots == 2 * r) {
      out.candidates = {"B" + std::to_string(r)};
    } else if (out.long_roots == 2 * r && out.short_roots == 2 * r * (r - 1)) {
      out.candidates = {"C" + std::to_string(r)};
    }
    break;
  }
  return out;
}

KForm canonical_three_form(const MetricLieAlgebra& l) {
  if (!satisfies_jacobi(l)) fail(ErrorCode::kInvalidAlgebra, "canonical 3-form needs a Lie algebra (Jacobi identity fails)");
  const int n = l.dim();
  const Matrix b = killing_form(l);
  std::vector<Matrix> ads;
  for (int i = 0; i < n; ++i) ads.push_back(l.ad_basis(i));
  // w_ijk = sum_l c_ij^l B_lk
  auto w = [&](int i, int j, int k) { return ads[static_cast<std::size_t>(i)].col(j).dot(b.col(k)); };
  KForm out(Space(n), 3);
  double worst = 0, top = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double v = w(i, j, k);
        worst = std::max({worst, std::abs(v - w(j, k, i)), std::abs(v - w(k, i, j)), std::abs(v + w(i, k, j))});
        top = std::max(top, std::abs(v));
        out.set(blade_of(std::vector<int>{i, j, k}), v);
      }
  if (worst > 1e-10 * std::max(1.0, top)) fail(ErrorCode::kInternalConsistency, "canonical 3-form is not alternating");
  return out;
}

KForm structure_three_form(const MetricLieAlgebra& l) {
  const double s = std::max(1.0, l.max_abs_structure());
  if (ad_invariance_defect(l) > kTolAdInvariance * s)
    fail(ErrorCode::kUnsupportedSignature, "metric is not ad-invariant; structure constants are not a 3-form");
  const int n = l.dim();
  KForm out(Space(n), 3);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) out.set(blade_of(std::vector<int>{i, j, k}), l.c(i, j, k));
  return out;
}

}  // namespace torsionkit
