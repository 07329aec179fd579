#pragma once

// Metric Lie algebras given by structure constants in an orthonormal basis:
// [e_i, e_j] = sum_k c_ij^k e_k.

#include "torsionkit/exterior.hpp"

#include <string>
#include <vector>

namespace torsionkit {

/// Jacobi and ad-invariance checks scale this by max(1, max|c|^2) resp. max(1, max|c|).
inline constexpr double kTolJacobi = 1e-10;
inline constexpr double kTolAdInvariance = 1e-9;

class MetricLieAlgebra {
 public:
  /// c has n^3 entries with c[(i*n + j)*n + k] = c_ij^k. Throws
  /// kInvariantViolation unless c_ij^k = -c_ji^k exactly.
  MetricLieAlgebra(int dim, std::vector<double> c);
  static MetricLieAlgebra abelian(int dim);

  int dim() const noexcept { return dim_; }
  /// Throws kOutOfRange above kMaxDim; the algebra itself has no such limit.
  Space space() const { return Space(dim_); }
  double c(int i, int j, int k) const { return c_[index(i, j, k)]; }
  const std::vector<double>& structure() const noexcept { return c_; }
  double max_abs_structure() const;

  Vector bracket(const Vector& x, const Vector& y) const;
  /// ad(e_i) as a matrix: column j is [e_i, e_j].
  Matrix ad_basis(int i) const;
  Matrix ad(const Vector& x) const;

  /// Structure constants in the basis given by the orthonormal columns of q:
  /// c'_ab^c = <[q_a, q_b], q_c>. For a square orthogonal q this is a change
  /// of basis; otherwise the span must be a subalgebra for the result to be
  /// meaningful.
  MetricLieAlgebra restrict_to(const Matrix& q) const;

  friend bool operator==(const MetricLieAlgebra&, const MetricLieAlgebra&) = default;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  int dim_;
  std::vector<double> c_;
};

MetricLieAlgebra su2();
/// Gell-Mann f-constants.
MetricLieAlgebra su3();
/// Basis E_ij = e_i e_j^T - e_j e_i^T (i < j), orthonormal for <X,Y> = tr(X^T Y)/2.
MetricLieAlgebra so(int n);
/// su(2) + su(2) with eps blocks on e1..e3 and e4..e6.
MetricLieAlgebra so4();
MetricLieAlgebra direct_sum(const MetricLieAlgebra& a, const MetricLieAlgebra& b);

/// max over i<j<k of |[[e_i,e_j],e_k] + cyclic|.
double jacobi_defect(const MetricLieAlgebra& l);
bool satisfies_jacobi(const MetricLieAlgebra& l);

/// max over basis triples of |<[X,Y],Z> + <Y,[X,Z]>|.
double ad_invariance_defect(const MetricLieAlgebra& l);

Matrix killing_form(const MetricLieAlgebra& l);

enum class CompactType { kCompactSemisimple, kCompactWithCenter, kNonCompact, kInvalid };
std::string to_string(CompactType t);
CompactType is_compact_type(const MetricLieAlgebra& l);

/// Orthonormal columns; center and ideals are mutually orthogonal and span R^n.
struct IdealDecomposition {
  Matrix center;
  std::vector<Matrix> ideals;
};

/// Dimension of {M : M ad(X) = ad(X) M for all X}, symmetric M only.
int commutant_dimension(const MetricLieAlgebra& l);

/// Splits a compact-type algebra into its center and simple ideals. Ideals
/// are returned with canonical bases, ordered by dimension and then by the
/// lowest ambient index they touch.
IdealDecomposition simple_ideal_decomposition(const MetricLieAlgebra& l, Rng& rng);

/// min over `samples` random X of dim ker ad(X).
int cartan_rank(const MetricLieAlgebra& l, Rng& rng, int samples = 8);

struct LieTypeLabel {
  int dim = 0;
  int rank = 0;
  std::vector<std::string> candidates;  // empty when unidentified
  // root length statistics used to separate B and C types
  int long_roots = 0;
  int short_roots = 0;

  std::string label() const;  // "A2", "B3|C3" or "unidentified"
};

LieTypeLabel identify_type(const MetricLieAlgebra& l, Rng& rng);

/// omega(X, Y, Z) = B([X, Y], Z). Throws kInvalidAlgebra when Jacobi fails.
KForm canonical_three_form(const MetricLieAlgebra& l);

/// The 3-form c_ijk = <[e_i,e_j],e_k>; equals the bracket form for an
/// ad-invariant metric. Throws kUnsupportedSignature when c is not totally
/// antisymmetric.
KForm structure_three_form(const MetricLieAlgebra& l);

}  // namespace torsionkit
