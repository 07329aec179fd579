#pragma once

// Symmetric pairs g = h + m of type II (h + h, diagonal h) and type IV
// (complexification of h), the triples (h, lambda, tau) they induce, and the
// reconstruction of g from a triple.

#include "torsionkit/tau.hpp"

#include <string>
#include <vector>

namespace torsionkit {

inline constexpr double kTolPair = 1e-10;

/// g is stored in an adapted orthonormal basis: the first m vectors span h,
/// the last m span m.
struct SymmetricPairModel {
  std::string kind;  // "type-II" or "type-IV"
  MetricLieAlgebra base = MetricLieAlgebra::abelian(0);  // the input algebra
  MetricLieAlgebra g = MetricLieAlgebra::abelian(0);
  MetricLieAlgebra h = MetricLieAlgebra::abelian(0);  // g restricted to its first m basis vectors
  Matrix h_basis;         // 2m x m
  Matrix m_basis;         // 2m x m
  int epsilon = 0;
  /// psi : h -> m in adapted coordinates; the map from the input algebra is
  /// psi_scale * psi.
  Matrix psi;
  double psi_scale = 1.0;

  int half_dim() const { return base.dim(); }
  /// lambda(A_a) = ad(A_a) restricted to m, in m coordinates.
  std::vector<SkewEndo> isotropy() const;
};

SymmetricPairModel build_type_II(const MetricLieAlgebra& h);
SymmetricPairModel build_type_IV(const MetricLieAlgebra& h);

struct PairResiduals {
  double hh_in_h = 0;
  double mm_in_h = 0;
  double hm_in_m = 0;
  double epsilon_identity = 0;  // <[X,Y],A> - eps <Y,[X,A]>
  double orthogonality = 0;     // h perp m
  double killing_hm = 0;        // B_g on h x m

  double max() const;
};

PairResiduals pair_residuals(const SymmetricPairModel& p);

/// Pull-back of the canonical form of h through psi^{-1}, on m.
KForm example_tau(const SymmetricPairModel& p);

struct SymmetricTriple {
  MetricLieAlgebra h;
  std::vector<SkewEndo> lambda;
  KForm tau;
  int epsilon = 0;
};

SymmetricTriple extract_triple(const SymmetricPairModel& p);

struct TripleResiduals {
  double representation = 0;  // [lambda(A), lambda(B)] - lambda([A,B])
  double invariance = 0;      // [lambda(A), tau(X)] - tau(lambda(A) X)
};

TripleResiduals triple_residuals(const SymmetricTriple& t);

/// The algebra h + m with [A,X] = lambda(A) X and
/// [X,Y] = -eps sum_c <lambda(C_c) X, Y> C_c.
MetricLieAlgebra triple_algebra(const SymmetricTriple& t);

struct PhiRecovery {
  Matrix phi;           // m x m, columns phi(A_a); an isometry
  double scale = 0;     // the least-squares solution is scale * phi
  double solve_residual = 0;  // |tau(phi A) - lambda(A)| before rescaling, relative
  double isometry_defect = 0;
  double id1_residual = 0;    // [phi(A), B] - phi([A,B])
  double ident_residual = 0;  // [phi(A), phi(B)] + eps [A,B]
};

/// Throws kPrecondition when tau is not injective or lambda(h) is not
/// contained in tau(m).
PhiRecovery recover_phi(const SymmetricTriple& t, double tol = kTolTauJacobi);

struct PsiMap {
  MetricLieAlgebra domain;  // h + h (eps = -1) or the complexification (eps = +1)
  MetricLieAlgebra target;  // triple_algebra
  Matrix iso;               // 2m x 2m
  double defect = 0;        // max |Psi([u,v]) - [Psi u, Psi v]|
};

/// Psi_-(A, B) = (A + B + phi(A - B)) / 2 for eps = -1,
/// Psi_+(A + iB) = A + phi(B) for eps = +1.
PsiMap build_psi_maps(const SymmetricTriple& t, const Matrix& phi);

/// Real form of the complexification: [(A,B),(A',B')] = ([A,A'] - [B,B'], [A,B'] + [B,A']).
MetricLieAlgebra complexification(const MetricLieAlgebra& h);

}  // namespace torsionkit
