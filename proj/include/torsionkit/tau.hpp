#pragma once

// 3-forms tau on R^n and the bracket [X, Y] := tau_X Y they induce.

#include "torsionkit/lie.hpp"

#include <string>
#include <vector>

namespace torsionkit {

/// Defects are quadratic in tau and compared after division by |tau|^2.
inline constexpr double kTolTauJacobi = 1e-8;

struct TauJacobiDefects {
  double derivation = 0;  // max_i |(tau_{e_i})_* tau|
  double commutator = 0;  // max_{i,j} |[tau_i, tau_j] - tau_{tau_i e_j}|
  double four_form = 0;   // |sum_i tau_i ^ tau_i|
  double norm_sq = 0;     // |tau|^2

  double relative(double raw) const { return norm_sq == 0.0 ? 0.0 : raw / norm_sq; }
  /// All three relative defects within tol.
  bool holds(double tol = kTolTauJacobi) const;
  /// The three formulations give the same verdict at tol.
  bool consistent(double tol = kTolTauJacobi) const;
};

TauJacobiDefects tau_jacobi_defects(const KForm& tau);
/// Raw derivation-action defect.
double tau_jacobi_defect(const KForm& tau);

/// Structure constants c_ij^k = tau(e_i, e_j, e_k), without any checks.
MetricLieAlgebra algebra_of(const KForm& tau);

struct TauLieAlgebra {
  Matrix basis;  // orthonormal basis of ker(tau)^perp (n x m)
  MetricLieAlgebra algebra;
};

/// Throws kNotLieStructure (message carries the relative defect) when the
/// tau-Jacobi condition fails at tol.
TauLieAlgebra lie_from_tau(const KForm& tau, double tol = kTolTauJacobi);

struct Brick {
  Matrix basis;  // canonical orthonormal basis in R^n
  int dim = 0;
  int rank = 0;
  LieTypeLabel type;
  /// sign * sqrt(kappa / 2) where the Killing form of tau|brick is -kappa <,>
  /// and sign is that of the largest tau coefficient in the canonical basis;
  /// for dim 3 this is the coefficient against the volume form.
  double scale = 0;
  std::string case_tag;  // "dim3-volume" or "simple-algebra"
};

struct BrickReport {
  int kernel_dim = 0;
  Matrix kernel;
  std::vector<Brick> bricks;
  TauJacobiDefects defects;
  double cross_terms = 0;  // |tau - sum of brick restrictions| / |tau|
};

BrickReport classify_bricks(const KForm& tau, Rng& rng, double tol = kTolTauJacobi);

struct LemmaResult {
  bool preconditions_hold = false;
  std::vector<std::string> diagnostics;  // e.g. "invariance-failed"
  bool holds = false;                    // meaningful only when preconditions hold
  double margin = 0;
  bool irreducibility_warning = false;   // commutant of dimension 2 or 4
  int commutant_dim = 0;
};

/// Containment rho(h) inside tau(V) = span{tau_{e_i}}. Preconditions:
/// rho-invariance of tau, trivial kernel, tau-Jacobi.
LemmaResult alglemma_check(const std::vector<SkewEndo>& rho, const KForm& tau, double tol = kTolTauJacobi);

/// rho1 and rho2 give the same generators of a common algebra acting on V1
/// and V2; tau lives on V1 + V2 (V1 first). Checks tau(V1, V2, V2) = 0.
LemmaResult lemmalg_check(const std::vector<Matrix>& rho1, const std::vector<Matrix>& rho2, const KForm& tau,
                          double tol = kTolTauJacobi);

/// Dimension of {M : M A = A M for all A in gens} over all n x n matrices.
int full_commutant_dimension(const std::vector<Matrix>& gens, int n);

}  // namespace torsionkit
