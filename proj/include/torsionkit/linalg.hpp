#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace torsionkit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Seeded generator passed by value or reference into every randomized step.
using Rng = std::mt19937_64;

inline constexpr double kTolRank = 1e-9;

/// Orthonormal basis (as columns) of the numerical null space of `a`.
/// Singular values below `rel_tol * sigma_max` count as zero; an all-zero
/// matrix has the whole domain as kernel.
Matrix null_space(const Matrix& a, double rel_tol = kTolRank);

int numerical_rank(const Matrix& a, double rel_tol = kTolRank);

/// Orthonormal basis of the orthogonal complement of span(q) in R^n.
/// `q` must have orthonormal columns.
Matrix orthogonal_complement(const Matrix& q);

/// Deterministic orthonormal basis of span(q), depending only on the subspace
/// and the ambient frame: pivoted Gram-Schmidt on the columns of the projector.
Matrix canonical_basis(const Matrix& q);

/// Orthonormalize the columns of `a`, dropping numerically dependent ones.
Matrix orthonormalize(const Matrix& a, double rel_tol = kTolRank);

Vector gaussian_vector(Rng& rng, int n);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign fix).
Matrix random_orthogonal(Rng& rng, int n);

}  // namespace torsionkit
