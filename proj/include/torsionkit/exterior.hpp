#pragma once

// Exterior algebra over R^n with the identity metric in the working frame.
//
// A k-form is stored sparsely: one coefficient per strictly increasing
// multi-index, keyed by the bitmask of its indices (n <= 32). Indices are
// 0-based here; files use 1-based indices.
//
// Conventions:
//  * 2-forms and skew endomorphisms are identified by <A_w X, Y> = w(X, Y),
//    so (X^Y) acts as Z -> <X,Z> Y - <Y,Z> X.
//  * tau_X is the skew endomorphism of X _| tau, i.e. <tau_X Y, Z> = tau(X,Y,Z).
//  * Coefficients over increasing multi-indices form an orthonormal basis of
//    Lambda^k.

#include "torsionkit/error.hpp"
#include "torsionkit/linalg.hpp"

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

namespace torsionkit {

inline constexpr int kMaxDim = 32;
inline constexpr double kTolSkew = 1e-12;

class Space {
 public:
  explicit Space(int dim);
  int dim() const noexcept { return dim_; }
  friend bool operator==(const Space&, const Space&) = default;

 private:
  int dim_;
};

using Blade = std::uint32_t;

Blade blade_of(std::span<const int> increasing_indices);
std::vector<int> indices_of(Blade b);
int blade_degree(Blade b);

/// All k-subsets of {0..n-1} in lexicographic order of their index lists.
std::vector<Blade> lexicographic_blades(int n, int k);

long long binomial(int n, int k);

class KForm {
 public:
  KForm(Space space, int degree);

  /// e_{i1} ^ ... ^ e_{ik}; indices may come in any order (sign applied,
  /// repeated indices give the zero form).
  static KForm basis(Space space, std::initializer_list<int> indices);
  static KForm basis(Space space, std::span<const int> indices);
  static KForm one_form(const Vector& v);
  /// Coefficients in lexicographic multi-index order (see lexicographic_blades).
  static KForm from_dense(Space space, int degree, const Vector& coeffs);

  Space space() const noexcept { return space_; }
  int dim() const noexcept { return space_.dim(); }
  int degree() const noexcept { return degree_; }

  /// Coefficient for arbitrary index order, with the permutation sign.
  double coeff(std::span<const int> indices) const;
  double coeff(std::initializer_list<int> indices) const;
  double coeff(Blade b) const;

  /// Sets the coefficient of a strictly increasing multi-index.
  void set(std::span<const int> increasing_indices, double value);
  void set(Blade b, double value);
  void add(Blade b, double value);

  const std::map<Blade, double>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  double evaluate(std::span<const Vector> args) const;

  Vector to_dense() const;
  Vector to_vector() const;  // degree 1 only

  double dot(const KForm& other) const;
  double norm() const;
  double max_abs() const;

  KForm& operator+=(const KForm& other);
  KForm& operator-=(const KForm& other);
  KForm& operator*=(double s);
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(double s, KForm a) { return a *= s; }
  friend KForm operator*(KForm a, double s) { return a *= s; }
  KForm operator-() const { return (*this) * -1.0; }

  /// Exact equality of coefficient maps (bit-for-bit).
  friend bool operator==(const KForm& a, const KForm& b);

 private:
  void require_same(const KForm& other) const;

  Space space_;
  int degree_;
  std::map<Blade, double> terms_;
};

class SkewEndo {
 public:
  /// Throws kInvariantViolation when m + m^T exceeds kTolSkew (relative to
  /// max(1, |m|_max)).
  explicit SkewEndo(Matrix m);
  static SkewEndo zero(int n);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  Vector apply(const Vector& x) const { return m_ * x; }

  friend SkewEndo commutator(const SkewEndo& a, const SkewEndo& b);

 private:
  struct Unchecked {};
  SkewEndo(Matrix m, Unchecked) : m_(std::move(m)) {}
  Matrix m_;
};

KForm wedge(const KForm& a, const KForm& b);
KForm contract(const Vector& x, const KForm& a);

SkewEndo two_form_to_endo(const KForm& w);
KForm endo_to_two_form(const SkewEndo& a);

/// A_* sigma = sum_i (A e_i) ^ (e_i _| sigma).
KForm derivation_action(const SkewEndo& a, const KForm& sigma);

/// tau_x as a skew endomorphism.
SkewEndo threeform_slice(const KForm& tau, const Vector& x);

/// Orthonormal basis (columns) of {X : tau_X = 0}.
Matrix kernel_of_threeform(const KForm& tau, double rel_tol = kTolRank);

/// sum_i (e_i _| tau) ^ (e_i _| tau).
KForm four_form_sum(const KForm& tau);

/// (Q^* sigma)(e_I) = sigma(Q e_{i1}, ..., Q e_{ik}); Q is n x m, the result
/// lives on R^m.
KForm pullback(const KForm& sigma, const Matrix& q);

/// Image of sigma under Lambda^k(Q): e_I -> Q e_{i1} ^ ... ^ Q e_{ik}; Q is
/// n x m with sigma on R^m, the result lives on R^n. For orthogonal Q this is
/// conjugation of the form by Q.
KForm push_forward(const KForm& sigma, const Matrix& q);

/// Matrix whose column i is the dense coefficient vector of e_i _| tau.
Matrix slice_matrix(const KForm& tau);

}  // namespace torsionkit
