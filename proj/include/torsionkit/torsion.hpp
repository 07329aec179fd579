#pragma once

// Torsion tensors T in Lambda^1 (x) Lambda^2 and their O(n) splitting into
// vectorial (T1), twistorial (T2) and totally skew (T3) parts.

#include "torsionkit/exterior.hpp"

#include <string>
#include <vector>

namespace torsionkit {

inline constexpr double kTorsionTypeTol = 1e-8;

/// Slice i is the 2-form T(e_i); T_X is the skew endomorphism of sum_i X_i T(e_i).
class TorsionTensor {
 public:
  explicit TorsionTensor(std::vector<KForm> slices);
  static TorsionTensor zero(Space space);
  /// Concatenated dense slice coefficients (n blocks of n(n-1)/2).
  static TorsionTensor from_dense(Space space, const Vector& coeffs);

  Space space() const noexcept { return space_; }
  int dim() const noexcept { return space_.dim(); }
  const std::vector<KForm>& slices() const noexcept { return slices_; }

  KForm slice(const Vector& x) const;
  SkewEndo endo(const Vector& x) const;
  /// T(e_i, e_j, e_k) = <T_{e_i} e_j, e_k>.
  double component(int i, int j, int k) const;

  Vector to_dense() const;
  double dot(const TorsionTensor& other) const;
  double norm() const;

  TorsionTensor& operator+=(const TorsionTensor& other);
  TorsionTensor& operator-=(const TorsionTensor& other);
  TorsionTensor& operator*=(double s);
  friend TorsionTensor operator+(TorsionTensor a, const TorsionTensor& b) { return a += b; }
  friend TorsionTensor operator-(TorsionTensor a, const TorsionTensor& b) { return a -= b; }
  friend TorsionTensor operator*(double s, TorsionTensor a) { return a *= s; }
  friend bool operator==(const TorsionTensor& a, const TorsionTensor& b) { return a.slices_ == b.slices_; }

 private:
  Space space_;
  std::vector<KForm> slices_;
};

/// xi -> sum_i e_i (x) (e_i ^ xi)
TorsionTensor embed_vectorial(const Vector& xi);
/// tau -> sum_i e_i (x) (e_i _| tau)
TorsionTensor embed_skew(const KForm& tau);

/// T~(X, Y) = T_X Y - T_Y X
Vector torsion_two_form(const TorsionTensor& t, const Vector& x, const Vector& y);

struct TorsionDecomposition {
  Vector vectorial;          // xi
  TorsionTensor twistorial;  // T2
  KForm skew;                // tau
  double residual_norm = 0;  // |T - (embed(xi) + T2 + embed(tau))|
  // norms of the re-embedded components, comparable with |T|
  double vectorial_norm = 0;
  double twistorial_norm = 0;
  double skew_norm = 0;
};

/// Orthogonal projection onto the three summands. Requires n >= 2.
TorsionDecomposition decompose(const TorsionTensor& t);

struct TorsionType {
  bool zero = false;
  bool t1 = false;
  bool t2 = false;
  bool t3 = false;

  bool twistor_free() const noexcept { return !zero && !t2; }
  bool twistor_like() const noexcept { return t2 && !t1 && !t3; }
  /// "zero", or the present components joined by U+2295, e.g. "T1⊕T3".
  std::string label() const;
};

/// Components whose embedded norm exceeds tol * |T| are reported present.
TorsionType classify_type(const TorsionDecomposition& d, double total_norm, double tol = kTorsionTypeTol);
TorsionType classify_type(const TorsionTensor& t, double tol = kTorsionTypeTol);

/// Dimension of the twistorial summand: n * n(n-1)/2 - n - C(n,3).
long long twistorial_dimension(int n);

}  // namespace torsionkit
