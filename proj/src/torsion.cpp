#include "torsionkit/torsion.hpp"

#include <cmath>

namespace torsionkit {

TorsionTensor::TorsionTensor(std::vector<KForm> slices)
    : space_(static_cast<int>(slices.size())), slices_(std::move(slices)) {
  for (const auto& s : slices_) {
    if (s.degree() != 2) fail(ErrorCode::kDegree, "torsion slices must be 2-forms");
    if (s.space() != space_) fail(ErrorCode::kDimensionMismatch, "torsion needs exactly n slices on R^n");
  }
}

TorsionTensor TorsionTensor::zero(Space space) {
  return TorsionTensor(std::vector<KForm>(static_cast<std::size_t>(space.dim()), KForm(space, 2)));
}

TorsionTensor TorsionTensor::from_dense(Space space, const Vector& coeffs) {
  const int n = space.dim();
  const auto block = binomial(n, 2);
  if (coeffs.size() != n * block) fail(ErrorCode::kDimensionMismatch, "dense torsion vector has wrong length");
  std::vector<KForm> slices;
  for (int i = 0; i < n; ++i) slices.push_back(KForm::from_dense(space, 2, coeffs.segment(i * block, block)));
  return TorsionTensor(std::move(slices));
}

KForm TorsionTensor::slice(const Vector& x) const {
  if (x.size() != dim()) fail(ErrorCode::kDimensionMismatch, "vector has wrong dimension");
  KForm out(space_, 2);
  for (int i = 0; i < dim(); ++i)
    if (x(i) != 0.0) out += x(i) * slices_[static_cast<std::size_t>(i)];
  return out;
}

SkewEndo TorsionTensor::endo(const Vector& x) const { return two_form_to_endo(slice(x)); }

double TorsionTensor::component(int i, int j, int k) const { return slices_.at(static_cast<std::size_t>(i)).coeff({j, k}); }

Vector TorsionTensor::to_dense() const {
  const auto block = binomial(dim(), 2);
  Vector out(dim() * block);
  for (int i = 0; i < dim(); ++i) out.segment(i * block, block) = slices_[static_cast<std::size_t>(i)].to_dense();
  return out;
}

double TorsionTensor::dot(const TorsionTensor& other) const {
  if (other.space_ != space_) fail(ErrorCode::kDimensionMismatch, "torsion tensors on different spaces");
  double s = 0;
  for (std::size_t i = 0; i < slices_.size(); ++i) s += slices_[i].dot(other.slices_[i]);
  return s;
}

double TorsionTensor::norm() const { return std::sqrt(dot(*this)); }

TorsionTensor& TorsionTensor::operator+=(const TorsionTensor& other) {
  if (other.space_ != space_) fail(ErrorCode::kDimensionMismatch, "torsion tensors on different spaces");
  for (std::size_t i = 0; i < slices_.size(); ++i) slices_[i] += other.slices_[i];
  return *this;
}

TorsionTensor& TorsionTensor::operator-=(const TorsionTensor& other) {
  if (other.space_ != space_) fail(ErrorCode::kDimensionMismatch, "torsion tensors on different spaces");
  for (std::size_t i = 0; i < slices_.size(); ++i) slices_[i] -= other.slices_[i];
  return *this;
}

TorsionTensor& TorsionTensor::operator*=(double s) {
  for (auto& sl : slices_) sl *= s;
  return *this;
}

TorsionTensor embed_vectorial(const Vector& xi) {
  const int n = static_cast<int>(xi.size());
  const KForm x = KForm::one_form(xi);
  std::vector<KForm> slices;
  for (int i = 0; i < n; ++i) slices.push_back(wedge(KForm::basis(Space(n), {i}), x));
  return TorsionTensor(std::move(slices));
}

TorsionTensor embed_skew(const KForm& tau) {
  if (tau.degree() != 3) fail(ErrorCode::kDegree, "embed_skew requires a 3-form");
  std::vector<KForm> slices;
  for (int i = 0; i < tau.dim(); ++i) slices.push_back(contract(Vector::Unit(tau.dim(), i), tau));
  return TorsionTensor(std::move(slices));
}

Vector torsion_two_form(const TorsionTensor& t, const Vector& x, const Vector& y) {
  return t.endo(x).apply(y) - t.endo(y).apply(x);
}

TorsionDecomposition decompose(const TorsionTensor& t) {
  const int n = t.dim();
  if (n < 2) fail(ErrorCode::kDegenerateDimension, "torsion decomposition needs n >= 2");
  const Space s(n);

  // Adjoints of the two inclusions: sum_i e_i _| T(e_i) and sum_i e_i ^ T(e_i).
  // The inclusions satisfy emb_v^* emb_v = (n-1) id and emb_s^* emb_s = 3 id.
  KForm contraction(s, 1);
  KForm alternation(s, 3);
  for (int i = 0; i < n; ++i) {
    const KForm& sl = t.slices()[static_cast<std::size_t>(i)];
    contraction += contract(Vector::Unit(n, i), sl);
    alternation += wedge(KForm::basis(s, {i}), sl);
  }

  TorsionDecomposition d{contraction.to_vector() / (n - 1), TorsionTensor::zero(s), alternation * (1.0 / 3.0)};
  const TorsionTensor t1 = embed_vectorial(d.vectorial);
  const TorsionTensor t3 = embed_skew(d.skew);
  d.twistorial = t - t1 - t3;
  d.vectorial_norm = t1.norm();
  d.skew_norm = t3.norm();
  d.twistorial_norm = d.twistorial.norm();
  d.residual_norm = (t - t1 - d.twistorial - t3).norm();
  return d;
}

std::string TorsionType::label() const {
  if (zero) return "zero";
  std::string out;
  auto append = [&](bool present, const char* name) {
    if (!present) return;
    if (!out.empty()) out += "⊕";
    out += name;
  };
  append(t1, "T1");
  append(t2, "T2");
  append(t3, "T3");
  return out;
}

TorsionType classify_type(const TorsionDecomposition& d, double total_norm, double tol) {
  TorsionType type;
  if (total_norm == 0.0) {
    type.zero = true;
    return type;
  }
  const double cutoff = tol * total_norm;
  type.t1 = d.vectorial_norm > cutoff;
  type.t2 = d.twistorial_norm > cutoff;
  type.t3 = d.skew_norm > cutoff;
  if (!type.t1 && !type.t2 && !type.t3) type.zero = true;
  return type;
}

TorsionType classify_type(const TorsionTensor& t, double tol) { return classify_type(decompose(t), t.norm(), tol); }

long long twistorial_dimension(int n) { return n * binomial(n, 2) - n - binomial(n, 3); }

}  // namespace torsionkit
