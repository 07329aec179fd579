#include "torsionkit/exterior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

namespace torsionkit {

namespace {

int parity_sign(int inversions) { return (inversions & 1) ? -1 : 1; }

// Sign of moving index i to the front of blade b (i must not be in b).
int insertion_sign(Blade b, int i) {
  return parity_sign(std::popcount(b & ((Blade{1} << i) - 1)));
}

// Sign of a^b for disjoint blades: (-1)^{#pairs (x in a, y in b) with x > y}.
int wedge_sign(Blade a, Blade b) {
  int inversions = 0;
  for (Blade rest = b; rest != 0; rest &= rest - 1) {
    const int y = std::countr_zero(rest);
    inversions += std::popcount(a >> (y + 1));
  }
  return parity_sign(inversions);
}

void check_index(int i, int n) {
  if (i < 0 || i >= n)
    fail(ErrorCode::kOutOfRange, "index " + std::to_string(i) + " outside 0.." + std::to_string(n - 1));
}

double determinant_small(Matrix& m) {
  const auto k = m.rows();
  if (k == 0) return 1.0;
  if (k == 1) return m(0, 0);
  if (k == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (k == 3)
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  return m.determinant();
}

}  // namespace

Space::Space(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxDim)
    fail(ErrorCode::kOutOfRange, "space dimension " + std::to_string(dim) + " outside 0..32");
}

Blade blade_of(std::span<const int> idx) {
  Blade b = 0;
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (idx[r] < 0 || idx[r] >= kMaxDim) fail(ErrorCode::kOutOfRange, "multi-index entry out of range");
    if (r > 0 && idx[r] <= idx[r - 1]) fail(ErrorCode::kInvariantViolation, "multi-index not strictly increasing");
    b |= Blade{1} << idx[r];
  }
  return b;
}

std::vector<int> indices_of(Blade b) {
  std::vector<int> out;
  for (; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

int blade_degree(Blade b) { return std::popcount(b); }

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Blade> lexicographic_blades(int n, int k) {
  std::vector<Blade> out;
  if (k < 0 || k > n) return out;
  out.reserve(static_cast<std::size_t>(binomial(n, k)));
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Blade b = 0;
    for (int i : idx) b |= Blade{1} << i;
    out.push_back(b);
    int p = k - 1;
    while (p >= 0 && idx[p] == n - k + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
  return out;
}

// --- KForm ------------------------------------------------------------------

KForm::KForm(Space space, int degree) : space_(space), degree_(degree) {
  if (degree < 0) fail(ErrorCode::kDegree, "negative form degree");
}

KForm KForm::basis(Space space, std::initializer_list<int> indices) {
  return basis(space, std::span<const int>(indices.begin(), indices.size()));
}

KForm KForm::basis(Space space, std::span<const int> indices) {
  KForm f(space, static_cast<int>(indices.size()));
  std::vector<int> idx(indices.begin(), indices.end());
  for (int i : idx) check_index(i, space.dim());
  int inversions = 0;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) return f;
      if (idx[a] > idx[b]) ++inversions;
    }
  std::sort(idx.begin(), idx.end());
  f.set(blade_of(idx), parity_sign(inversions));
  return f;
}

KForm KForm::one_form(const Vector& v) {
  KForm f(Space(static_cast<int>(v.size())), 1);
  for (Eigen::Index i = 0; i < v.size(); ++i) f.set(Blade{1} << i, v(i));
  return f;
}

KForm KForm::from_dense(Space space, int degree, const Vector& coeffs) {
  KForm f(space, degree);
  const auto blades = lexicographic_blades(space.dim(), degree);
  if (static_cast<std::size_t>(coeffs.size()) != blades.size())
    fail(ErrorCode::kDimensionMismatch, "dense coefficient vector has wrong length");
  for (std::size_t i = 0; i < blades.size(); ++i) f.set(blades[i], coeffs(static_cast<Eigen::Index>(i)));
  return f;
}

double KForm::coeff(std::span<const int> indices) const {
  if (static_cast<int>(indices.size()) != degree_) fail(ErrorCode::kDegree, "index count does not match degree");
  const KForm b = basis(space_, indices);
  if (b.is_zero()) return 0.0;
  const auto& [blade, sign] = *b.terms_.begin();
  return sign * coeff(blade);
}

double KForm::coeff(std::initializer_list<int> indices) const {
  return coeff(std::span<const int>(indices.begin(), indices.size()));
}

double KForm::coeff(Blade b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? 0.0 : it->second;
}

void KForm::set(std::span<const int> increasing_indices, double value) {
  if (static_cast<int>(increasing_indices.size()) != degree_)
    fail(ErrorCode::kDegree, "index count does not match degree");
  for (int i : increasing_indices) check_index(i, dim());
  set(blade_of(increasing_indices), value);
}

void KForm::set(Blade b, double value) {
  if (value == 0.0)
    terms_.erase(b);
  else
    terms_[b] = value;
}

void KForm::add(Blade b, double value) {
  if (value == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(b, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double KForm::evaluate(std::span<const Vector> args) const {
  if (static_cast<int>(args.size()) != degree_) fail(ErrorCode::kDegree, "argument count does not match degree");
  for (const auto& v : args)
    if (v.size() != dim()) fail(ErrorCode::kDimensionMismatch, "argument vector has wrong dimension");
  double total = 0.0;
  Matrix m(degree_, degree_);
  for (const auto& [b, c] : terms_) {
    const auto idx = indices_of(b);
    for (int r = 0; r < degree_; ++r)
      for (int s = 0; s < degree_; ++s) m(r, s) = args[s](idx[r]);
    total += c * determinant_small(m);
  }
  return total;
}

Vector KForm::to_dense() const {
  const auto blades = lexicographic_blades(dim(), degree_);
  Vector out = Vector::Zero(static_cast<Eigen::Index>(blades.size()));
  if (terms_.empty()) return out;
  std::unordered_map<Blade, Eigen::Index> pos;
  pos.reserve(blades.size());
  for (std::size_t i = 0; i < blades.size(); ++i) pos.emplace(blades[i], static_cast<Eigen::Index>(i));
  for (const auto& [b, c] : terms_) out(pos.at(b)) = c;
  return out;
}

Vector KForm::to_vector() const {
  if (degree_ != 1) fail(ErrorCode::kDegree, "to_vector requires a 1-form");
  Vector v = Vector::Zero(dim());
  for (const auto& [b, c] : terms_) v(std::countr_zero(b)) = c;
  return v;
}

double KForm::dot(const KForm& other) const {
  require_same(other);
  double s = 0.0;
  for (const auto& [b, c] : terms_) s += c * other.coeff(b);
  return s;
}

double KForm::norm() const { return std::sqrt(dot(*this)); }

double KForm::max_abs() const {
  double m = 0.0;
  for (const auto& [b, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

KForm& KForm::operator+=(const KForm& other) {
  require_same(other);
  for (const auto& [b, c] : other.terms_) add(b, c);
  return *this;
}

KForm& KForm::operator-=(const KForm& other) {
  require_same(other);
  for (const auto& [b, c] : other.terms_) add(b, -c);
  return *this;
}

KForm& KForm::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [b, c] : terms_) c *= s;
  return *this;
}

bool operator==(const KForm& a, const KForm& b) {
  return a.space_ == b.space_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

void KForm::require_same(const KForm& other) const {
  if (other.space_ != space_) fail(ErrorCode::kDimensionMismatch, "forms live on different spaces");
  if (other.degree_ != degree_) fail(ErrorCode::kDegree, "forms have different degrees");
}

// --- SkewEndo ----------------------------------------------------------------

SkewEndo::SkewEndo(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) fail(ErrorCode::kDimensionMismatch, "endomorphism matrix is not square");
  if (m_.size() == 0) return;
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  const double asym = (m_ + m_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kTolSkew * scale)
    fail(ErrorCode::kInvariantViolation, "matrix is not skew-symmetric (|M+M^T| = " + std::to_string(asym) + ")");
}

SkewEndo SkewEndo::zero(int n) { return SkewEndo(Matrix::Zero(n, n), Unchecked{}); }

SkewEndo commutator(const SkewEndo& a, const SkewEndo& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::kDimensionMismatch, "commutator of endomorphisms on different spaces");
  return SkewEndo(a.m_ * b.m_ - b.m_ * a.m_, SkewEndo::Unchecked{});
}

// --- operations --------------------------------------------------------------

KForm wedge(const KForm& a, const KForm& b) {
  if (a.space() != b.space()) fail(ErrorCode::kDimensionMismatch, "wedge of forms on different spaces");
  KForm out(a.space(), a.degree() + b.degree());
  if (out.degree() > a.dim()) return out;
  for (const auto& [ba, ca] : a.terms())
    for (const auto& [bb, cb] : b.terms()) {
      if (ba & bb) continue;
      out.add(ba | bb, wedge_sign(ba, bb) * ca * cb);
    }
  return out;
}

KForm contract(const Vector& x, const KForm& a) {
  if (a.degree() == 0) fail(ErrorCode::kDegree, "cannot contract a 0-form");
  if (x.size() != a.dim()) fail(ErrorCode::kDimensionMismatch, "contraction vector has wrong dimension");
  KForm out(a.space(), a.degree() - 1);
  for (const auto& [b, c] : a.terms())
    for (Blade rest = b; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      if (x(i) == 0.0) continue;
      const Blade bi = Blade{1} << i;
      out.add(b ^ bi, insertion_sign(b ^ bi, i) * x(i) * c);
    }
  return out;
}

SkewEndo two_form_to_endo(const KForm& w) {
  if (w.degree() != 2) fail(ErrorCode::kDegree, "two_form_to_endo requires a 2-form");
  Matrix m = Matrix::Zero(w.dim(), w.dim());
  for (const auto& [b, c] : w.terms()) {
    const int lo = std::countr_zero(b);
    const int hi = 31 - std::countl_zero(b);
    m(hi, lo) = c;
    m(lo, hi) = -c;
  }
  return SkewEndo(std::move(m));
}

KForm endo_to_two_form(const SkewEndo& a) {
  const int n = a.dim();
  KForm w(Space(n), 2);
  const Matrix& m = a.matrix();
  for (int lo = 0; lo < n; ++lo)
    for (int hi = lo + 1; hi < n; ++hi) w.set((Blade{1} << lo) | (Blade{1} << hi), m(hi, lo));
  return w;
}

KForm derivation_action(const SkewEndo& a, const KForm& sigma) {
  if (a.dim() != sigma.dim()) fail(ErrorCode::kDimensionMismatch, "endomorphism and form on different spaces");
  KForm out(sigma.space(), sigma.degree());
  if (sigma.degree() == 0) return out;
  const Matrix& m = a.matrix();
  const int n = sigma.dim();
  for (const auto& [b, c] : sigma.terms())
    for (Blade rest = b; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      const Blade reduced = b ^ (Blade{1} << i);
      const double ci = insertion_sign(reduced, i) * c;
      // (A e_i) ^ e_reduced
      for (int j = 0; j < n; ++j) {
        const double aji = m(j, i);
        if (aji == 0.0 || (reduced >> j) & 1u) continue;
        out.add(reduced | (Blade{1} << j), insertion_sign(reduced, j) * aji * ci);
      }
    }
  return out;
}

SkewEndo threeform_slice(const KForm& tau, const Vector& x) {
  if (tau.degree() != 3) fail(ErrorCode::kDegree, "threeform_slice requires a 3-form");
  return two_form_to_endo(contract(x, tau));
}

Matrix slice_matrix(const KForm& tau) {
  if (tau.degree() < 1) fail(ErrorCode::kDegree, "slice_matrix requires degree >= 1");
  const int n = tau.dim();
  Matrix m(binomial(n, tau.degree() - 1), n);
  for (int i = 0; i < n; ++i) m.col(i) = contract(Vector::Unit(n, i), tau).to_dense();
  return m;
}

Matrix kernel_of_threeform(const KForm& tau, double rel_tol) {
  if (tau.degree() != 3) fail(ErrorCode::kDegree, "kernel_of_threeform requires a 3-form");
  return null_space(slice_matrix(tau), rel_tol);
}

KForm four_form_sum(const KForm& tau) {
  if (tau.degree() != 3) fail(ErrorCode::kDegree, "four_form_sum requires a 3-form");
  KForm out(tau.space(), 4);
  for (int i = 0; i < tau.dim(); ++i) {
    const KForm s = contract(Vector::Unit(tau.dim(), i), tau);
    out += wedge(s, s);
  }
  return out;
}

KForm pullback(const KForm& sigma, const Matrix& q) {
  if (q.rows() != sigma.dim()) fail(ErrorCode::kDimensionMismatch, "pullback matrix has wrong row count");
  const int m = static_cast<int>(q.cols());
  const int k = sigma.degree();
  KForm out(Space(m), k);
  if (k > m) return out;
  if (k == 0) {
    out.set(Blade{0}, sigma.coeff(Blade{0}));
    return out;
  }
  Matrix minor(k, k);
  for (Blade target : lexicographic_blades(m, k)) {
    const auto cols = indices_of(target);
    double total = 0.0;
    for (const auto& [b, c] : sigma.terms()) {
      const auto rows = indices_of(b);
      for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s) minor(r, s) = q(rows[r], cols[s]);
      total += c * determinant_small(minor);
    }
    out.set(target, total);
  }
  return out;
}

KForm push_forward(const KForm& sigma, const Matrix& q) {
  if (q.cols() != sigma.dim()) fail(ErrorCode::kDimensionMismatch, "push_forward matrix has wrong column count");
  // Lambda^k(Q) has entries det(Q[J, I]): the same minors as the pullback by Q^T.
  return pullback(sigma, q.transpose().eval());
}

}  // namespace torsionkit
