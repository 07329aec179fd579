#include "lie_oracles.hpp"
#include "test_util.hpp"
#include "torsionkit/lie.hpp"
#include "torsionkit/torsion.hpp"

#include <doctest.h>

using namespace torsionkit;
using namespace tktest;

namespace {

MetricLieAlgebra from_entries(int n, std::initializer_list<std::tuple<int, int, int, double>> entries) {
  std::vector<double> c(static_cast<std::size_t>(n) * n * n, 0.0);
  for (auto [i, j, k, v] : entries) {
    c[(static_cast<std::size_t>(i) * n + j) * n + k] = v;
    c[(static_cast<std::size_t>(j) * n + i) * n + k] = -v;
  }
  return MetricLieAlgebra(n, std::move(c));
}

MetricLieAlgebra rotated(const MetricLieAlgebra& l, Rng& rng) { return l.restrict_to(random_orthogonal(rng, l.dim())); }

}  // namespace

TEST_CASE("structure constant validation") {
  CHECK_THROWS_AS(MetricLieAlgebra(2, std::vector<double>(7, 0.0)), Error);
  std::vector<double> c(8, 0.0);
  c[(0 * 2 + 1) * 2 + 1] = 1.0;  // c_01^1 = 1 without the c_10^1 partner
  CHECK_THROWS_AS(MetricLieAlgebra(2, c), Error);
}

TEST_CASE("jacobi defect") {
  CHECK(jacobi_defect(su2()) == 0.0);
  CHECK(jacobi_defect(MetricLieAlgebra::abelian(4)) == 0.0);
  CHECK(jacobi_defect(su3()) < 1e-14);
  CHECK(jacobi_defect(so(5)) == 0.0);

  // [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e3 violates Jacobi with defect 1.
  const auto bad = from_entries(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 2, 1.0}});
  CHECK(jacobi_defect(bad) == doctest::Approx(1.0));
  CHECK(jacobi_oracle(bad) == doctest::Approx(1.0));
  CHECK_FALSE(satisfies_jacobi(bad));

  // c_12^3 = 1, c_13^2 = 1 is a genuine (solvable) Lie algebra.
  const auto solvable = from_entries(3, {{0, 1, 2, 1.0}, {0, 2, 1, 1.0}});
  CHECK(jacobi_defect(solvable) == 0.0);
  CHECK(jacobi_oracle(solvable) == 0.0);

  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> c(64, 0.0);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          const double v = gaussian_vector(rng, 1)(0);
          c[(i * 4 + j) * 4 + k] = v;
          c[(j * 4 + i) * 4 + k] = -v;
        }
    const MetricLieAlgebra l(4, c);
    // the oracle maximizes over components, the implementation over vector norms
    CHECK(jacobi_defect(l) >= jacobi_oracle(l) - 1e-12);
    CHECK(jacobi_defect(l) <= 2.0 * jacobi_oracle(l) + 1e-12);
  }
}

TEST_CASE("killing forms against the trace oracle") {
  CHECK((killing_form(su2()) + 2.0 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((killing_form(su3()) + 3.0 * Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(killing_form(MetricLieAlgebra::abelian(3)).isZero(0.0));
  Matrix so4_expected = -2.0 * Matrix::Identity(6, 6);
  CHECK((killing_form(so4()) - so4_expected).cwiseAbs().maxCoeff() < 1e-12);
  for (const auto& l : {so(5), su3(), direct_sum(su2(), so(4))})
    CHECK((killing_form(l) - killing_oracle(l)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("killing form is ad-invariant") {
  Rng rng(22);
  for (const auto& l0 : {su3(), so(5), direct_sum(su2(), MetricLieAlgebra::abelian(2))}) {
    const auto l = rotated(l0, rng);
    const Matrix b = killing_form(l);
    double worst = 0;
    for (int x = 0; x < l.dim(); ++x) {
      const Matrix adx = l.ad_basis(x);
      // B([X,Y],Z) + B(Y,[X,Z]) = (ad_X^T B + B ad_X)_{YZ}
      worst = std::max(worst, (adx.transpose() * b + b * adx).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("generators agree with matrix realizations") {
  // Same Killing spectrum up to the overall metric normalization.
  auto spectrum = [](const MetricLieAlgebra& l) {
    Eigen::SelfAdjointEigenSolver<Matrix> e(killing_form(l));
    return Vector(e.eigenvalues() / e.eigenvalues()(0));
  };
  const auto so5 = algebra_from_matrices(so_matrices(5));
  CHECK((spectrum(so5) - spectrum(so(5))).cwiseAbs().maxCoeff() < 1e-10);
  const auto su3m = algebra_from_matrices(su_matrices(3));
  CHECK(su3m.dim() == 8);
  CHECK(jacobi_defect(su3m) < 1e-12);
  CHECK((spectrum(su3m) - spectrum(su3())).cwiseAbs().maxCoeff() < 1e-10);
  // E_ij has Frobenius norm sqrt(2), so the oracle constants are 1/sqrt(2) of ours
  CHECK((killing_form(so5) - 0.5 * killing_form(so(5))).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("compact type") {
  CHECK(is_compact_type(su2()) == CompactType::kCompactSemisimple);
  CHECK(is_compact_type(su3()) == CompactType::kCompactSemisimple);
  CHECK(is_compact_type(MetricLieAlgebra::abelian(3)) == CompactType::kCompactWithCenter);
  CHECK(is_compact_type(direct_sum(su2(), MetricLieAlgebra::abelian(2))) == CompactType::kCompactWithCenter);
  CHECK(is_compact_type(from_entries(2, {{0, 1, 1, 1.0}})) == CompactType::kNonCompact);
  CHECK(is_compact_type(from_entries(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 2, 1.0}})) == CompactType::kInvalid);
  CHECK(to_string(CompactType::kCompactWithCenter) == "compact-with-center");
}

TEST_CASE("simple ideal decomposition") {
  Rng rng(23);
  SUBCASE("so(4) splits into two 3-dim ideals") {
    const auto d = simple_ideal_decomposition(so(4), rng);
    CHECK(d.center.cols() == 0);
    REQUIRE(d.ideals.size() == 2);
    CHECK(d.ideals[0].cols() == 3);
    CHECK(d.ideals[1].cols() == 3);
    CHECK((d.ideals[0].transpose() * d.ideals[1]).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("su(2) + R^2") {
    const auto d = simple_ideal_decomposition(direct_sum(su2(), MetricLieAlgebra::abelian(2)), rng);
    CHECK(d.center.cols() == 2);
    REQUIRE(d.ideals.size() == 1);
    CHECK(d.ideals[0].cols() == 3);
    // the ideal is span(e1, e2, e3)
    CHECK((d.ideals[0] * d.ideals[0].transpose()).topLeftCorner(3, 3).isIdentity(1e-10));
  }
  SUBCASE("abelian") {
    const auto d = simple_ideal_decomposition(MetricLieAlgebra::abelian(4), rng);
    CHECK(d.center.cols() == 4);
    CHECK(d.ideals.empty());
  }
  SUBCASE("rotated su(3) + su(2) + su(2) + R") {
    const auto l = rotated(direct_sum(direct_sum(su3(), so4()), MetricLieAlgebra::abelian(1)), rng);
    const auto d = simple_ideal_decomposition(l, rng);
    CHECK(d.center.cols() == 1);
    REQUIRE(d.ideals.size() == 3);
    CHECK(d.ideals[0].cols() == 3);
    CHECK(d.ideals[1].cols() == 3);
    CHECK(d.ideals[2].cols() == 8);
    for (const auto& q : d.ideals) {
      const auto sub = l.restrict_to(q);
      CHECK(commutant_dimension(sub) == 1);
      Rng r2(5);
      CHECK(simple_ideal_decomposition(sub, r2).ideals.size() == 1);
    }
    // cross brackets vanish
    for (Eigen::Index u = 0; u < d.ideals[0].cols(); ++u)
      CHECK((l.ad(d.ideals[0].col(u)) * d.ideals[2]).cwiseAbs().maxCoeff() < 1e-9);
  }
  SUBCASE("non-compact input is rejected") {
    CHECK_THROWS_AS(simple_ideal_decomposition(from_entries(2, {{0, 1, 1, 1.0}}), rng), Error);
  }
}

TEST_CASE("decomposition is deterministic for a fixed seed") {
  Rng a(7), b(7);
  const auto da = simple_ideal_decomposition(so4(), a);
  const auto db = simple_ideal_decomposition(so4(), b);
  CHECK(da.ideals[0] == db.ideals[0]);
  CHECK(da.ideals[1] == db.ideals[1]);
}

TEST_CASE("cartan rank and identification") {
  Rng rng(24);
  CHECK(cartan_rank(su2(), rng) == 1);
  CHECK(cartan_rank(su3(), rng) == 2);
  CHECK(cartan_rank(so(5), rng) == 2);
  CHECK(cartan_rank(so(6), rng) == 3);
  for (int trial = 0; trial < 3; ++trial) CHECK(cartan_rank(rotated(su3(), rng), rng) == 2);

  CHECK(identify_type(su2(), rng).label() == "A1");
  const auto a2 = identify_type(su3(), rng);
  CHECK(a2.dim == 8);
  CHECK(a2.rank == 2);
  CHECK(a2.label() == "A2");
  CHECK(identify_type(so(5), rng).label() == "B2");
  CHECK(identify_type(so(6), rng).label() == "A3");
  CHECK(identify_type(so(8), rng).label() == "D4");
  CHECK(identify_type(MetricLieAlgebra::abelian(5), rng).label() == "unidentified");
}

TEST_CASE("B3 and C3 are separated by root lengths") {
  Rng rng(25);
  const auto b3 = identify_type(rotated(so(7), rng), rng);
  CHECK(b3.label() == "B3");
  CHECK(b3.long_roots == 12);
  CHECK(b3.short_roots == 6);
  const auto sp3 = algebra_from_matrices(sp_matrices(3));
  REQUIRE(sp3.dim() == 21);
  CHECK(jacobi_defect(sp3) < 1e-12);
  const auto c3 = identify_type(sp3, rng);
  CHECK(c3.label() == "C3");
  CHECK(c3.long_roots == 6);
  CHECK(c3.short_roots == 12);
}

TEST_CASE("canonical three-form") {
  const KForm w = canonical_three_form(su2());
  CHECK(w.coeff({0, 1, 2}) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(w.terms().size() == 1);
  CHECK(canonical_three_form(MetricLieAlgebra::abelian(3)).is_zero());
  const KForm w3 = canonical_three_form(su3());
  CHECK(four_form_sum(w3).max_abs() < 1e-12);
  for (int i = 0; i < 8; ++i) CHECK(derivation_action(threeform_slice(w3, Vector::Unit(8, i)), w3).max_abs() < 1e-12);
  // omega = -3 times the structure form for su(3)
  CHECK(max_diff(w3, -3.0 * structure_three_form(su3())) < 1e-12);
  CHECK_THROWS_AS(canonical_three_form(from_entries(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 2, 1.0}})), Error);
}
