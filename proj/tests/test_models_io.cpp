#include <doctest.h>

#include "brown/models.hpp"
#include "brown/serialize.hpp"

using namespace brown;

TEST_CASE("conjugated-diagonal models commute and match their oracle") {
  GeneratedModel model = make_conjugated_diagonal(6, 2, 7, 25.0);
  CommutingTuple tuple(model.mats);
  CHECK(tuple.commutator_bound() <= 1e-12);
  AtomicMeasure computed = brown_measure(joint_decompose(tuple));
  CHECK(measure_distance(computed, *model.oracle) <= 1e-8);
  // determinism
  GeneratedModel again = make_conjugated_diagonal(6, 2, 7, 25.0);
  CHECK((model.mats[0] - again.mats[0]).norm() == 0.0);
}

TEST_CASE("similarity factors hit the requested condition number") {
  Rng rng(3);
  ComplexMatrix s = random_similarity(8, 100.0, rng);
  Eigen::JacobiSVD<ComplexMatrix> svd(s);
  const double cond = svd.singularValues()(0) / svd.singularValues()(7);
  CHECK(cond == doctest::Approx(100.0).epsilon(1e-6));
}

TEST_CASE("separated points honor the separation floor") {
  Rng rng(5);
  auto pts = separated_points(12, 1.5, 0.3, rng);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) CHECK(std::abs(pts[i] - pts[j]) >= 0.3);
}

TEST_CASE("jordan polynomial models are defective with the advertised oracle") {
  // base J has a 2-block at 0 and a 1-block at 1; maps p1 = z, p2 = z^2 + 1
  Polynomial p1, p2;
  p1.nvars = 1;
  p1.terms[{1}] = 1.0;
  p2.nvars = 1;
  p2.terms[{2}] = 1.0;
  p2.terms[{0}] = 1.0;
  GeneratedModel model = make_poly_of_jordan(
      3, {p1, p2}, {JordanBlockSpec{Complex(0, 0), 2}, JordanBlockSpec{Complex(1, 0), 1}}, 11);
  CommutingTuple tuple(model.mats);
  AtomicMeasure computed = brown_measure(joint_decompose(tuple));
  CHECK(measure_distance(computed, *model.oracle) <= 1e-8);
  REQUIRE(model.oracle->atoms().size() == 2);
  CHECK(model.oracle->atoms()[0].weight == doctest::Approx(2.0 / 3));
  // the model is genuinely non-diagonalizable: T1 restricted to the 0-cluster
  // is a nilpotent 2x2 with nonzero norm
  JointDecomposition dec = decompose_single(model.mats[0]);
  for (const auto& c : dec.clusters()) {
    if (c.multiplicity == 2) {
      ComplexMatrix r = restrict_to(model.mats[0], c.space);
      CHECK(r.norm() > 0.1);
      CHECK(std::abs(r.trace()) < 1e-8);
    }
  }
}

TEST_CASE("normal models are normal") {
  GeneratedModel model = make_normal(7, 13);
  const ComplexMatrix& t = model.mats[0];
  CHECK((t.adjoint() * t - t * t.adjoint()).norm() <= 1e-12 * t.norm() * t.norm());
}

TEST_CASE("ginibre matrices have unit-scale norm") {
  GeneratedModel model = make_ginibre(64, 1);
  const double norm = operator_norm(model.mats[0]);
  CHECK(norm > 1.0);
  CHECK(norm < 3.5);
}

TEST_CASE("matrix json round-trip") {
  Rng rng(17);
  ComplexMatrix m = rng.gaussian_matrix(4, 4);
  ComplexMatrix back = matrix_from_json(matrix_to_json(m));
  CHECK((m - back).norm() == 0.0);
  // frames serialize with explicit cols
  ComplexMatrix f = rng.gaussian_matrix(5, 2);
  CHECK((matrix_from_json(matrix_to_json(f)) - f).norm() == 0.0);
  CHECK_THROWS_AS(matrix_from_json(Json{{"d", 2}}), Error);
}

TEST_CASE("measure json and csv") {
  AtomicMeasure mu(2, {Atom{{Complex(0, 1), Complex(2, -1)}, 0.25},
                       Atom{{Complex(1, 0), Complex(0, 0)}, 0.75}});
  AtomicMeasure back = measure_from_json(measure_to_json(mu));
  CHECK(measure_distance(mu, back) == 0.0);
  const std::string csv = measure_to_csv(mu);
  CHECK(csv.rfind("re1,im1,re2,im2,weight\n", 0) == 0);
}

TEST_CASE("idempotent json round-trip") {
  ComplexMatrix rf(2, 1), kf(2, 1);
  rf << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  kf << 1.0, 0.0;
  Idempotent e = Idempotent::from_pair(Subspace::from_frame(rf), Subspace::from_frame(kf));
  Idempotent back = idempotent_from_json(idempotent_to_json(e));
  CHECK(subspace_distance(e.range(), back.range()) == 0.0);
  CHECK(subspace_distance(e.kernel(), back.kernel()) == 0.0);
}

TEST_CASE("decomposition json carries clusters and conditioning") {
  GeneratedModel model = make_conjugated_diagonal(4, 2, 19, 10.0);
  JointDecomposition dec = joint_decompose(CommutingTuple(model.mats));
  Json j = decomposition_to_json(dec);
  CHECK(j["d"] == 4);
  CHECK(j["clusters"].size() == 4);
  CHECK(j["frame_condition"].get<double>() >= 1.0);
}

TEST_CASE("ppm output is a well-formed P6 with the expected size") {
  ComplexMatrix zero1(1, 1);
  zero1 << 0;
  GridDensity g = grid_brown(zero1, GridSpec{-1, 1, -1, 1, 16, 16}, 0.05);
  const std::string ppm = grid_to_ppm(g);
  CHECK(ppm.rfind("P6\n16 16\n255\n", 0) == 0);
  CHECK(ppm.size() == std::string("P6\n16 16\n255\n").size() + 16 * 16 * 3);
  const std::string csv = grid_to_csv(g);
  CHECK(csv.rfind("x,y,mass\n", 0) == 0);
}
