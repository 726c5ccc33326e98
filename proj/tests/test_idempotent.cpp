#include <doctest.h>

#include <Eigen/SVD>

#include "brown/idempotent.hpp"
#include "brown/models.hpp"

using namespace brown;

namespace {
Subspace line(int ambient, std::vector<Complex> v) {
  ComplexMatrix f(ambient, 1);
  for (int i = 0; i < ambient; ++i) f(i, 0) = v[i];
  return Subspace::from_span(f);
}

const Subspace e1 = line(2, {1, 0});
const Subspace e2 = line(2, {0, 1});
const Subspace diag_line = line(2, {1, 1});
}  // namespace

TEST_CASE("orthogonal pair reduces to a projection") {
  Idempotent e = Idempotent::from_pair(e1, e2);
  Materialized m = e.materialize();
  ComplexMatrix expect(2, 2);
  expect << 1, 0, 0, 0;
  CHECK((m.matrix - expect).norm() < 1e-12);
  CHECK(m.condition == doctest::Approx(1.0));
}

TEST_CASE("skew pair: range span{(1,1)}, kernel span{e1}") {
  Idempotent e = Idempotent::from_pair(diag_line, e1);
  ComplexMatrix m = e.materialize().matrix;
  ComplexMatrix expect(2, 2);
  expect << 0, 1, 0, 1;  // solves E(1,1)^T=(1,1)^T, E e1 = 0
  CHECK((m - expect).norm() < 1e-10);
  CHECK((m * m - m).norm() < 1e-10);
  CHECK(e.trace().rank == 1);
  CHECK(e.trace().dim == 2);
  // normalized matrix trace equals the rank count
  CHECK(std::abs(m.trace().real() / 2.0 - e.trace().value()) < 1e-10);
}

TEST_CASE("full range gives the identity") {
  Idempotent e = Idempotent::from_pair(Subspace::full(2), Subspace::zero(2));
  CHECK((e.materialize().matrix - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK(e.trace().value() == 1.0);
}

TEST_CASE("overlapping pair is rejected") {
  CHECK_THROWS_WITH_AS(Idempotent::from_pair(e1, e1), doctest::Contains("not a complementary"),
                       Error);
  // dimension deficit
  CHECK_THROWS_AS(Idempotent::from_pair(e1, Subspace::zero(2)), Error);
}

TEST_CASE("trace examples") {
  CHECK(Idempotent::from_pair(e1, e2).trace().value() == 0.5);
  CHECK(Idempotent::from_pair(diag_line, e1).trace().value() == 0.5);
  CHECK(Idempotent::identity(5).trace().value() == 1.0);
}

TEST_CASE("support projection is the range and carries the trace") {
  Idempotent e = Idempotent::from_pair(diag_line, e1);
  CHECK(subspace_distance(e.support_projection(), diag_line) < 1e-12);
  CHECK(e.support_projection().trace() == e.trace());
}

TEST_CASE("complement swaps range and kernel; traces add to 1") {
  Idempotent e = Idempotent::from_pair(diag_line, e1);
  Idempotent c = e.complement();
  CHECK(subspace_distance(c.range(), e.kernel()) == 0.0);
  CHECK(e.trace().rank + c.trace().rank == 2);
  ComplexMatrix sum = e.materialize().matrix + c.materialize().matrix;
  CHECK((sum - ComplexMatrix::Identity(2, 2)).norm() < 1e-10);
}

TEST_CASE("sum of the two coordinate projections is the identity") {
  std::vector<Idempotent> parts{Idempotent::from_pair(e1, e2), Idempotent::from_pair(e2, e1)};
  Idempotent s = sum_annihilating(parts);
  CHECK((s.materialize().matrix - ComplexMatrix::Identity(2, 2)).norm() < 1e-10);
  CHECK(s.trace().value() == 1.0);
}

TEST_CASE("the two spectral idempotents of [[0,1],[0,1]] sum to the identity") {
  // eigenvector (1,1) for 1 and (1,0) for 0, by hand
  Idempotent for_one = Idempotent::from_pair(diag_line, e1);
  Idempotent for_zero = Idempotent::from_pair(e1, diag_line);
  std::vector<Idempotent> parts{for_one, for_zero};
  Idempotent s = sum_annihilating(parts);
  CHECK((s.materialize().matrix - ComplexMatrix::Identity(2, 2)).norm() < 1e-9);

  // permutation invariance
  std::vector<Idempotent> rev{for_zero, for_one};
  Idempotent s2 = sum_annihilating(rev);
  CHECK(subspace_distance(s.range(), s2.range()) <= 1e-8);
  CHECK(subspace_distance(s.kernel(), s2.kernel()) <= 1e-8);
}

TEST_CASE("single-element sums are the element") {
  Idempotent e = Idempotent::from_pair(diag_line, e1);
  std::vector<Idempotent> one{e};
  Idempotent s = sum_annihilating(one);
  CHECK(subspace_distance(s.range(), e.range()) == 0.0);
}

TEST_CASE("non-annihilating inputs are rejected with the offending pair") {
  Idempotent e = Idempotent::from_pair(e1, e2);
  std::vector<Idempotent> parts{e, e};
  CHECK_THROWS_WITH_AS(sum_annihilating(parts), doctest::Contains("not mutually annihilating"),
                       Error);
}

TEST_CASE("commutation: e with itself and with its complement") {
  Idempotent e = Idempotent::from_pair(diag_line, e1);
  CHECK(idempotents_commute(e, e).commute);
  CHECK(idempotents_commute(e, e.complement()).commute);
}

TEST_CASE("commutation: a genuinely non-commuting pair") {
  Idempotent e = Idempotent::from_pair(e1, e2);           // diag(1,0)
  Idempotent f = Idempotent::from_pair(diag_line, e2);    // [[1,0],[1,0]]
  ComplexMatrix fm = f.materialize().matrix;
  ComplexMatrix expect(2, 2);
  expect << 1, 0, 1, 0;
  CHECK((fm - expect).norm() < 1e-10);
  CommutationWitness w = idempotents_commute(e, f);
  CHECK(!w.commute);
  CHECK(w.lattice_join_dim < 2);
}

TEST_CASE("materialize / extract round-trip recovers range and kernel") {
  Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 4 + static_cast<int>(rng.integer(4));
    const int r = 1 + static_cast<int>(rng.integer(d - 1));
    Subspace range = Subspace::from_span(rng.gaussian_matrix(d, r));
    Subspace kernel = Subspace::from_span(rng.gaussian_matrix(d, d - r));
    if (max_principal_cosine(range, kernel) > 0.99) continue;
    Idempotent e = Idempotent::from_pair(range, kernel);
    ComplexMatrix m = e.materialize().matrix;

    Subspace col = Subspace::from_span(m);
    CHECK(subspace_distance(col, range) <= 1e-8);
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    Subspace null = Subspace::from_frame(svd.matrixV().rightCols(d - r));
    CHECK(subspace_distance(null, kernel) <= 1e-8);
  }
}

TEST_CASE("nearly degenerate pairs are flagged") {
  // range and kernel almost share a direction
  Subspace range = line(2, {1.0, 0.0});
  Subspace kernel = line(2, {1.0, 1e-13});
  CHECK_THROWS_AS(Idempotent::from_pair(range, kernel), Error);
}
