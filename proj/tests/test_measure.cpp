#include <doctest.h>

#include "brown/measure.hpp"
#include "brown/models.hpp"
#include "brown/potential.hpp"

using namespace brown;

namespace {

ComplexMatrix diag(std::vector<Complex> v) {
  ComplexMatrix m = ComplexMatrix::Zero(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
  return m;
}

AtomicMeasure meas(std::vector<std::pair<Complex, double>> atoms) {
  std::vector<Atom> v;
  for (auto& [z, w] : atoms) v.push_back(Atom{Point{z}, w});
  return AtomicMeasure(1, std::move(v));
}

std::pair<ComplexMatrix, ComplexMatrix> shear_pair() {
  ComplexMatrix s(2, 2), sinv(2, 2);
  s << 1, 1, 0, 1;
  sinv << 1, -1, 0, 1;
  return {s * diag({1.0, 2.0}) * sinv, s * diag({3.0, 4.0}) * sinv};
}

}  // namespace

TEST_CASE("atomic measure construction merges and validates") {
  AtomicMeasure m(1, {Atom{{Complex(0, 0)}, 0.5}, Atom{{Complex(1e-10, 0)}, 0.5}});
  CHECK(m.atoms().size() == 1);
  CHECK(m.atoms()[0].weight == doctest::Approx(1.0));
  CHECK_THROWS_AS(AtomicMeasure(1, {Atom{{Complex(0, 0)}, 0.7}}), Error);
  CHECK_THROWS_AS(AtomicMeasure(1, {Atom{{Complex(0, 0)}, -0.2}, Atom{{Complex(1, 0)}, 1.2}}),
                  Error);
}

TEST_CASE("brown measure of diag(1,2,2,3)") {
  AtomicMeasure mu = brown_measure(decompose_single(diag({1.0, 2.0, 2.0, 3.0})));
  REQUIRE(mu.atoms().size() == 3);
  CHECK(mu.atoms()[0].weight == doctest::Approx(0.25));
  CHECK(mu.atoms()[1].weight == doctest::Approx(0.5));
  CHECK(mu.atoms()[2].weight == doctest::Approx(0.25));
}

TEST_CASE("brown measure of the sheared pair matches its construction") {
  auto [t1, t2] = shear_pair();
  AtomicMeasure mu = brown_measure(joint_decompose(CommutingTuple({t1, t2})));
  REQUIRE(mu.atoms().size() == 2);
  CHECK(std::abs(mu.atoms()[0].z[0] - 1.0) < 1e-10);
  CHECK(std::abs(mu.atoms()[0].z[1] - 3.0) < 1e-10);
  CHECK(mu.atoms()[0].weight == doctest::Approx(0.5));
}

TEST_CASE("brown measure of a nilpotent block is a point mass at 0") {
  ComplexMatrix n(2, 2);
  n << 0, 1, 0, 0;
  AtomicMeasure mu = brown_measure(decompose_single(n));
  REQUIRE(mu.atoms().size() == 1);
  CHECK(std::abs(mu.atoms()[0].z[0]) < 1e-12);
  CHECK(mu.atoms()[0].weight == doctest::Approx(1.0));
}

TEST_CASE("pushforward by a product polynomial") {
  std::vector<Atom> atoms{Atom{{Complex(1, 0), Complex(3, 0)}, 0.5},
                          Atom{{Complex(2, 0), Complex(4, 0)}, 0.5}};
  AtomicMeasure mu(2, atoms);
  AtomicMeasure out = pushforward(mu, MapDescriptor::mul2());
  REQUIRE(out.atoms().size() == 2);
  CHECK(std::abs(out.atoms()[0].z[0] - 3.0) < 1e-15);
  CHECK(std::abs(out.atoms()[1].z[0] - 8.0) < 1e-15);
}

TEST_CASE("pushforward merges colliding images") {
  AtomicMeasure mu = meas({{Complex(1, 0), 0.5}, {Complex(-1, 0), 0.5}});
  Polynomial sq;
  sq.nvars = 1;
  sq.terms[{2}] = 1.0;
  AtomicMeasure out = pushforward(mu, MapDescriptor::polynomial(sq));
  REQUIRE(out.atoms().size() == 1);
  CHECK(out.atoms()[0].weight == doctest::Approx(1.0));
  CHECK(std::abs(out.atoms()[0].z[0] - 1.0) < 1e-14);
}

TEST_CASE("additive map image equals the measure of the matrix sum") {
  auto [t1, t2] = shear_pair();
  JointDecomposition dec = joint_decompose(CommutingTuple({t1, t2}));
  AtomicMeasure pushed = pushforward(brown_measure(dec), MapDescriptor::add2());
  REQUIRE(pushed.atoms().size() == 2);
  CHECK(std::abs(pushed.atoms()[0].z[0] - 4.0) < 1e-10);
  CHECK(std::abs(pushed.atoms()[1].z[0] - 6.0) < 1e-10);
  AtomicMeasure direct = brown_measure(decompose_single(t1 + t2));
  CHECK(measure_distance(pushed, direct) <= 1e-8);
}

TEST_CASE("product measures") {
  AtomicMeasure mu = meas({{Complex(1, 0), 0.5}, {Complex(2, 0), 0.5}});
  AtomicMeasure nu = meas({{Complex(3, 0), 0.5}, {Complex(4, 0), 0.5}});
  AtomicMeasure prod = product_measure(mu, nu);
  CHECK(prod.dim() == 2);
  REQUIRE(prod.atoms().size() == 4);
  for (const auto& a : prod.atoms()) CHECK(a.weight == doctest::Approx(0.25));

  AtomicMeasure with_delta = product_measure(AtomicMeasure::dirac({Complex(0, 0)}), mu);
  REQUIRE(with_delta.atoms().size() == 2);
  CHECK(with_delta.atoms()[0].z[0] == Complex(0, 0));
}

TEST_CASE("product measure matches the kronecker pair") {
  GeneratedModel model = make_kronecker_pair(3, 4, 5);
  AtomicMeasure mu = brown_measure(joint_decompose(CommutingTuple(model.mats)));
  CHECK(measure_distance(mu, *model.oracle) <= 1e-8);
}

TEST_CASE("convolutions") {
  AtomicMeasure mu = meas({{Complex(1, 0), 0.5}, {Complex(2, 0), 0.5}});
  AtomicMeasure nu = meas({{Complex(3, 0), 0.5}, {Complex(4, 0), 0.5}});
  AtomicMeasure sum = convolve_additive(mu, nu);
  REQUIRE(sum.atoms().size() == 3);
  CHECK(std::abs(sum.atoms()[0].z[0] - 4.0) < 1e-14);
  CHECK(sum.atoms()[0].weight == doctest::Approx(0.25));
  CHECK(sum.atoms()[1].weight == doctest::Approx(0.5));
  CHECK(sum.atoms()[2].weight == doctest::Approx(0.25));

  // delta shifts and delta_1 multiplication
  AtomicMeasure shifted = convolve_additive(AtomicMeasure::dirac({Complex(5, 0)}), mu);
  CHECK(std::abs(shifted.atoms()[0].z[0] - 6.0) < 1e-14);
  AtomicMeasure same = convolve_multiplicative(AtomicMeasure::dirac({Complex(1, 0)}), mu);
  CHECK(measure_distance(same, mu) <= 1e-12);
}

TEST_CASE("measure distance is a faithful comparator") {
  AtomicMeasure mu = meas({{Complex(1, 0), 0.25}, {Complex(2, 0), 0.75}});
  CHECK(measure_distance(mu, mu) == 0.0);
  AtomicMeasure rev = meas({{Complex(2, 0), 0.75}, {Complex(1, 0), 0.25}});
  CHECK(measure_distance(mu, rev) == 0.0);
  AtomicMeasure eps = meas({{Complex(1e-5, 0), 1.0}});
  AtomicMeasure zero = meas({{Complex(0, 0), 1.0}});
  CHECK(measure_distance(zero, eps) == doctest::Approx(1e-5));
  CHECK(measure_distance(eps, zero) == doctest::Approx(1e-5));
  // extra atom costs its weight
  AtomicMeasure split = meas({{Complex(1, 0), 0.25}, {Complex(2, 0), 0.5}, {Complex(9, 0), 0.25}});
  CHECK(measure_distance(mu, split) == doctest::Approx(0.5));
}

TEST_CASE("pushforward is functorial over permutations") {
  GeneratedModel model = make_conjugated_diagonal(5, 3, 31, 10.0);
  AtomicMeasure mu = *model.oracle;
  const std::vector<int> rho{1, 2, 0};
  const std::vector<int> sigma{2, 0, 1};
  AtomicMeasure two_step =
      pushforward(pushforward(mu, MapDescriptor::permutation(rho)), MapDescriptor::permutation(sigma));
  // applying rho then sigma reads coordinate rho[sigma[i]] of the original
  std::vector<int> comp(3);
  for (int i = 0; i < 3; ++i) comp[i] = rho[sigma[i]];
  AtomicMeasure one_step = pushforward(mu, MapDescriptor::permutation(comp));
  CHECK(measure_distance(two_step, one_step) == 0.0);
}

TEST_CASE("duplication map matches the extended tuple") {
  GeneratedModel model = make_conjugated_diagonal(4, 2, 37, 15.0);
  std::vector<ComplexMatrix> extended = model.mats;
  extended.push_back(model.mats[0]);  // (T1, T2, T1)
  AtomicMeasure direct = brown_measure(joint_decompose(CommutingTuple(extended)));
  AtomicMeasure pushed = pushforward(brown_measure(joint_decompose(CommutingTuple(model.mats))),
                                     MapDescriptor::duplicate(2, 0));
  CHECK(measure_distance(direct, pushed) <= 1e-8);
}

TEST_CASE("scale-pair map matches scaled operators, including a zero factor") {
  GeneratedModel model = make_conjugated_diagonal(4, 2, 41, 15.0);
  AtomicMeasure mu = brown_measure(joint_decompose(CommutingTuple(model.mats)));
  for (Complex alpha : {Complex(2, 1), Complex(0, 0)}) {
    const Complex beta(0.5, -1);
    AtomicMeasure pushed = pushforward(mu, MapDescriptor::scale_pair(alpha, beta));
    AtomicMeasure direct = brown_measure(
        joint_decompose(CommutingTuple({alpha * model.mats[0], beta * model.mats[1]})));
    CHECK(measure_distance(pushed, direct) <= 1e-8);
  }
}

TEST_CASE("the worked degree-3 polynomial factors through the descriptor pipeline") {
  GeneratedModel model = make_conjugated_diagonal(5, 3, 43, 10.0);
  CommutingTuple tuple(model.mats);
  AtomicMeasure mu = brown_measure(joint_decompose(tuple));

  // q(z1,z2,z3) = 1 + 2 z2^2 + z1 z2 z3
  Polynomial q;
  q.nvars = 3;
  q.terms[{0, 0, 0}] = 1.0;
  q.terms[{0, 2, 0}] = 2.0;
  q.terms[{1, 1, 1}] = 1.0;

  const std::vector<MapDescriptor> pipeline{
      MapDescriptor::duplicate(3, 1),            // (z1,z2,z3,z2)
      MapDescriptor::duplicate(4, 1),            // (z1,z2,z3,z2,z2)
      MapDescriptor::permutation({1, 3, 0, 4, 2}),  // (z2,z2,z1,z2,z3)
      MapDescriptor::permutation({2, 3, 4, 0, 1}),  // (z1,z2,z3,z2,z2)
      MapDescriptor::mul_last(4, Complex(2, 0)),    // (z1,z2,z3,2 z2^2)
      MapDescriptor::permutation({3, 0, 1, 2}),     // (2 z2^2, z1, z2, z3)
      MapDescriptor::mul_last(3, Complex(1, 0)),    // (2 z2^2, z1, z2 z3)
      MapDescriptor::mul_last(2, Complex(1, 0)),    // (2 z2^2, z1 z2 z3)
      MapDescriptor::add_last(1),                   // (q - 1)
      MapDescriptor::shift1(Complex(1, 0)),         // q
  };
  AtomicMeasure factored = mu;
  for (const auto& step : pipeline) factored = pushforward(factored, step);

  AtomicMeasure direct = pushforward(mu, MapDescriptor::polynomial(q));
  CHECK(measure_distance(factored, direct) <= 1e-8);

  AtomicMeasure matrix_route = brown_measure(decompose_single(evaluate_polynomial(tuple, q)));
  CHECK(measure_distance(factored, matrix_route) <= 1e-8);
}

TEST_CASE("distribution extension on the diagonal pair at depth 3") {
  JointDecomposition dec =
      joint_decompose(CommutingTuple({diag({0.0, 1.0, 2.0}), diag({0.5, 1.5, 2.5})}));
  Report rep = verify_distribution_extension(dec, 3);
  CHECK(rep.pass());
}

TEST_CASE("distribution extension with S = T sits on the diagonal") {
  GeneratedModel model = make_conjugated_diagonal(4, 1, 47, 10.0);
  JointDecomposition dec =
      joint_decompose(CommutingTuple({model.mats[0], model.mats[0]}));
  Report rep = verify_distribution_extension(dec, 3);
  CHECK(rep.pass());
  AtomicMeasure mu = brown_measure(dec);
  for (const auto& a : mu.atoms()) CHECK(std::abs(a.z[0] - a.z[1]) < 1e-9);
}

TEST_CASE("distribution extension with a single cluster") {
  ComplexMatrix n(2, 2);
  n << 0, 1, 0, 0;
  JointDecomposition dec = joint_decompose(CommutingTuple({n, n * n}));
  Report rep = verify_distribution_extension(dec, 2);
  CHECK(rep.pass());
}
