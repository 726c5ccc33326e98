#include <doctest.h>

#include "brown/cover.hpp"
#include "brown/linalg.hpp"
#include "brown/models.hpp"

using namespace brown;

namespace {
Region ball1(Complex c, double r) { return Region::open_ball({c}, r); }
}  // namespace

TEST_CASE("level-zero box pair around the origin for a wide target") {
  BoxCover cover = dyadic_cover(Region::open_ball({Complex(0, 0)}, 4.0), CoverMap::add, 1);
  bool found = false;
  for (const auto& b : cover.boxes)
    if (b.level == 0 && std::abs(b.z) < 1e-12 && std::abs(b.w) < 1e-12 && b.delta == 1.0)
      found = true;
  CHECK(found);  // 2 sqrt 2 < 4, so I(0,1) x I(0,1) is safe at level 0
  CHECK(check_cover(cover).pass());
}

TEST_CASE("empty target emits nothing") {
  BoxCover cover = dyadic_cover(Region::empty(1), CoverMap::add, 3);
  CHECK(cover.boxes.empty());
}

TEST_CASE("small target yields nothing shallow, then fills in deeper") {
  Region u = ball1(Complex(0, 0), 0.1);
  BoxCover shallow = dyadic_cover(u, CoverMap::add, 1);
  CHECK(shallow.boxes.empty());  // 2 sqrt 2 delta > 0.1 down to level 4

  // guide the materialization with the preimage point (0,0)
  AtomicMeasure guide(2, {Atom{{Complex(0, 0), Complex(0, 0)}, 1.0}});
  BoxCover deep = dyadic_cover(u, CoverMap::add, 8, 0.0, &guide);
  CHECK(!deep.boxes.empty());
  CHECK(deep.covered_fraction == doctest::Approx(1.0));
  for (const auto& b : deep.boxes) CHECK(b.level >= 5);
  CHECK(check_cover(deep).pass());
}

TEST_CASE("coverage of guide mass is monotone in depth") {
  GeneratedModel model = make_conjugated_diagonal(5, 2, 71, 15.0);
  JointDecomposition dec = joint_decompose(CommutingTuple(model.mats));
  AtomicMeasure mu = brown_measure(dec);
  Region u = Region::open_ball({mu.atoms()[0].z[0] + mu.atoms()[0].z[1]}, 0.35);
  double prev = 0;
  for (int depth : {1, 3, 5, 7, 9}) {
    BoxCover cover = dyadic_cover(u, CoverMap::add, depth, 0.0, &mu);
    CHECK(cover.covered_fraction >= prev - 1e-12);
    prev = cover.covered_fraction;
    CHECK(check_cover(cover).pass());
  }
  CHECK(prev == doctest::Approx(1.0));
}

TEST_CASE("multiplicative covers carry the norm-scaled safety radius") {
  GeneratedModel model = make_conjugated_diagonal(4, 2, 73, 10.0);
  JointDecomposition dec = joint_decompose(CommutingTuple(model.mats));
  AtomicMeasure mu = brown_measure(dec);
  const Complex target = mu.atoms()[1].z[0] * mu.atoms()[1].z[1];
  Region u = Region::open_ball({target}, 0.4);
  const double nb = operator_norm(dec.tuple().mat(1));
  BoxCover cover = dyadic_cover(u, CoverMap::multiply, 9, nb, &mu);
  CHECK(!cover.boxes.empty());
  CHECK(check_cover(cover).pass());
  CHECK_THROWS_AS(dyadic_cover(u, CoverMap::multiply, 9, 0.0, &mu), Error);
}

TEST_CASE("preimage projections: additive and multiplicative routes agree") {
  GeneratedModel model = make_conjugated_diagonal(5, 2, 79, 15.0);
  JointDecomposition dec = joint_decompose(CommutingTuple(model.mats));
  AtomicMeasure mu = brown_measure(dec);

  SUBCASE("ball capturing one sum atom") {
    Region u = Region::open_ball({mu.atoms()[2].z[0] + mu.atoms()[2].z[1]}, 0.15);
    Report rep = verify_preimage_projection(dec, u, 10);
    INFO(report_to_string(rep));
    CHECK(rep.pass());
  }
  SUBCASE("target containing everything") {
    Region u = Region::open_ball({Complex(0, 0)}, 50.0);
    Report rep = verify_preimage_projection(dec, u, 6);
    CHECK(rep.pass());
    // both routes are the identity here
    Subspace all = spectral_projection(dec, Region::preimage(MapDescriptor::add2(), u));
    CHECK(all.dim() == 5);
  }
  SUBCASE("target missing every atom") {
    Region u = Region::open_ball({Complex(40, 40)}, 0.5);
    Report rep = verify_preimage_projection(dec, u, 5);
    CHECK(rep.pass());
    Subspace none = spectral_projection(dec, Region::preimage(MapDescriptor::add2(), u));
    CHECK(none.dim() == 0);
  }
}

TEST_CASE("general borel meets stabilize once the opens separate") {
  GeneratedModel model = make_conjugated_diagonal(5, 2, 83, 15.0);
  JointDecomposition dec = joint_decompose(CommutingTuple(model.mats));
  AtomicMeasure mu = brown_measure(dec);
  const Point& atom = mu.atoms()[1].z;

  SUBCASE("single point as a shrinking-ball limit") {
    Region b = Region::closed_ball(atom, 1e-6);
    std::vector<Region> opens;
    for (int k = 0; k < 8; ++k) opens.push_back(Region::open_ball(atom, std::ldexp(1.0, -k)));
    Report rep = verify_general_borel(dec, b, opens);
    CHECK(rep.pass());
  }
  SUBCASE("full space at every stage") {
    std::vector<Region> opens{Region::full(2), Region::full(2)};
    CHECK(verify_general_borel(dec, Region::full(2), opens).pass());
  }
  SUBCASE("empty set via shrinking annuli missing the atoms") {
    Region b = Region::empty(2);
    std::vector<Region> opens;
    for (int k = 0; k < 4; ++k)
      opens.push_back(Region::open_ball({Complex(30, 0), Complex(0, 30)}, std::ldexp(1.0, -k)));
    Report rep = verify_general_borel(dec, b, opens);
    CHECK(rep.pass());
  }
}
