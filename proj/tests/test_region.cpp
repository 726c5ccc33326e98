#include <doctest.h>

#include "brown/region.hpp"
#include "brown/serialize.hpp"

using namespace brown;

TEST_CASE("half-open box honors its boundaries exactly") {
  Region b = Region::box(Complex(0, 0), 1.0);
  CHECK(b.contains(Complex(1.0, 1.0)));     // upper edges included
  CHECK(!b.contains(Complex(-1.0, 0.0)));   // lower edges excluded
  CHECK(!b.contains(Complex(1.0000001, 0)));
  CHECK(b.contains(Complex(-0.9999999, 0)));
}

TEST_CASE("complement of the full space contains nothing") {
  Region r = ~Region::full(1);
  CHECK(!r.contains(Complex(0, 0)));
  CHECK(!r.contains(Complex(123, -7)));
}

TEST_CASE("balls, unions, intersections") {
  Region u = Region::open_ball({Complex(0, 0)}, 1.0) | Region::open_ball({Complex(3, 0)}, 1.0);
  CHECK(u.contains(Complex(0.5, 0)));
  CHECK(u.contains(Complex(3.2, 0)));
  CHECK(!u.contains(Complex(1.5, 0)));
  Region i = Region::closed_ball({Complex(0, 0)}, 1.0) & Region::closed_ball({Complex(1, 0)}, 1.0);
  CHECK(i.contains(Complex(0.5, 0)));
  CHECK(!i.contains(Complex(-0.5, 0)));
  CHECK(i.contains(Complex(0.0, 0)));  // on the closed boundary of the second
}

TEST_CASE("products and preimages") {
  Region prod = Region::product(Region::box(Complex(0, 0), 1.0), Region::box(Complex(4, 0), 1.0));
  CHECK(prod.dim() == 2);
  CHECK(prod.contains(Point{Complex(0.5, 0.5), Complex(4.5, -0.5)}));
  CHECK(!prod.contains(Point{Complex(0.5, 0.5), Complex(2.0, 0)}));

  Region pre = Region::preimage(MapDescriptor::add2(), Region::open_ball({Complex(1, 0)}, 0.5));
  CHECK(pre.dim() == 2);
  CHECK(pre.contains(Point{Complex(0.4, 0), Complex(0.7, 0)}));
  CHECK(!pre.contains(Point{Complex(2, 0), Complex(2, 0)}));
}

TEST_CASE("boundary margins are conservative distances") {
  Region ball = Region::open_ball({Complex(0, 0)}, 1.0);
  CHECK(ball.boundary_margin({Complex(0, 0)}) == doctest::Approx(1.0));
  CHECK(ball.boundary_margin({Complex(2, 0)}) == doctest::Approx(1.0));
  Region box = Region::box(Complex(0, 0), 1.0);
  CHECK(box.boundary_margin({Complex(0.25, 0)}) == doctest::Approx(0.75));
  CHECK(Region::full(1).boundary_margin({Complex(5, 5)}) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("closed-ball inclusion and disjointness are exact on primitives") {
  Region u = Region::open_ball({Complex(0, 0)}, 2.0);
  CHECK(u.contains_closed_ball({Complex(0.5, 0)}, 1.0));
  CHECK(!u.contains_closed_ball({Complex(1.5, 0)}, 0.5));  // touches the boundary
  CHECK(u.disjoint_closed_ball({Complex(5, 0)}, 1.0));
  CHECK(!u.disjoint_closed_ball({Complex(2.0, 0)}, 0.5));

  Region box = Region::box(Complex(0, 0), 1.0);
  CHECK(box.contains_closed_ball({Complex(0.5, 0.5)}, 0.5));   // upper corner allowed
  CHECK(!box.contains_closed_ball({Complex(-0.5, 0)}, 0.5));   // open lower edge
  Region comp = ~box;
  CHECK(comp.contains_closed_ball({Complex(5, 5)}, 1.0));
}

TEST_CASE("bounding boxes combine across the tree") {
  Region u = Region::box(Complex(0, 0), 1.0) | Region::open_ball({Complex(4, 0)}, 1.0);
  auto bb = u.bounding_box();
  REQUIRE(bb.has_value());
  CHECK(bb->coords[0][0] == doctest::Approx(-1.0));
  CHECK(bb->coords[0][1] == doctest::Approx(5.0));
  CHECK(!Region::full(1).bounding_box().has_value());
  CHECK(!(~u).bounding_box().has_value());
}

TEST_CASE("region json round-trip preserves membership") {
  Region r = Region::preimage(
      MapDescriptor::add2(),
      (Region::box(Complex(0.5, -0.25), 0.75) | Region::open_ball({Complex(2, 1)}, 0.5)) &
          ~Region::closed_ball({Complex(0, 0)}, 0.1));
  Region back = region_from_json(region_to_json(r));
  for (double x : {-0.3, 0.1, 0.4, 0.9, 1.7}) {
    for (double y : {-0.9, 0.0, 0.6}) {
      Point p{Complex(x, y), Complex(y, x)};
      CHECK(r.contains(p) == back.contains(p));
    }
  }
}

TEST_CASE("map descriptors apply and round-trip") {
  MapDescriptor a = MapDescriptor::add_last(2);   // C^3 -> C^2
  Point z{Complex(1, 0), Complex(2, 0), Complex(3, 0)};
  Point az = a.apply(z);
  CHECK(az.size() == 2);
  CHECK(az[1] == Complex(5, 0));

  MapDescriptor m = MapDescriptor::mul_last(1, Complex(2, 0));
  Point mz = m.apply({Complex(3, 0), Complex(4, 0)});
  CHECK(mz[0] == Complex(24, 0));

  MapDescriptor s = MapDescriptor::scale_pair(Complex(0, 1), Complex(2, 0));
  Point sz = s.apply({Complex(1, 0), Complex(1, 0)});
  CHECK(sz[0] == Complex(0, 1));

  MapDescriptor perm = MapDescriptor::permutation({2, 0, 1});
  Point pz = perm.apply({Complex(10, 0), Complex(20, 0), Complex(30, 0)});
  CHECK(pz[0] == Complex(30, 0));
  CHECK(pz[1] == Complex(10, 0));

  MapDescriptor dup = MapDescriptor::duplicate(3, 1);
  CHECK(dup.apply(z).back() == Complex(2, 0));

  for (const MapDescriptor& md : {a, m, s, perm, dup}) {
    MapDescriptor back = map_from_json(map_to_json(md));
    CHECK(back.in_dim() == md.in_dim());
    Point probe(md.in_dim());
    for (int i = 0; i < md.in_dim(); ++i) probe[i] = Complex(0.3 * i + 0.1, -0.2 * i);
    Point x = md.apply(probe), y = back.apply(probe);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) == 0.0);
  }
}

TEST_CASE("polynomial maps evaluate with multi-degree terms") {
  Polynomial q;
  q.nvars = 3;
  q.terms[{0, 0, 0}] = 1.0;
  q.terms[{0, 2, 0}] = 2.0;
  q.terms[{1, 1, 1}] = 1.0;
  CHECK(q.total_degree() == 3);
  // q(1,2,3) = 1 + 2*4 + 6 = 15
  CHECK(q.eval({Complex(1, 0), Complex(2, 0), Complex(3, 0)}) == Complex(15, 0));
}
