#pragma once

#include <array>
#include <memory>
#include <optional>

#include "brown/map.hpp"

namespace brown {

/// Axis-aligned bounds, one [re_lo, re_hi, im_lo, im_hi] per complex coordinate.
struct BBox {
  std::vector<std::array<double, 4>> coords;
};

/// A Borel-set descriptor over C^n with exact, decidable membership.
///
/// Expression tree over the primitives {half-open box I(z,delta), open ball,
/// closed ball, full space, empty} closed under union, intersection,
/// complement, cartesian product and preimage under a MapDescriptor.
class Region {
public:
  struct HalfOpenBox {
    Complex center;
    double delta;
  };
  struct OpenBall {
    Point center;
    double radius;
  };
  struct ClosedBall {
    Point center;
    double radius;
  };
  struct Full {
    int dim;
  };
  struct Empty {
    int dim;
  };
  struct Union;
  struct Intersection;
  struct Complement;
  struct Product;
  struct Preimage;

  /// Half-open square I(z,delta): Re z - d < Re w <= Re z + d (and Im alike).
  static Region box(Complex center, double delta);
  static Region open_ball(Point center, double radius);
  static Region closed_ball(Point center, double radius);
  static Region full(int dim);
  static Region empty(int dim);
  static Region product(Region a, Region b);
  static Region preimage(MapDescriptor map, Region target);

  Region operator|(const Region& other) const;
  Region operator&(const Region& other) const;
  Region operator~() const;

  int dim() const;
  bool contains(const Point& p) const;
  /// Membership test for a 1-dim region.
  bool contains(Complex z) const { return contains(Point{z}); }

  /// Conservative lower bound on the distance from p to the region boundary
  /// (through preimage nodes the margin is measured in the image space).
  double boundary_margin(const Point& p) const;

  /// Exact-conservative test: closure of B(center, radius) inside the region.
  /// May answer false on straddling unions; never answers true incorrectly.
  bool contains_closed_ball(const Point& center, double radius) const;

  /// Exact-conservative disjointness of the closed ball from the region.
  bool disjoint_closed_ball(const Point& center, double radius) const;

  std::optional<BBox> bounding_box() const;

  using Variant =
      std::variant<HalfOpenBox, OpenBall, ClosedBall, Full, Empty, std::shared_ptr<const Union>,
                   std::shared_ptr<const Intersection>, std::shared_ptr<const Complement>,
                   std::shared_ptr<const Product>, std::shared_ptr<const Preimage>>;

  const Variant& node() const { return node_; }

private:
  explicit Region(Variant v) : node_(std::move(v)) {}
  Variant node_;
};

struct Region::Union {
  Region a, b;
};
struct Region::Intersection {
  Region a, b;
};
struct Region::Complement {
  Region a;
};
struct Region::Product {
  Region a, b;
};
struct Region::Preimage {
  MapDescriptor map;
  Region target;
};

}  // namespace brown
