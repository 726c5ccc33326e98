#include "brown/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace brown {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double point_dist(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

void check_dim(int expect, const Point& p, const char* what) {
  detail::require(static_cast<int>(p.size()) == expect, ErrorCode::dimension_mismatch,
                  std::string(what) + ": point dimension mismatch");
}

// Distance from a point in C to the boundary of the square of half-width
// delta centered at z (half-openness is irrelevant for the margin).
double square_boundary_dist(Complex z, double delta, Complex w) {
  const double dx = std::abs(w.real() - z.real());
  const double dy = std::abs(w.imag() - z.imag());
  if (dx <= delta && dy <= delta) return delta - std::max(dx, dy);
  const double ox = std::max(dx - delta, 0.0);
  const double oy = std::max(dy - delta, 0.0);
  return std::hypot(ox, oy);
}

}  // namespace

Region Region::box(Complex center, double delta) {
  detail::require(delta > 0, ErrorCode::invalid_argument, "Region::box: delta must be positive");
  return Region(HalfOpenBox{center, delta});
}
Region Region::open_ball(Point center, double radius) {
  detail::require(radius >= 0, ErrorCode::invalid_argument, "Region::open_ball: negative radius");
  return Region(OpenBall{std::move(center), radius});
}
Region Region::closed_ball(Point center, double radius) {
  detail::require(radius >= 0, ErrorCode::invalid_argument, "Region::closed_ball: negative radius");
  return Region(ClosedBall{std::move(center), radius});
}
Region Region::full(int dim) { return Region(Full{dim}); }
Region Region::empty(int dim) { return Region(Empty{dim}); }

Region Region::product(Region a, Region b) {
  return Region(std::make_shared<const Product>(Product{std::move(a), std::move(b)}));
}

Region Region::preimage(MapDescriptor map, Region target) {
  detail::require(map.out_dim() == target.dim(), ErrorCode::dimension_mismatch,
                  "Region::preimage: map range dimension does not match target region");
  return Region(std::make_shared<const Preimage>(Preimage{std::move(map), std::move(target)}));
}

Region Region::operator|(const Region& other) const {
  detail::require(dim() == other.dim(), ErrorCode::dimension_mismatch, "Region union: dim mismatch");
  return Region(std::make_shared<const Union>(Union{*this, other}));
}
Region Region::operator&(const Region& other) const {
  detail::require(dim() == other.dim(), ErrorCode::dimension_mismatch,
                  "Region intersection: dim mismatch");
  return Region(std::make_shared<const Intersection>(Intersection{*this, other}));
}
Region Region::operator~() const {
  return Region(std::make_shared<const Complement>(Complement{*this}));
}

int Region::dim() const {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HalfOpenBox>) return 1;
        else if constexpr (std::is_same_v<T, OpenBall>) return static_cast<int>(n.center.size());
        else if constexpr (std::is_same_v<T, ClosedBall>) return static_cast<int>(n.center.size());
        else if constexpr (std::is_same_v<T, Full>) return n.dim;
        else if constexpr (std::is_same_v<T, Empty>) return n.dim;
        else if constexpr (std::is_same_v<T, std::shared_ptr<const Union>>) return n->a.dim();
        else if constexpr (std::is_same_v<T, std::shared_ptr<const Intersection>>) return n->a.dim();
        else if constexpr (std::is_same_v<T, std::shared_ptr<const Complement>>) return n->a.dim();
        else if constexpr (std::is_same_v<T, std::shared_ptr<const Product>>)
          return n->a.dim() + n->b.dim();
        else
          return n->map.in_dim();
      },
      node_);
}

bool Region::contains(const Point& p) const {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HalfOpenBox>) {
          check_dim(1, p, "Region::contains");
          const Complex w = p[0];
          return w.real() > n.center.real() - n.delta && w.real() <= n.center.real() + n.delta &&
                 w.imag() > n.center.imag() - n.delta && w.imag() <= n.center.imag() + n.delta;
        } else if constexpr (std::is_same_v<T, OpenBall>) {
          check_dim(static_cast<int>(n.center.size()), p, "Region::contains");
          return point_dist(p, n.center) < n.radius;
        } else if constexpr (std::is_same_v<T, ClosedBall>) {
          check_dim(static_cast<int>(n.center.size()), p, "Region::contains");
          return point_dist(p, n.center) <= n.radius;
        } else if constexpr (std::is_same_v<T, Full>) {
          check_dim(n.dim, p, "Region::contains");
          return true;
        } else if constexpr (std::is_same_v<T, Empty>) {
          check_dim(n.dim, p, "Region::contains");
          return false;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Union>>) {
          return n->a.contains(p) || n->b.contains(p);
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Intersection>>) {
          return n->a.contains(p) && n->b.contains(p);
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Complement>>) {
          return !n->a.contains(p);
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Product>>) {
          const int da = n->a.dim();
          Point pa(p.begin(), p.begin() + da);
          Point pb(p.begin() + da, p.end());
          return n->a.contains(pa) && n->b.contains(pb);
        } else {
          return n->target.contains(n->map.apply(p));
        }
      },
      node_);
}

double Region::boundary_margin(const Point& p) const {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HalfOpenBox>) {
          return square_boundary_dist(n.center, n.delta, p[0]);
        } else if constexpr (std::is_same_v<T, OpenBall> || std::is_same_v<T, ClosedBall>) {
          return std::abs(point_dist(p, n.center) - n.radius);
        } else if constexpr (std::is_same_v<T, Full> || std::is_same_v<T, Empty>) {
          return kInf;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Union>> ||
                             std::is_same_v<T, std::shared_ptr<const Intersection>>) {
          return std::min(n->a.boundary_margin(p), n->b.boundary_margin(p));
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Complement>>) {
          return n->a.boundary_margin(p);
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Product>>) {
          const int da = n->a.dim();
          Point pa(p.begin(), p.begin() + da);
          Point pb(p.begin() + da, p.end());
          return std::min(n->a.boundary_margin(pa), n->b.boundary_margin(pb));
        } else {
          return n->target.boundary_margin(n->map.apply(p));
        }
      },
      node_);
}

bool Region::contains_closed_ball(const Point& c, double r) const {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HalfOpenBox>) {
          const Complex w = c[0];
          return w.real() - r > n.center.real() - n.delta &&
                 w.real() + r <= n.center.real() + n.delta &&
                 w.imag() - r > n.center.imag() - n.delta &&
                 w.imag() + r <= n.center.imag() + n.delta;
        } else if constexpr (std::is_same_v<T, OpenBall>) {
          return point_dist(c, n.center) + r < n.radius;
        } else if constexpr (std::is_same_v<T, ClosedBall>) {
          return point_dist(c, n.center) + r <= n.radius;
        } else if constexpr (std::is_same_v<T, Full>) {
          return true;
        } else if constexpr (std::is_same_v<T, Empty>) {
          return false;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Union>>) {
          return n->a.contains_closed_ball(c, r) || n->b.contains_closed_ball(c, r);
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Intersection>>) {
          return n->a.contains_closed_ball(c, r) && n->b.contains_closed_ball(c, r);
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Complement>>) {
          return n->a.disjoint_closed_ball(c, r);
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Product>>) {
          const int da = n->a.dim();
          Point ca(c.begin(), c.begin() + da);
          Point cb(c.begin() + da, c.end());
          return n->a.contains_closed_ball(ca, r) && n->b.contains_closed_ball(cb, r);
        } else {
          return false;  // no Lipschitz data for general maps
        }
      },
      node_);
}

bool Region::disjoint_closed_ball(const Point& c, double r) const {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HalfOpenBox>) {
          // conservative: distance to the closed square
          const double ox = std::max(std::abs(c[0].real() - n.center.real()) - n.delta, 0.0);
          const double oy = std::max(std::abs(c[0].imag() - n.center.imag()) - n.delta, 0.0);
          return std::hypot(ox, oy) > r;
        } else if constexpr (std::is_same_v<T, OpenBall>) {
          return point_dist(c, n.center) >= n.radius + r;
        } else if constexpr (std::is_same_v<T, ClosedBall>) {
          return point_dist(c, n.center) > n.radius + r;
        } else if constexpr (std::is_same_v<T, Full>) {
          return false;
        } else if constexpr (std::is_same_v<T, Empty>) {
          return true;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Union>>) {
          return n->a.disjoint_closed_ball(c, r) && n->b.disjoint_closed_ball(c, r);
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Intersection>>) {
          return n->a.disjoint_closed_ball(c, r) || n->b.disjoint_closed_ball(c, r);
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Complement>>) {
          return n->a.contains_closed_ball(c, r);
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Product>>) {
          const int da = n->a.dim();
          Point ca(c.begin(), c.begin() + da);
          Point cb(c.begin() + da, c.end());
          return n->a.disjoint_closed_ball(ca, r) || n->b.disjoint_closed_ball(cb, r);
        } else {
          return false;
        }
      },
      node_);
}

std::optional<BBox> Region::bounding_box() const {
  return std::visit(
      [&](const auto& n) -> std::optional<BBox> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, HalfOpenBox>) {
          BBox b;
          b.coords.push_back({n.center.real() - n.delta, n.center.real() + n.delta,
                              n.center.imag() - n.delta, n.center.imag() + n.delta});
          return b;
        } else if constexpr (std::is_same_v<T, OpenBall> || std::is_same_v<T, ClosedBall>) {
          BBox b;
          for (const Complex& z : n.center)
            b.coords.push_back(
                {z.real() - n.radius, z.real() + n.radius, z.imag() - n.radius, z.imag() + n.radius});
          return b;
        } else if constexpr (std::is_same_v<T, Full>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Empty>) {
          BBox b;
          b.coords.assign(n.dim, {0, 0, 0, 0});
          return b;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Union>>) {
          auto ba = n->a.bounding_box();
          auto bb = n->b.bounding_box();
          if (!ba || !bb) return std::nullopt;
          BBox out = *ba;
          for (std::size_t i = 0; i < out.coords.size(); ++i) {
            out.coords[i][0] = std::min(out.coords[i][0], bb->coords[i][0]);
            out.coords[i][1] = std::max(out.coords[i][1], bb->coords[i][1]);
            out.coords[i][2] = std::min(out.coords[i][2], bb->coords[i][2]);
            out.coords[i][3] = std::max(out.coords[i][3], bb->coords[i][3]);
          }
          return out;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Intersection>>) {
          auto ba = n->a.bounding_box();
          auto bb = n->b.bounding_box();
          if (ba && !bb) return ba;
          if (!ba && bb) return bb;
          if (!ba) return std::nullopt;
          BBox out = *ba;
          for (std::size_t i = 0; i < out.coords.size(); ++i) {
            out.coords[i][0] = std::max(out.coords[i][0], bb->coords[i][0]);
            out.coords[i][1] = std::min(out.coords[i][1], bb->coords[i][1]);
            out.coords[i][2] = std::max(out.coords[i][2], bb->coords[i][2]);
            out.coords[i][3] = std::min(out.coords[i][3], bb->coords[i][3]);
          }
          return out;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Complement>>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Product>>) {
          auto ba = n->a.bounding_box();
          auto bb = n->b.bounding_box();
          if (!ba || !bb) return std::nullopt;
          BBox out = *ba;
          out.coords.insert(out.coords.end(), bb->coords.begin(), bb->coords.end());
          return out;
        } else {
          return std::nullopt;
        }
      },
      node_);
}

}  // namespace brown
