#include "brown/cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>

#include "brown/linalg.hpp"

namespace brown {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Center of the level-m lattice cell containing x. Level 0 boxes have
// half-width 1 with edges on odd integers; each refinement cuts a box into 4.
double cell_center_1d(double x, int level) {
  const double delta = std::ldexp(1.0, -level);
  if (level == 0) return 2.0 * std::ceil((x - 1.0) / 2.0);
  const double k = std::ceil(x / (2.0 * delta)) - 1.0;
  return (2.0 * k + 1.0) * delta;
}

Complex cell_center(Complex p, int level) {
  return {cell_center_1d(p.real(), level), cell_center_1d(p.imag(), level)};
}

double safety_radius(CoverMap map, Complex z, Complex w, double delta, double norm_bound) {
  if (map == CoverMap::add) return 2.0 * kSqrt2 * delta;
  // paper radius sqrt2 d (||T|| + |z|), enlarged if needed so that the whole
  // box maps inside the ball
  const double paper = kSqrt2 * delta * (norm_bound + std::abs(z));
  const double box = kSqrt2 * delta * (std::abs(z) + std::abs(w) + kSqrt2 * delta);
  return std::max(paper, box);
}

Complex map_point(CoverMap map, Complex z, Complex w) {
  return map == CoverMap::add ? z + w : z * w;
}

bool box_safe(const Region& u, CoverMap map, Complex z, Complex w, double delta,
              double norm_bound) {
  // slight inflation keeps rounding from admitting a radius whose exact value
  // grazes the target boundary
  const double r = safety_radius(map, z, w, delta, norm_bound) * (1.0 + 1e-9);
  return u.contains_closed_ball({map_point(map, z, w)}, r);
}

// First level at which the cell pair around the seed becomes safe; this is
// exactly the canonical cover member covering the seed.
std::optional<CoverBox> first_safe(const Region& u, CoverMap map, Complex z0, Complex w0,
                                   int depth, double norm_bound) {
  for (int m = 0; m <= depth; ++m) {
    const double delta = std::ldexp(1.0, -m);
    const Complex z = cell_center(z0, m);
    const Complex w = cell_center(w0, m);
    if (box_safe(u, map, z, w, delta, norm_bound)) return CoverBox{z, w, delta, m};
  }
  return std::nullopt;
}

}  // namespace

BoxCover dyadic_cover(const Region& u, CoverMap map, int depth, double norm_bound,
                      const AtomicMeasure* guide, double window, const Tolerances& tol) {
  detail::require(u.dim() == 1, ErrorCode::dimension_mismatch,
                  "dyadic_cover: target must be a region over C");
  detail::require(depth >= 0 && depth <= 12, ErrorCode::invalid_argument,
                  "dyadic_cover: depth must lie in [0, 12]");
  detail::require(map == CoverMap::add || norm_bound > 0, ErrorCode::invalid_argument,
                  "dyadic_cover: multiplicative covers need a norm bound");

  BoxCover cover{u, map, depth, norm_bound, {}, 1.0};

  if (window <= 0) {
    window = 4.0;
    if (auto bb = u.bounding_box()) {
      for (double v : bb->coords[0]) window = std::max(window, std::abs(v));
      window += 4.0;
    }
    if (guide)
      for (const auto& a : guide->atoms())
        for (const Complex& z : a.z) window = std::max(window, std::abs(z) + 2.0);
  }

  // seed points: guide atoms plus a probe lattice over the window
  std::vector<std::pair<Complex, Complex>> seeds;
  if (guide) {
    detail::require(guide->dim() == 2, ErrorCode::dimension_mismatch,
                    "dyadic_cover: guide measure must live on C^2");
    for (const auto& a : guide->atoms()) seeds.emplace_back(a.z[0], a.z[1]);
  }
  const int probes = 9;
  const double bias = 0.0137;  // keep probes off cell edges
  for (int a = 0; a < probes; ++a)
    for (int b = 0; b < probes; ++b)
      for (int c = 0; c < probes; ++c)
        for (int e = 0; e < probes; ++e) {
          auto coord = [&](int k) { return -window + (2.0 * window) * (k + 0.5) / probes + bias; };
          seeds.emplace_back(Complex(coord(a), coord(b)), Complex(coord(c), coord(e)));
        }

  std::map<std::tuple<int, long long, long long, long long, long long>, CoverBox> emitted;
  double covered_mass = 0.0, preimage_mass = 0.0;
  auto visit = [&](Complex z0, Complex w0, double weight) {
    const bool in_preimage = u.contains(map_point(map, z0, w0));
    if (weight > 0 && in_preimage) preimage_mass += weight;
    auto box = first_safe(u, map, z0, w0, depth, norm_bound);
    if (!box) return;
    if (weight > 0 && in_preimage) covered_mass += weight;
    const double inv = 1.0 / box->delta;
    emitted.emplace(std::make_tuple(box->level, std::llround(box->z.real() * inv),
                                    std::llround(box->z.imag() * inv),
                                    std::llround(box->w.real() * inv),
                                    std::llround(box->w.imag() * inv)),
                    *box);
  };
  std::size_t guide_count = guide ? guide->atoms().size() : 0;
  for (std::size_t i = 0; i < seeds.size(); ++i)
    visit(seeds[i].first, seeds[i].second,
          i < guide_count ? guide->atoms()[i].weight : 0.0);

  cover.boxes.reserve(emitted.size());
  for (auto& [key, box] : emitted) cover.boxes.push_back(box);
  auto box_key = [](const CoverBox& b) {
    return std::make_tuple(b.level, b.z.real(), b.z.imag(), b.w.real(), b.w.imag());
  };
  std::sort(cover.boxes.begin(), cover.boxes.end(),
            [&](const CoverBox& a, const CoverBox& b) { return box_key(a) < box_key(b); });
  if (guide) cover.covered_fraction = preimage_mass > 0 ? covered_mass / preimage_mass : 1.0;
  return cover;
}

Report check_cover(const BoxCover& cover, const Tolerances& tol) {
  Report rep;
  rep.title = "box-cover";

  bool disjoint = true;
  auto axis_disjoint = [](double c1, double d1, double c2, double d2) {
    return c1 + d1 <= c2 - d2 || c2 + d2 <= c1 - d1;
  };
  for (std::size_t i = 0; i < cover.boxes.size() && disjoint; ++i) {
    for (std::size_t j = i + 1; j < cover.boxes.size(); ++j) {
      const auto& a = cover.boxes[i];
      const auto& b = cover.boxes[j];
      const bool dj =
          axis_disjoint(a.z.real(), a.delta, b.z.real(), b.delta) ||
          axis_disjoint(a.z.imag(), a.delta, b.z.imag(), b.delta) ||
          axis_disjoint(a.w.real(), a.delta, b.w.real(), b.delta) ||
          axis_disjoint(a.w.imag(), a.delta, b.w.imag(), b.delta);
      if (!dj) {
        disjoint = false;
        break;
      }
    }
  }
  rep.add_flag("boxes pairwise disjoint (exact half-open)", disjoint,
               static_cast<double>(cover.boxes.size()));

  bool safe = true;
  bool corners = true;
  for (const auto& b : cover.boxes) {
    if (!box_safe(cover.target, cover.map, b.z, b.w, b.delta, cover.norm_bound)) safe = false;
    for (int sz = 0; sz < 4 && corners; ++sz) {
      for (int sw = 0; sw < 4; ++sw) {
        const Complex cz = b.z + b.delta * Complex(sz & 1 ? 1 : -1, sz & 2 ? 1 : -1);
        const Complex cw = b.w + b.delta * Complex(sw & 1 ? 1 : -1, sw & 2 ? 1 : -1);
        if (!cover.target.contains(map_point(cover.map, cz, cw))) {
          corners = false;
          break;
        }
      }
    }
  }
  rep.add_flag("safety ball inclusion holds for every box", safe);
  rep.add_flag("corner images lie in the target", corners);
  return rep;
}

Report verify_preimage_projection(const JointDecomposition& dec, const Region& u, int depth,
                                  const Tolerances& tol) {
  Report rep;
  rep.title = "preimage-projection";
  detail::require(dec.n() == 2, ErrorCode::invalid_argument,
                  "verify_preimage_projection: pair decompositions only");
  const ComplexMatrix& s = dec.tuple().mat(0);
  const ComplexMatrix& t = dec.tuple().mat(1);
  const int d = dec.dim();

  const AtomicMeasure mu = brown_measure(dec, tol);
  JointDecomposition ds = decompose_single(s, tol);
  JointDecomposition dt = decompose_single(t, tol);

  struct Route {
    CoverMap map;
    const char* name;
    ComplexMatrix combined;
    double norm_bound;
    MapDescriptor desc;
  };
  const std::vector<Route> routes = {
      {CoverMap::add, "additive", s + t, 0.0, MapDescriptor::add2()},
      {CoverMap::multiply, "multiplicative", s * t, operator_norm(t), MapDescriptor::mul2()},
  };

  for (const auto& route : routes) {
    BoxCover cover = dyadic_cover(u, route.map, depth, route.norm_bound, &mu, 0.0, tol);
    Report cc = check_cover(cover, tol);
    rep.add_flag(std::string(route.name) + ": cover passes exact checks", cc.pass(),
                 static_cast<double>(cover.boxes.size()));
    rep.add_flag(std::string(route.name) + ": cover reaches the preimage atoms",
                 cover.covered_fraction >= 1.0, cover.covered_fraction);

    Subspace join = Subspace::zero(d);
    for (const auto& b : cover.boxes) {
      Subspace ps = spectral_projection(ds, Region::box(b.z, b.delta), tol);
      if (ps.dim() == 0) continue;
      Subspace pt = spectral_projection(dt, Region::box(b.w, b.delta), tol);
      if (pt.dim() == 0) continue;
      join = subspace_join(join, subspace_meet(ps, pt, tol), tol);
    }

    JointDecomposition dcomb = decompose_single(route.combined, tol);
    Subspace p_comb = spectral_projection(dcomb, u, tol);
    rep.add_flag(std::string(route.name) + ": cover join <= P(combined in U)",
                 subspace_contains(p_comb, join, tol));

    Subspace direct = spectral_projection(dec, Region::preimage(route.desc, u), tol);
    rep.add(std::string(route.name) + ": cover join vs direct preimage projection",
            subspace_distance(join, direct), tol.subspace_dist);
    rep.add(std::string(route.name) + ": combined route vs preimage route",
            subspace_distance(p_comb, direct), tol.subspace_dist);
  }
  return rep;
}

Report verify_general_borel(const JointDecomposition& dec, const Region& b,
                            const std::vector<Region>& opens, const Tolerances& tol) {
  Report rep;
  rep.title = "general-borel";
  Subspace running = Subspace::full(dec.dim());
  Subspace pb = spectral_projection(dec, b, tol);

  bool separated = false;
  for (const auto& u : opens) {
    bool covers = true;
    bool matches = true;
    for (const auto& c : dec.clusters()) {
      const bool in_b = b.contains(c.point);
      const bool in_u = u.contains(c.point);
      if (in_b && !in_u) covers = false;
      if (in_b != in_u) matches = false;
    }
    detail::require(covers, ErrorCode::invalid_argument,
                    "verify_general_borel: an open misses part of B on the clusters");
    running = subspace_meet(running, spectral_projection(dec, u, tol), tol);
    if (matches) separated = true;
  }
  rep.add_flag("opens eventually separate the clusters", separated);
  rep.add("meet of P(U_k) vs P(B)", subspace_distance(running, pb), tol.subspace_dist);
  return rep;
}

}  // namespace brown
