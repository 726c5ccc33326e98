#include "brown/measure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace brown {

namespace {

bool point_less(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

double point_dist(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

// Chained groups (transitive closure at merge_tol) collapse to their weighted
// means; repeated until atoms are separated.
std::vector<Atom> merge_atoms(std::vector<Atom> atoms, double merge_tol) {
  bool merged = true;
  while (merged) {
    merged = false;
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return point_less(a.z, b.z); });
    const int n = static_cast<int>(atoms.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (point_dist(atoms[i].z, atoms[j].z) <= merge_tol) parent[find(i)] = find(j);

    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
    if (static_cast<int>(groups.size()) == n) break;

    merged = true;
    std::vector<Atom> next;
    next.reserve(groups.size());
    for (auto& [root, members] : groups) {
      Atom acc;
      acc.z.assign(atoms[members[0]].z.size(), Complex(0, 0));
      for (int i : members) {
        acc.weight += atoms[i].weight;
        for (std::size_t c = 0; c < acc.z.size(); ++c) acc.z[c] += atoms[i].weight * atoms[i].z[c];
      }
      for (auto& z : acc.z) z /= acc.weight;
      next.push_back(std::move(acc));
    }
    atoms = std::move(next);
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return point_less(a.z, b.z); });
  return atoms;
}

}  // namespace

AtomicMeasure::AtomicMeasure(int dim, std::vector<Atom> atoms, const Tolerances& tol) : dim_(dim) {
  detail::require(dim >= 1, ErrorCode::invalid_argument, "AtomicMeasure: dim must be >= 1");
  double mass = 0.0;
  for (const auto& a : atoms) {
    detail::require(static_cast<int>(a.z.size()) == dim, ErrorCode::dimension_mismatch,
                    "AtomicMeasure: atom dimension mismatch");
    detail::require(a.weight > 0.0, ErrorCode::invalid_argument,
                    "AtomicMeasure: weights must be positive");
    mass += a.weight;
  }
  detail::require(std::abs(mass - 1.0) <= 1e-12 * std::max<double>(atoms.size(), 1),
                  ErrorCode::invalid_argument,
                  "AtomicMeasure: weights sum to " + std::to_string(mass));
  atoms_ = merge_atoms(std::move(atoms), tol.merge_tol);
}

AtomicMeasure AtomicMeasure::dirac(Point p) {
  const int d = static_cast<int>(p.size());
  return AtomicMeasure(d, {Atom{std::move(p), 1.0}});
}

double AtomicMeasure::total_mass() const {
  double m = 0;
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

double AtomicMeasure::mass(const Region& r) const {
  detail::require(r.dim() == dim_, ErrorCode::dimension_mismatch,
                  "AtomicMeasure::mass: region dimension mismatch");
  double m = 0;
  for (const auto& a : atoms_)
    if (r.contains(a.z)) m += a.weight;
  return m;
}

AtomicMeasure brown_measure(const JointDecomposition& dec, const Tolerances& tol) {
  std::vector<Atom> atoms;
  atoms.reserve(dec.clusters().size());
  const double d = dec.dim();
  for (const auto& c : dec.clusters())
    atoms.push_back(Atom{c.point, static_cast<double>(c.multiplicity) / d});
  return AtomicMeasure(dec.n(), std::move(atoms), tol);
}

AtomicMeasure pushforward(const AtomicMeasure& mu, const MapDescriptor& map,
                          const Tolerances& tol) {
  detail::require(map.in_dim() == mu.dim(), ErrorCode::dimension_mismatch,
                  "pushforward: map domain dimension mismatch");
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const auto& a : mu.atoms()) atoms.push_back(Atom{map.apply(a.z), a.weight});
  return AtomicMeasure(map.out_dim(), std::move(atoms), tol);
}

AtomicMeasure product_measure(const AtomicMeasure& mu, const AtomicMeasure& nu,
                              const Tolerances& tol) {
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size() * nu.atoms().size());
  for (const auto& a : mu.atoms()) {
    for (const auto& b : nu.atoms()) {
      Atom ab;
      ab.z = a.z;
      ab.z.insert(ab.z.end(), b.z.begin(), b.z.end());
      ab.weight = a.weight * b.weight;
      atoms.push_back(std::move(ab));
    }
  }
  return AtomicMeasure(mu.dim() + nu.dim(), std::move(atoms), tol);
}

AtomicMeasure convolve_additive(const AtomicMeasure& mu, const AtomicMeasure& nu,
                                const Tolerances& tol) {
  detail::require(mu.dim() == 1 && nu.dim() == 1, ErrorCode::dimension_mismatch,
                  "convolve_additive: measures must be 1-dimensional");
  return pushforward(product_measure(mu, nu, tol), MapDescriptor::add2(), tol);
}

AtomicMeasure convolve_multiplicative(const AtomicMeasure& mu, const AtomicMeasure& nu,
                                      const Tolerances& tol) {
  detail::require(mu.dim() == 1 && nu.dim() == 1, ErrorCode::dimension_mismatch,
                  "convolve_multiplicative: measures must be 1-dimensional");
  return pushforward(product_measure(mu, nu, tol), MapDescriptor::mul2(), tol);
}

namespace {

// Hungarian algorithm (potentials form), O(n^3).
double min_cost_matching(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  double total = 0;
  for (int j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
  return total;
}

}  // namespace

double measure_distance(const AtomicMeasure& mu, const AtomicMeasure& nu) {
  detail::require(mu.dim() == nu.dim(), ErrorCode::dimension_mismatch,
                  "measure_distance: dimension mismatch");
  const int m = static_cast<int>(mu.atoms().size());
  const int n = static_cast<int>(nu.atoms().size());
  const int size = m + n;
  if (size == 0) return 0.0;

  // real-vs-real cells carry weight mismatch plus point distance; pairing a
  // real atom with a phantom costs its full weight
  std::vector<std::vector<double>> cost(size, std::vector<double>(size, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j)
      cost[i][j] = std::abs(mu.atoms()[i].weight - nu.atoms()[j].weight) +
                   point_dist(mu.atoms()[i].z, nu.atoms()[j].z);
    for (int j = n; j < size; ++j) cost[i][j] = mu.atoms()[i].weight;
  }
  for (int i = m; i < size; ++i)
    for (int j = 0; j < n; ++j) cost[i][j] = nu.atoms()[j].weight;
  return min_cost_matching(cost);
}

namespace {

// A dyadic grid over [lo,hi]^2 in one complex coordinate: cell (ir, ii) is
// the half-open square I(center, h/2).
struct CoordGrid {
  double lo, h;
  int cells;
  Region cell(int ir, int ii) const {
    return Region::box(Complex(lo + (ir + 0.5) * h, lo + (ii + 0.5) * h), 0.5 * h);
  }
  std::pair<int, int> locate(Complex z) const {
    const auto idx = [&](double x) {
      return std::clamp(static_cast<int>(std::floor((x - lo) / h)), 0, cells - 1);
    };
    return {idx(z.real()), idx(z.imag())};
  }
};

}  // namespace

Report verify_distribution_extension(const JointDecomposition& dec, int grid_depth,
                                     const Tolerances& tol) {
  Report rep;
  rep.title = "distribution-extension";
  detail::require(dec.n() == 2, ErrorCode::invalid_argument,
                  "verify_distribution_extension: pair decompositions only");
  const ComplexMatrix& s = dec.tuple().mat(0);
  const ComplexMatrix& t = dec.tuple().mat(1);
  const int d = dec.dim();

  double lo = 0, hi = 0;
  for (const auto& c : dec.clusters())
    for (const Complex& z : c.point) {
      lo = std::min({lo, z.real(), z.imag()});
      hi = std::max({hi, z.real(), z.imag()});
    }
  const double span = std::max(hi - lo, 1.0);
  // pad and bias the anchor so no atom sits on a dyadic edge
  lo -= 0.25 * span + 0.0137 * span;
  hi += 0.25 * span;

  JointDecomposition ds = decompose_single(s, tol);
  JointDecomposition dt = decompose_single(t, tol);

  using CellKey = std::pair<int, int>;
  bool additive = true;
  std::map<CellKey, Subspace> fine_s, fine_t;
  std::map<std::pair<CellKey, CellKey>, int> fine_nu;

  for (int depth = grid_depth; depth >= 0; --depth) {
    CoordGrid grid{lo, (hi - lo) / (1 << depth), 1 << depth};

    std::set<CellKey> occ_s, occ_t;
    for (const auto& c : ds.clusters()) occ_s.insert(grid.locate(c.point[0]));
    for (const auto& c : dt.clusters()) occ_t.insert(grid.locate(c.point[0]));

    std::map<CellKey, Subspace> ps, pt;
    for (const CellKey& k : occ_s)
      ps.emplace(k, spectral_projection(ds, grid.cell(k.first, k.second), tol));
    for (const CellKey& k : occ_t)
      pt.emplace(k, spectral_projection(dt, grid.cell(k.first, k.second), tol));

    // occupied-cell ranks add up to d in each marginal (empty cells carry
    // rank 0 exactly)
    int srank = 0, trank = 0;
    for (const auto& [k, sub] : ps) srank += sub.dim();
    for (const auto& [k, sub] : pt) trank += sub.dim();
    if (srank != d || trank != d) additive = false;

    std::map<std::pair<CellKey, CellKey>, int> nu;
    for (const auto& [ka, sa] : ps)
      for (const auto& [kb, sb] : pt)
        nu[{ka, kb}] = subspace_meet(sa, sb, tol).dim();

    // separate sigma-additivity in each argument: nu(A, union of cells) and
    // nu(union, B) recover the marginal ranks
    for (const auto& [ka, sa] : ps) {
      int row = 0;
      for (const auto& [kb, sb] : pt) row += nu[{ka, kb}];
      if (row != sa.dim()) additive = false;
    }
    for (const auto& [kb, sb] : pt) {
      int col = 0;
      for (const auto& [ka, sa] : ps) col += nu[{ka, kb}];
      if (col != sb.dim()) additive = false;
    }

    if (depth == grid_depth) {
      fine_s = ps;
      fine_t = pt;
      fine_nu = nu;
    } else {
      // coarse cells agree with the sum over their descendants at top depth
      const int shift = grid_depth - depth;
      for (const auto& [ka, sa] : ps) {
        for (const auto& [kb, sb] : pt) {
          int sum = 0;
          for (const auto& [fk, v] : fine_nu) {
            if ((fk.first.first >> shift) == ka.first && (fk.first.second >> shift) == ka.second &&
                (fk.second.first >> shift) == kb.first && (fk.second.second >> shift) == kb.second)
              sum += v;
          }
          if (sum != nu[{ka, kb}]) additive = false;
        }
      }
    }
  }
  rep.add_flag("separately sigma-additive on the dyadic grid (rank arithmetic)", additive);

  // reconstruction: each occupied fine cell pair becomes an atom at the
  // trace-mean of the compressed pair
  std::vector<Atom> rec;
  for (const auto& [ka, sa] : fine_s) {
    for (const auto& [kb, sb] : fine_t) {
      auto it = fine_nu.find({ka, kb});
      if (it == fine_nu.end() || it->second == 0) continue;
      const Subspace k = subspace_meet(sa, sb, tol);
      const Complex zs = (k.frame().adjoint() * s * k.frame()).trace() / double(k.dim());
      const Complex zt = (k.frame().adjoint() * t * k.frame()).trace() / double(k.dim());
      rec.push_back(Atom{Point{zs, zt}, double(it->second) / double(d)});
    }
  }
  rep.add_flag("grid box function carries unit mass", !rec.empty());
  if (!rec.empty()) {
    AtomicMeasure reconstructed(2, std::move(rec), tol);
    rep.add("reconstructed measure vs brown measure",
            measure_distance(reconstructed, brown_measure(dec, tol)), 1e-10);
  }
  return rep;
}

}  // namespace brown
