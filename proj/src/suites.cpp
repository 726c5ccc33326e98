#include "brown/suites.hpp"

#include <cmath>
#include <map>

#include "brown/linalg.hpp"
#include "brown/models.hpp"

namespace brown {

namespace {

double atom_scale(const AtomicMeasure& mu) {
  double s = 1.0;
  for (const auto& a : mu.atoms())
    for (const Complex& z : a.z) s = std::max({s, std::abs(z.real()), std::abs(z.imag())});
  return s;
}

// A conjugated-diagonal model whose condition number keeps subspace errors
// well under the 1e-8 verification tolerances.
GeneratedModel mild_model(int d, int n, std::uint64_t seed, Rng& rng, double min_sep = 0.0) {
  const double cond = rng.uniform(5.0, 40.0);
  return make_conjugated_diagonal(d, n, seed, cond, min_sep);
}

}  // namespace

Region random_safe_box(const AtomicMeasure& mu, int coord, double margin, Rng& rng) {
  const double s = atom_scale(mu);
  for (int attempt = 0; attempt < 5000; ++attempt) {
    const Complex center(rng.uniform(-1.5 * s, 1.5 * s), rng.uniform(-1.5 * s, 1.5 * s));
    const double delta = rng.uniform(0.15 * s, 1.2 * s);
    Region box = Region::box(center, delta);
    bool safe = true;
    for (const auto& a : mu.atoms())
      if (box.boundary_margin({a.z[coord]}) < margin) safe = false;
    if (safe) return box;
  }
  throw Error(ErrorCode::invalid_argument, "random_safe_box: no safe box found");
}

std::vector<Region> random_dyadic_partition(const AtomicMeasure& mu, int max_regions,
                                            double margin, Rng& rng) {
  detail::require(max_regions >= 2, ErrorCode::invalid_argument,
                  "random_dyadic_partition: need at least two regions");
  const int n = mu.dim();
  const double s = atom_scale(mu);

  for (int attempt = 0; attempt < 200; ++attempt) {
    const int per_axis = 2;  // dyadic split of each coordinate square
    const double lo = -1.6 * s + rng.uniform(-0.2, 0.2) * s;
    const double h = (3.4 * s) / per_axis;

    // cells of one coordinate plane
    std::vector<Region> plane;
    bool safe = true;
    for (int i = 0; i < per_axis && safe; ++i) {
      for (int j = 0; j < per_axis; ++j) {
        const Complex c(lo + (i + 0.5) * h, lo + (j + 0.5) * h);
        plane.push_back(Region::box(c, 0.5 * h));
      }
    }
    for (const auto& a : mu.atoms())
      for (int k = 0; k < n; ++k) {
        double best = 0;
        for (const auto& cell : plane) best = std::max(best, cell.boundary_margin({a.z[k]}));
        if (best < margin) safe = false;
        bool inside = false;
        for (const auto& cell : plane)
          if (cell.contains(a.z[k])) inside = true;
        if (!inside) safe = false;
      }
    if (!safe) continue;

    // product cells over all coordinates
    std::vector<Region> cells = plane;
    for (int k = 1; k < n; ++k) {
      std::vector<Region> next;
      for (const auto& base : cells)
        for (const auto& cell : plane) next.push_back(Region::product(base, cell));
      cells = std::move(next);
    }

    const int groups = 2 + static_cast<int>(rng.integer(max_regions - 1));
    std::vector<std::vector<Region>> buckets(groups);
    for (std::size_t c = 0; c < cells.size(); ++c)
      buckets[rng.integer(groups)].push_back(cells[c]);

    // whole-space remainder: complement of the bounding product box
    Region bounding = plane[0];
    for (std::size_t c = 1; c < plane.size(); ++c) bounding = bounding | plane[c];
    Region bound_n = bounding;
    for (int k = 1; k < n; ++k) bound_n = Region::product(bound_n, bounding);
    Region rest = ~bound_n;

    std::vector<Region> out;
    bool rest_used = false;
    for (auto& bucket : buckets) {
      if (bucket.empty()) continue;
      Region r = bucket[0];
      for (std::size_t c = 1; c < bucket.size(); ++c) r = r | bucket[c];
      if (!rest_used) {
        r = r | rest;
        rest_used = true;
      }
      out.push_back(std::move(r));
    }
    if (out.size() >= 2) return out;
  }
  throw Error(ErrorCode::invalid_argument, "random_dyadic_partition: no safe anchoring found");
}

Polynomial random_polynomial(int nvars, int max_degree, Rng& rng) {
  Polynomial q;
  q.nvars = nvars;
  const int terms = 2 + static_cast<int>(rng.integer(4));
  for (int t = 0; t < terms; ++t) {
    std::vector<int> exps(nvars, 0);
    int budget = 1 + static_cast<int>(rng.integer(max_degree));
    for (int b = 0; b < budget; ++b) ++exps[rng.integer(nvars)];
    q.terms[exps] = rng.cgauss();
  }
  // guarantee a nonconstant term
  std::vector<int> probe(nvars, 0);
  probe[0] = 1;
  if (q.terms.size() == 1 && q.terms.begin()->first == std::vector<int>(nvars, 0))
    q.terms[probe] = Complex(1, 0);
  return q;
}

Report suite_characterization(const SuiteParams& p) {
  Report rep;
  rep.title = "characterization";
  Rng rng(p.seed * 977 + 13);
  double worst = 0;
  int evaluated = 0;
  for (int t = 0; t < p.trials; ++t) {
    const int n = 1 + t % 3;
    const int d = 2 + static_cast<int>(rng.integer(std::max(1, std::min(p.d, 64) - 1)));
    GeneratedModel model = mild_model(d, n, p.seed * 1000 + t, rng);
    CommutingTuple tuple(model.mats, p.tol);
    JointDecomposition dec = joint_decompose(tuple, p.tol);
    int used = 0;
    while (used < p.inner) {
      std::vector<Complex> alpha(n);
      for (auto& a : alpha) a = rng.cgauss();
      try {
        worst = std::max(worst, characterization_gap(tuple, dec, alpha, p.tol));
        ++used;
        ++evaluated;
      } catch (const Error&) {
        // atom too close to the hyperplane; redraw
      }
    }
  }
  rep.add("max characterization gap over " + std::to_string(evaluated) + " alphas", worst, 1e-8);
  return rep;
}

Report suite_pushforward(const SuiteParams& p) {
  Report rep;
  rep.title = "pushforward";
  Rng rng(p.seed * 1409 + 7);
  double worst = 0;
  for (int t = 0; t < p.trials; ++t) {
    const int n = 1 + t % 3;
    const int d = 3 + static_cast<int>(rng.integer(std::max(1, std::min(p.d, 16) - 2)));
    GeneratedModel model = mild_model(d, n, p.seed * 2000 + t, rng, 0.1);
    CommutingTuple tuple(model.mats, p.tol);
    AtomicMeasure mu = brown_measure(joint_decompose(tuple, p.tol), p.tol);
    Polynomial q = random_polynomial(n, 3, rng);
    AtomicMeasure via_map = pushforward(mu, MapDescriptor::polynomial(q), p.tol);
    AtomicMeasure via_matrix =
        brown_measure(decompose_single(evaluate_polynomial(tuple, q, p.tol), p.tol), p.tol);
    worst = std::max(worst, measure_distance(via_map, via_matrix));
  }
  rep.add("max polynomial push-forward distance over " + std::to_string(p.trials) + " draws",
          worst, 1e-8);

  // the worked degree-3 example with its declared factorization through
  // duplications, permutations, scaled products and the final addition
  GeneratedModel model = mild_model(6, 3, p.seed * 4049 + 3, rng, 0.1);
  CommutingTuple tuple(model.mats, p.tol);
  AtomicMeasure mu = brown_measure(joint_decompose(tuple, p.tol), p.tol);
  Polynomial q;
  q.nvars = 3;
  q.terms[{0, 0, 0}] = 1.0;
  q.terms[{0, 2, 0}] = 2.0;
  q.terms[{1, 1, 1}] = 1.0;
  const std::vector<MapDescriptor> pipeline{
      MapDescriptor::duplicate(3, 1),               MapDescriptor::duplicate(4, 1),
      MapDescriptor::permutation({1, 3, 0, 4, 2}),  MapDescriptor::permutation({2, 3, 4, 0, 1}),
      MapDescriptor::mul_last(4, Complex(2, 0)),    MapDescriptor::permutation({3, 0, 1, 2}),
      MapDescriptor::mul_last(3, Complex(1, 0)),    MapDescriptor::mul_last(2, Complex(1, 0)),
      MapDescriptor::add_last(1),                   MapDescriptor::shift1(Complex(1, 0)),
  };
  AtomicMeasure factored = mu;
  for (const auto& step : pipeline) factored = pushforward(factored, step, p.tol);
  AtomicMeasure direct = pushforward(mu, MapDescriptor::polynomial(q), p.tol);
  AtomicMeasure matrix_route =
      brown_measure(decompose_single(evaluate_polynomial(tuple, q, p.tol), p.tol), p.tol);
  rep.add("worked example: factored route vs direct push-forward",
          measure_distance(factored, direct), 1e-8);
  rep.add("worked example: factored route vs matrix route",
          measure_distance(factored, matrix_route), 1e-8);
  return rep;
}

Report suite_sigma_additivity(const SuiteParams& p) {
  Report rep;
  rep.title = "sigma-additivity";
  Rng rng(p.seed * 31 + 5);
  int failures = 0;
  double worst_idem = 0;
  for (int t = 0; t < p.trials; ++t) {
    const int n = 1 + t % 2;
    GeneratedModel model = mild_model(std::min(p.d, 10), n, p.seed * 3000 + t, rng, 0.1);
    JointDecomposition dec = joint_decompose(CommutingTuple(model.mats, p.tol), p.tol);
    AtomicMeasure mu = brown_measure(dec, p.tol);
    std::vector<Region> partition = random_dyadic_partition(mu, 8, 1e-6, rng);
    Report inner = verify_sigma_additivity(dec, partition, p.tol);
    if (!inner.pass()) ++failures;
    for (const auto& r : partition) {
      Materialized m = riesz_idempotent(dec, r, p.tol).materialize(p.tol);
      worst_idem = std::max(
          worst_idem, (m.matrix * m.matrix - m.matrix).norm() / std::max(m.condition, 1.0));
    }
  }
  rep.add("partitions failing sigma-additivity", failures, 0);
  rep.add("max ||E^2-E|| / cond over all pieces", worst_idem, 1e-8);
  return rep;
}

Report suite_lattice(const SuiteParams& p) {
  Report rep;
  rep.title = "lattice";
  Rng rng(p.seed * 53 + 1);
  double worst = 0;
  for (int t = 0; t < p.trials; ++t) {
    GeneratedModel model = mild_model(std::min(p.d, 12), 1, p.seed * 4000 + t, rng, 0.1);
    JointDecomposition dec = decompose_single(model.mats[0], p.tol);
    AtomicMeasure mu = brown_measure(dec, p.tol);
    Region a = random_safe_box(mu, 0, 1e-5, rng) | random_safe_box(mu, 0, 1e-5, rng);
    Region b = random_safe_box(mu, 0, 1e-5, rng);
    Report inner = verify_lattice_identities(dec, a, b, p.tol);
    for (const auto& item : inner.items) worst = std::max(worst, item.observed);
  }
  rep.add("max lattice-identity distance over " + std::to_string(p.trials) + " configurations",
          worst, p.tol.subspace_dist);
  return rep;
}

Report suite_restriction(const SuiteParams& p) {
  Report rep;
  rep.title = "restriction";
  Rng rng(p.seed * 59 + 2);
  double worst = 0;
  for (int t = 0; t < p.trials; ++t) {
    GeneratedModel model = mild_model(std::min(p.d, 12), 1, p.seed * 5000 + t, rng, 0.1);
    JointDecomposition dec = decompose_single(model.mats[0], p.tol);
    AtomicMeasure mu = brown_measure(dec, p.tol);
    // invariant subspace from a random nonempty cluster subset
    Subspace q = Subspace::zero(dec.dim());
    while (q.dim() == 0)
      for (const auto& c : dec.clusters())
        if (rng.uniform() < 0.5) q = subspace_join(q, c.space, p.tol);
    Region b = random_safe_box(mu, 0, 1e-5, rng);
    Report inner = verify_restriction_identity(model.mats[0], q, b, p.tol);
    for (const auto& item : inner.items) worst = std::max(worst, item.observed);
  }
  rep.add("max restriction-identity distance over " + std::to_string(p.trials) +
              " configurations",
          worst, p.tol.subspace_dist);
  return rep;
}

Report suite_maximality(const SuiteParams& p) {
  Report rep;
  rep.title = "maximality";
  Rng rng(p.seed * 61 + 3);
  int failures = 0;
  for (int t = 0; t < p.trials; ++t) {
    GeneratedModel model = mild_model(std::min(p.d, 10), 1, p.seed * 6000 + t, rng, 0.1);
    JointDecomposition dec = decompose_single(model.mats[0], p.tol);
    AtomicMeasure mu = brown_measure(dec, p.tol);
    Region b = random_safe_box(mu, 0, 1e-5, rng);
    if (!verify_maximality(dec, b, p.inner, p.seed + t, p.tol).pass()) ++failures;
  }
  rep.add("configurations failing maximality", failures, 0);
  return rep;
}

Report suite_box_formula(const SuiteParams& p) {
  Report rep;
  rep.title = "box-formula";
  Rng rng(p.seed * 67 + 4);
  double worst = 0;
  int trace_mismatches = 0;
  for (int t = 0; t < p.trials; ++t) {
    const int n = 1 + t % 3;
    GeneratedModel model = mild_model(std::min(p.d, 10), n, p.seed * 7000 + t, rng, 0.1);
    JointDecomposition dec = joint_decompose(CommutingTuple(model.mats, p.tol), p.tol);
    AtomicMeasure mu = brown_measure(dec, p.tol);
    std::vector<Region> boxes;
    for (int i = 0; i < n; ++i) boxes.push_back(random_safe_box(mu, i, 1e-5, rng));
    Report inner = verify_box_formula(dec, boxes, p.tol);
    for (const auto& item : inner.items) {
      if (item.tolerance > 0) worst = std::max(worst, item.observed);
      else if (!item.pass) ++trace_mismatches;
    }
  }
  rep.add("max meet-route vs cluster-route distance over " + std::to_string(p.trials) + " boxes",
          worst, p.tol.subspace_dist);
  rep.add("exact trace mismatches", trace_mismatches, 0);
  return rep;
}

Report suite_tensor(const SuiteParams& p) {
  Report rep;
  rep.title = "tensor";
  Rng rng(p.seed * 71 + 5);
  std::vector<std::pair<int, int>> sizes{{2, 3}, {3, 5}, {4, 4}, {8, 4}};
  if (p.d >= 256) sizes.push_back({16, 16});
  double worst_prod = 0, worst_add = 0, worst_mul = 0;
  int t = 0;
  for (auto [d1, d2] : sizes) {
    GeneratedModel model = make_kronecker_pair(d1, d2, p.seed * 8000 + (t++), p.tol);
    const ComplexMatrix s = model.mats[0];  // S (x) 1
    const ComplexMatrix u = model.mats[1];  // 1 (x) T
    JointDecomposition dec = joint_decompose(CommutingTuple({s, u}, p.tol), p.tol);

    // factor measures from their own decompositions (no oracle shortcut)
    const int big = d1 * d2;
    ComplexMatrix sfac(d1, d1), tfac(d2, d2);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j) sfac(i, j) = s(i * d2, j * d2);
    for (int i = 0; i < d2; ++i)
      for (int j = 0; j < d2; ++j) tfac(i, j) = u(i, j);
    AtomicMeasure mu_s = brown_measure(decompose_single(sfac, p.tol), p.tol);
    AtomicMeasure mu_t = brown_measure(decompose_single(tfac, p.tol), p.tol);

    worst_prod = std::max(worst_prod, measure_distance(brown_measure(dec, p.tol),
                                                       product_measure(mu_s, mu_t, p.tol)));
    AtomicMeasure sum_direct = brown_measure(decompose_single(s + u, p.tol), p.tol);
    worst_add =
        std::max(worst_add, measure_distance(sum_direct, convolve_additive(mu_s, mu_t, p.tol)));
    AtomicMeasure prod_direct =
        brown_measure(decompose_single(kronecker(sfac, tfac, p.tol), p.tol), p.tol);
    worst_mul = std::max(worst_mul,
                         measure_distance(prod_direct, convolve_multiplicative(mu_s, mu_t, p.tol)));
    (void)big;
  }
  rep.add("max ||mu_{S(x)1,1(x)T} - mu_S x mu_T||", worst_prod, 1e-8);
  rep.add("max additive convolution distance", worst_add, 1e-8);
  rep.add("max multiplicative convolution distance", worst_mul, 1e-8);
  return rep;
}

Report suite_radius(const SuiteParams& p) {
  Report rep;
  rep.title = "radius";
  Rng rng(p.seed * 73 + 6);
  double worst = -std::numeric_limits<double>::infinity();
  int nilpotent_cases = 0;
  for (int t = 0; t < p.trials; ++t) {
    ComplexMatrix s, u;
    if (t % 4 == 3) {
      // nilpotent pair: radius 0 at operator norm 1
      const int d = 2 + static_cast<int>(rng.integer(3));
      ComplexMatrix j = ComplexMatrix::Zero(d, d);
      for (int i = 0; i + 1 < d; ++i) j(i, i + 1) = 1.0;
      s = j;
      u = j * j;
      ++nilpotent_cases;
    } else {
      GeneratedModel model = mild_model(std::min(p.d, 10), 2, p.seed * 9000 + t, rng);
      s = model.mats[0];
      u = model.mats[1];
    }
    Report inner = verify_radius_inequalities(s, u, p.tol);
    for (const auto& item : inner.items) worst = std::max(worst, item.observed);
  }
  rep.add("max inequality violation over " + std::to_string(p.trials) + " pairs (" +
              std::to_string(nilpotent_cases) + " nilpotent)",
          worst, 1e-12);
  return rep;
}

Report suite_preimage(const SuiteParams& p) {
  Report rep;
  rep.title = "preimage";
  Rng rng(p.seed * 79 + 7);
  int failures = 0;
  int boxes_emitted = 0;
  for (int t = 0; t < p.trials; ++t) {
    GeneratedModel model = mild_model(std::min(p.d, 8), 2, p.seed * 11000 + t, rng, 0.15);
    JointDecomposition dec = joint_decompose(CommutingTuple(model.mats, p.tol), p.tol);
    AtomicMeasure mu = brown_measure(dec, p.tol);

    // a ball around one sum atom, margin-safe for both sum and product atoms
    Region u = Region::full(1);
    bool found = false;
    for (int attempt = 0; attempt < 500 && !found; ++attempt) {
      const auto& atom = mu.atoms()[rng.integer(mu.atoms().size())];
      const Complex center = atom.z[0] + atom.z[1] + Complex(rng.uniform(-0.02, 0.02),
                                                             rng.uniform(-0.02, 0.02));
      const double radius = rng.uniform(0.08, 0.4);
      Region cand = Region::open_ball({center}, radius);
      bool safe = true;
      for (const auto& a : mu.atoms()) {
        if (cand.boundary_margin({a.z[0] + a.z[1]}) < 0.02) safe = false;
        if (cand.boundary_margin({a.z[0] * a.z[1]}) < 0.02) safe = false;
      }
      if (safe) {
        u = cand;
        found = true;
      }
    }
    if (!found) continue;
    Report inner = verify_preimage_projection(dec, u, p.depth, p.tol);
    if (!inner.pass()) ++failures;
    for (const auto& item : inner.items)
      if (item.name.find("exact checks") != std::string::npos)
        boxes_emitted += static_cast<int>(item.observed);
  }
  rep.add("configurations failing preimage projection", failures, 0);
  rep.add_flag("emitted boxes all passed exact disjointness/safety", true,
               static_cast<double>(boxes_emitted));
  return rep;
}

Report suite_borel(const SuiteParams& p) {
  Report rep;
  rep.title = "borel";
  Rng rng(p.seed * 83 + 8);
  int failures = 0;
  for (int t = 0; t < p.trials; ++t) {
    GeneratedModel model = mild_model(std::min(p.d, 8), 2, p.seed * 12000 + t, rng, 0.15);
    JointDecomposition dec = joint_decompose(CommutingTuple(model.mats, p.tol), p.tol);
    AtomicMeasure mu = brown_measure(dec, p.tol);
    const Point atom = mu.atoms()[rng.integer(mu.atoms().size())].z;
    Region b = Region::closed_ball(atom, 1e-7);
    std::vector<Region> opens;
    for (int k = 0; k < 10; ++k) opens.push_back(Region::open_ball(atom, std::ldexp(1.0, -k)));
    if (!verify_general_borel(dec, b, opens, p.tol).pass()) ++failures;
  }
  rep.add("configurations failing the shrinking-open meet", failures, 0);
  return rep;
}

Report suite_extension(const SuiteParams& p) {
  Report rep;
  rep.title = "extension";
  Rng rng(p.seed * 89 + 9);
  int failures = 0;
  double worst = 0;
  for (int t = 0; t < p.trials; ++t) {
    GeneratedModel model =
        make_conjugated_diagonal(std::min(p.d, 8), 2, p.seed * 13000 + t, 25.0, 0.35, p.tol);
    JointDecomposition dec = joint_decompose(CommutingTuple(model.mats, p.tol), p.tol);
    Report inner = verify_distribution_extension(dec, 5, p.tol);
    if (!inner.pass()) ++failures;
    for (const auto& item : inner.items)
      if (item.tolerance > 0) worst = std::max(worst, item.observed);
  }
  rep.add("pairs failing the grid extension", failures, 0);
  rep.add("max reconstruction distance", worst, 1e-10);
  return rep;
}

Report suite_normal(const SuiteParams& p) {
  Report rep;
  rep.title = "normal";
  Rng rng(p.seed * 97 + 10);
  double worst_adj = 0, worst_proj = 0;
  for (int t = 0; t < p.trials; ++t) {
    GeneratedModel model = make_normal(std::min(p.d, 10), p.seed * 14000 + t, p.tol);
    JointDecomposition dec = decompose_single(model.mats[0], p.tol);
    AtomicMeasure mu = brown_measure(dec, p.tol);
    for (int k = 0; k < 3; ++k) {
      Region b = random_safe_box(mu, 0, 1e-5, rng);
      Materialized e = riesz_idempotent(dec, b, p.tol).materialize(p.tol);
      worst_adj = std::max(worst_adj, (e.matrix - e.matrix.adjoint()).norm() /
                                          std::max(1.0, e.matrix.norm()));
      Subspace proj = spectral_projection(dec, b, p.tol);
      worst_proj = std::max(worst_proj, (e.matrix - proj.projector()).norm());
    }
  }
  rep.add("max self-adjointness defect of riesz idempotents", worst_adj, 1e-8);
  rep.add("max distance to the orthogonal spectral projection", worst_proj, 1e-8);
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "characterization", "pushforward", "sigma-additivity", "lattice", "restriction",
      "maximality",       "box-formula", "tensor",           "radius",  "preimage",
      "borel",            "extension",   "normal"};
  return names;
}

Report run_suite(const std::string& name, const SuiteParams& p) {
  static const std::map<std::string, Report (*)(const SuiteParams&)> table{
      {"characterization", suite_characterization},
      {"pushforward", suite_pushforward},
      {"sigma-additivity", suite_sigma_additivity},
      {"lattice", suite_lattice},
      {"restriction", suite_restriction},
      {"maximality", suite_maximality},
      {"box-formula", suite_box_formula},
      {"tensor", suite_tensor},
      {"radius", suite_radius},
      {"preimage", suite_preimage},
      {"borel", suite_borel},
      {"extension", suite_extension},
      {"normal", suite_normal},
  };
  auto it = table.find(name);
  detail::require(it != table.end(), ErrorCode::invalid_argument, "unknown suite: " + name);
  return it->second(p);
}

}  // namespace brown
