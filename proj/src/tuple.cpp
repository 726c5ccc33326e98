#include "brown/tuple.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numeric>
#include <sstream>

#include "brown/linalg.hpp"
#include "brown/rng.hpp"

namespace brown {

namespace {

std::string point_str(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ", ";
    os << p[i].real() << (p[i].imag() < 0 ? "" : "+") << p[i].imag() << "i";
  }
  os << ")";
  return os.str();
}

bool point_less(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

// Transitive chaining: eigenvalues whose pairwise distance is <= delta end up
// in one group.
std::vector<std::vector<int>> chain_eigenvalues(const ComplexVector& eigs, double delta) {
  const int k = static_cast<int>(eigs.size());
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (std::abs(eigs(i) - eigs(j)) <= delta) parent[find(i)] = find(j);
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < k; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  // deterministic order: by the group mean, lexicographically
  std::sort(out.begin(), out.end(), [&](const auto& ga, const auto& gb) {
    Complex ma = 0, mb = 0;
    for (int i : ga) ma += eigs(i);
    for (int i : gb) mb += eigs(i);
    ma /= double(ga.size());
    mb /= double(gb.size());
    if (ma.real() != mb.real()) return ma.real() < mb.real();
    return ma.imag() < mb.imag();
  });
  return out;
}

void check_boundary(const Region& b, const Point& p, const Tolerances& tol) {
  const double margin = b.boundary_margin(p);
  if (margin < tol.boundary_delta)
    throw Error(ErrorCode::boundary_ambiguous,
                "boundary-ambiguous cluster: point " + point_str(p) + " is within " +
                    std::to_string(margin) + " of the region boundary");
}

double invariance_residual_of(const ComplexMatrix& t, const Subspace& k) {
  if (k.dim() == 0) return 0.0;
  ComplexMatrix g = t * k.frame();
  g -= k.frame() * (k.frame().adjoint() * g);
  return g.norm() / std::max(fnorm(t), 1e-300);
}

}  // namespace

CommutingTuple::CommutingTuple(std::vector<ComplexMatrix> mats, const Tolerances& tol)
    : mats_(std::move(mats)) {
  detail::require(!mats_.empty(), ErrorCode::invalid_argument, "CommutingTuple: empty tuple");
  const int d = static_cast<int>(mats_[0].rows());
  for (const auto& m : mats_) {
    ensure_square(m, "CommutingTuple");
    ensure_finite(m, "CommutingTuple");
    detail::require(static_cast<int>(m.rows()) == d, ErrorCode::dimension_mismatch,
                    "CommutingTuple: mixed dimensions");
  }
  for (std::size_t i = 0; i < mats_.size(); ++i) {
    for (std::size_t j = i + 1; j < mats_.size(); ++j) {
      const double scale = std::max(fnorm(mats_[i]) * fnorm(mats_[j]), 1e-300);
      const double rel = (mats_[i] * mats_[j] - mats_[j] * mats_[i]).norm() / scale;
      commutator_bound_ = std::max(commutator_bound_, rel);
      if (rel > tol.commutation_rel) {
        std::ostringstream os;
        os << "CommutingTuple: operators " << i + 1 << " and " << j + 1
           << " do not commute, relative commutator " << rel;
        throw Error(ErrorCode::commutation, os.str());
      }
    }
  }
}

JointDecomposition::JointDecomposition(CommutingTuple tuple, std::vector<Cluster> clusters,
                                       const Tolerances& tol)
    : tuple_(std::move(tuple)), clusters_(std::move(clusters)) {
  const int d = tuple_.dim();
  const int n = tuple_.n();
  int mult_sum = 0;
  ComplexMatrix cat(d, d);
  int col = 0;
  for (const auto& c : clusters_) {
    detail::require(static_cast<int>(c.point.size()) == n, ErrorCode::decomposition,
                    "JointDecomposition: point arity mismatch");
    detail::require(c.multiplicity == c.space.dim(), ErrorCode::decomposition,
                    "JointDecomposition: multiplicity does not match space dimension");
    mult_sum += c.multiplicity;
    detail::require(col + c.space.dim() <= d, ErrorCode::decomposition,
                    "JointDecomposition: frames exceed ambient dimension");
    cat.middleCols(col, c.space.dim()) = c.space.frame();
    col += c.space.dim();
  }
  detail::require(mult_sum == d, ErrorCode::decomposition,
                  "JointDecomposition: multiplicities sum to " + std::to_string(mult_sum) +
                      ", expected " + std::to_string(d));

  Eigen::JacobiSVD<ComplexMatrix> svd(cat);
  const auto& sv = svd.singularValues();
  const double smin = sv(d - 1);
  detail::require(smin > 0 && sv(0) / smin < 1.0 / (tol.rank_rel * tol.rank_rel),
                  ErrorCode::decomposition, "JointDecomposition: cluster spaces not complementary");
  frame_condition_ = sv(0) / smin;

  for (const auto& c : clusters_) {
    for (int i = 0; i < n; ++i) {
      const double r = invariance_residual_of(tuple_.mat(i), c.space);
      invariance_residual_ = std::max(invariance_residual_, r);
      if (r > tol.invariance_rel) {
        std::ostringstream os;
        os << "decomposition failed: cluster at " << point_str(c.point)
           << " is not invariant under operator " << i + 1 << " (relative residual " << r << ")";
        throw Error(ErrorCode::decomposition, os.str());
      }
    }
  }
}

JointDecomposition joint_decompose(CommutingTuple tuple, const Tolerances& tol) {
  const int d = tuple.dim();
  const int n = tuple.n();

  std::vector<ComplexMatrix> frames{ComplexMatrix::Identity(d, d)};
  for (int i = 0; i < n; ++i) {
    const double delta = tol.cluster_floor * fnorm(tuple.mat(i));
    std::vector<ComplexMatrix> next;
    for (const auto& frame : frames) {
      const int k = static_cast<int>(frame.cols());
      ComplexMatrix a = frame.adjoint() * tuple.mat(i) * frame;
      SchurPair sp = schur(a, tol);
      ComplexVector eigs = sp.u.diagonal();
      auto groups = chain_eigenvalues(eigs, delta);
      if (groups.size() == 1) {
        next.push_back(frame);
        continue;
      }
      for (const auto& g : groups) {
        std::vector<Complex> members;
        members.reserve(g.size());
        for (int idx : g) members.push_back(eigs(idx));
        auto pred = [&members, delta](Complex z) {
          for (Complex m : members)
            if (std::abs(z - m) <= 0.49 * std::max(delta, 1e-300)) return true;
          return false;
        };
        ReorderedSchur ro = reorder_schur(sp, pred, tol);
        detail::require(ro.selected_dim == static_cast<int>(g.size()), ErrorCode::decomposition,
                        "decomposition failed: cluster selection lost members");
        next.push_back(frame * ro.q.leftCols(ro.selected_dim));
      }
    }
    frames = std::move(next);
  }

  std::vector<Cluster> clusters;
  clusters.reserve(frames.size());
  for (auto& frame : frames) {
    const int mult = static_cast<int>(frame.cols());
    Point point(n);
    for (int i = 0; i < n; ++i) {
      ComplexMatrix a = frame.adjoint() * tuple.mat(i) * frame;
      point[i] = eigenvalues(a, tol).mean();
    }
    Subspace space = Subspace::from_frame(std::move(frame), tol);
    clusters.push_back(Cluster{std::move(point), mult, std::move(space)});
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster& a, const Cluster& b) { return point_less(a.point, b.point); });
  return JointDecomposition(std::move(tuple), std::move(clusters), tol);
}

JointDecomposition decompose_single(const ComplexMatrix& t, const Tolerances& tol) {
  return joint_decompose(CommutingTuple({t}, tol), tol);
}

namespace {

// Join of the cluster spaces selected by `in_b`, with boundary guards.
std::pair<Subspace, Subspace> split_spaces(const JointDecomposition& dec, const Region& b,
                                           const Tolerances& tol) {
  detail::require(b.dim() == dec.n(), ErrorCode::dimension_mismatch,
                  "region dimension does not match tuple arity");
  Subspace inside = Subspace::zero(dec.dim());
  Subspace outside = Subspace::zero(dec.dim());
  for (const auto& c : dec.clusters()) {
    check_boundary(b, c.point, tol);
    if (b.contains(c.point))
      inside = subspace_join(inside, c.space, tol);
    else
      outside = subspace_join(outside, c.space, tol);
  }
  return {inside, outside};
}

}  // namespace

Idempotent riesz_idempotent(const JointDecomposition& dec, const Region& b, const Tolerances& tol) {
  auto [inside, outside] = split_spaces(dec, b, tol);
  return Idempotent::from_pair(std::move(inside), std::move(outside), tol);
}

Subspace spectral_projection(const JointDecomposition& dec, const Region& b,
                             const Tolerances& tol) {
  return split_spaces(dec, b, tol).first;
}

TraceValue spectral_trace(const JointDecomposition& dec, const Region& b, const Tolerances& tol) {
  detail::require(b.dim() == dec.n(), ErrorCode::dimension_mismatch,
                  "region dimension does not match tuple arity");
  int rank = 0;
  for (const auto& c : dec.clusters()) {
    check_boundary(b, c.point, tol);
    if (b.contains(c.point)) rank += c.multiplicity;
  }
  return TraceValue{rank, dec.dim()};
}

ComplexMatrix restrict_to(const ComplexMatrix& t, const Subspace& k, const Tolerances& tol) {
  detail::require(k.ambient() == t.rows(), ErrorCode::dimension_mismatch,
                  "restrict: ambient mismatch");
  const double r = invariance_residual_of(t, k);
  if (r > tol.invariance_rel)
    throw Error(ErrorCode::not_invariant,
                "restrict: not an invariant subspace (relative residual " + std::to_string(r) + ")");
  return k.frame().adjoint() * t * k.frame();
}

ComplexMatrix evaluate_polynomial(const CommutingTuple& tuple, const Polynomial& q,
                                  const Tolerances& tol) {
  detail::require(q.nvars == tuple.n(), ErrorCode::dimension_mismatch,
                  "evaluate_polynomial: arity mismatch");
  const int d = tuple.dim();

  // power cache per variable
  std::vector<std::vector<ComplexMatrix>> pows(tuple.n());
  for (int i = 0; i < tuple.n(); ++i) pows[i].push_back(ComplexMatrix::Identity(d, d));
  auto power = [&](int var, int e) -> const ComplexMatrix& {
    auto& cache = pows[var];
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * tuple.mat(var));
    return cache[e];
  };

  auto accumulate = [&](bool forward) {
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    for (const auto& [exps, coeff] : q.terms) {
      ComplexMatrix term = ComplexMatrix::Identity(d, d);
      if (forward) {
        for (int v = 0; v < q.nvars; ++v)
          if (exps[v] > 0) term = term * power(v, exps[v]);
      } else {
        for (int v = q.nvars - 1; v >= 0; --v)
          if (exps[v] > 0) term = term * power(v, exps[v]);
      }
      acc += coeff * term;
    }
    return acc;
  };

  ComplexMatrix fwd = accumulate(true);
  ComplexMatrix rev = accumulate(false);
  const double diff = (fwd - rev).norm();
  const double scale = std::max(fwd.norm(), 1.0);
  detail::require(diff <= 1e-10 * scale, ErrorCode::verification,
                  "evaluate_polynomial: factor orderings disagree by " + std::to_string(diff));
  return fwd;
}

Report verify_box_formula(const JointDecomposition& dec, const std::vector<Region>& boxes,
                          const Tolerances& tol) {
  Report rep;
  rep.title = "box-formula";
  detail::require(static_cast<int>(boxes.size()) == dec.n(), ErrorCode::dimension_mismatch,
                  "verify_box_formula: need one box per operator");

  Subspace meet_route = Subspace::full(dec.dim());
  for (int i = 0; i < dec.n(); ++i) {
    detail::require(boxes[i].dim() == 1, ErrorCode::dimension_mismatch,
                    "verify_box_formula: factor regions must be 1-dimensional");
    JointDecomposition single = decompose_single(dec.tuple().mat(i), tol);
    meet_route = subspace_meet(meet_route, spectral_projection(single, boxes[i], tol), tol);
  }

  Region product = boxes[0];
  for (std::size_t i = 1; i < boxes.size(); ++i) product = Region::product(product, boxes[i]);
  Subspace cluster_route = spectral_projection(dec, product, tol);
  TraceValue tv = spectral_trace(dec, product, tol);

  rep.add("meet route vs cluster route distance", subspace_distance(meet_route, cluster_route),
          tol.subspace_dist);
  rep.add_flag("trace equals multiplicity fraction",
               meet_route.dim() == tv.rank && cluster_route.dim() == tv.rank,
               static_cast<double>(meet_route.dim() - tv.rank));
  return rep;
}

Report verify_sigma_additivity(const JointDecomposition& dec, const std::vector<Region>& partition,
                               const Tolerances& tol) {
  Report rep;
  rep.title = "sigma-additivity";

  bool disjoint_cover = true;
  for (const auto& c : dec.clusters()) {
    int hits = 0;
    for (const auto& r : partition) {
      check_boundary(r, c.point, tol);
      if (r.contains(c.point)) ++hits;
    }
    if (hits != 1) disjoint_cover = false;
  }
  rep.add_flag("partition hits each cluster exactly once", disjoint_cover);

  std::vector<Idempotent> pieces;
  pieces.reserve(partition.size());
  for (const auto& r : partition) pieces.push_back(riesz_idempotent(dec, r, tol));

  double max_prod = 0.0;
  std::vector<Materialized> mats;
  mats.reserve(pieces.size());
  for (const auto& e : pieces) mats.push_back(e.materialize(tol));
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = 0; j < pieces.size(); ++j)
      if (i != j) max_prod = std::max(max_prod, (mats[i].matrix * mats[j].matrix).norm());
  rep.add("pairwise annihilation max product norm", max_prod, tol.annihilation);

  Region whole = partition[0];
  for (std::size_t i = 1; i < partition.size(); ++i) whole = whole | partition[i];
  Idempotent of_union = riesz_idempotent(dec, whole, tol);
  try {
    Idempotent summed = sum_annihilating(pieces, tol);
    rep.add("sum range vs union range distance",
            subspace_distance(summed.range(), of_union.range()), tol.subspace_dist);
    rep.add("sum kernel vs union kernel distance",
            subspace_distance(summed.kernel(), of_union.kernel()), tol.subspace_dist);
    int rank_sum = 0;
    for (const auto& e : pieces) rank_sum += e.trace().rank;
    rep.add_flag("trace additivity exact in ranks", rank_sum == of_union.trace().rank,
                 static_cast<double>(rank_sum - of_union.trace().rank));
  } catch (const Error& err) {
    rep.add_flag(std::string("sum_annihilating: ") + err.what(), false);
  }
  return rep;
}

Report verify_lattice_identities(const JointDecomposition& dec, const Region& a, const Region& b,
                                 const Tolerances& tol) {
  Report rep;
  rep.title = "lattice-identities";
  detail::require(dec.n() == 1, ErrorCode::invalid_argument,
                  "verify_lattice_identities: single operators only");

  Subspace ka = spectral_projection(dec, a, tol);
  Subspace kb = spectral_projection(dec, b, tol);
  Subspace kab = spectral_projection(dec, a & b, tol);
  Subspace kaub = spectral_projection(dec, a | b, tol);

  rep.add("K(A)^K(B) vs K(A^B)", subspace_distance(subspace_meet(ka, kb, tol), kab),
          tol.subspace_dist);
  rep.add("K(A)vK(B) vs K(AuB)", subspace_distance(subspace_join(ka, kb, tol), kaub),
          tol.subspace_dist);

  // K_T(B) = K_{T^*}((B^c)^*)^perp, with the right side from a fresh
  // decomposition of T^H; membership of a conjugated point in (B^c)^* is
  // equivalent to its conjugate lying outside B.
  JointDecomposition adj = decompose_single(dec.tuple().mat(0).adjoint(), tol);
  Subspace conj_side = Subspace::zero(dec.dim());
  for (const auto& c : adj.clusters()) {
    const Point back{std::conj(c.point[0])};
    check_boundary(b, back, tol);
    if (!b.contains(back)) conj_side = subspace_join(conj_side, c.space, tol);
  }
  rep.add("K_T(B) vs K_{T*}((B^c)*)^perp",
          subspace_distance(kb, subspace_complement(conj_side, tol)), tol.subspace_dist);
  return rep;
}

Report verify_restriction_identity(const ComplexMatrix& t, const Subspace& p, const Region& b,
                                   const Tolerances& tol) {
  Report rep;
  rep.title = "restriction-identity";

  JointDecomposition whole = decompose_single(t, tol);
  Subspace rhs = subspace_meet(spectral_projection(whole, b, tol), p, tol);

  if (p.dim() == 0) {
    rep.add_flag("restriction to zero subspace", rhs.dim() == 0);
    return rep;
  }
  ComplexMatrix tr = restrict_to(t, p, tol);
  JointDecomposition inner = decompose_single(tr, tol);
  Subspace kr = spectral_projection(inner, b, tol);
  Subspace mapped = kr.dim() == 0 ? Subspace::zero(p.ambient())
                                  : Subspace::from_frame(p.frame() * kr.frame(), tol);
  rep.add("restricted K pulled back vs K ^ P", subspace_distance(mapped, rhs), tol.subspace_dist);
  return rep;
}

Report verify_maximality(const JointDecomposition& dec, const Region& b, int trials,
                         std::uint64_t seed, const Tolerances& tol) {
  Report rep;
  rep.title = "maximality";

  std::vector<int> inside;
  for (int i = 0; i < static_cast<int>(dec.clusters().size()); ++i) {
    check_boundary(b, dec.clusters()[i].point, tol);
    if (b.contains(dec.clusters()[i].point)) inside.push_back(i);
  }
  Subspace pb = spectral_projection(dec, b, tol);

  const int k = static_cast<int>(inside.size());
  const int enumerable = std::min(k, 10);
  bool all_contained = true;
  for (std::uint64_t mask = 0; mask < (1ull << enumerable); ++mask) {
    Subspace q = Subspace::zero(dec.dim());
    for (int j = 0; j < enumerable; ++j)
      if (mask & (1ull << j)) q = subspace_join(q, dec.clusters()[inside[j]].space, tol);
    if (!subspace_contains(pb, q, tol)) all_contained = false;
  }
  rep.add_flag("every cluster sub-join below P(B)", all_contained,
               static_cast<double>(1 << enumerable));

  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  bool trials_ok = true;
  for (int t = 0; t < trials; ++t) {
    Subspace q = Subspace::zero(dec.dim());
    for (int j : inside)
      if (rng.uniform() < 0.5) q = subspace_join(q, dec.clusters()[j].space, tol);
    if (!subspace_contains(pb, q, tol)) trials_ok = false;
    if (q.dim() == 0) continue;
    // independent re-check: the restricted tuple's spectrum lies in B
    std::vector<ComplexMatrix> rmats;
    for (const auto& m : dec.tuple().mats()) rmats.push_back(restrict_to(m, q, tol));
    JointDecomposition rdec = joint_decompose(CommutingTuple(rmats, tol), tol);
    for (const auto& c : rdec.clusters())
      if (!b.contains(c.point)) trials_ok = false;
  }
  rep.add_flag("random invariant joins below P(B) with measure in B", trials_ok,
               static_cast<double>(trials));
  return rep;
}

}  // namespace brown
