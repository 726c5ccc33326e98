#include "brown/idempotent.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <sstream>

namespace brown {

Idempotent Idempotent::from_pair(Subspace range, Subspace kernel, const Tolerances& tol) {
  detail::require(range.ambient() == kernel.ambient(), ErrorCode::not_complementary_pair,
                  "idempotent_from_pair: not a complementary pair (ambient mismatch)");
  const int d = range.ambient();
  detail::require(range.dim() + kernel.dim() == d, ErrorCode::not_complementary_pair,
                  "idempotent_from_pair: not a complementary pair (dims " +
                      std::to_string(range.dim()) + "+" + std::to_string(kernel.dim()) +
                      " != " + std::to_string(d) + ")");
  const double cosine = max_principal_cosine(range, kernel);
  detail::require(cosine <= 1.0 - tol.complementary_cos, ErrorCode::not_complementary_pair,
                  "idempotent_from_pair: not a complementary pair (range and kernel overlap, "
                  "cosine " + std::to_string(cosine) + ")");
  return Idempotent(std::move(range), std::move(kernel));
}

Idempotent Idempotent::zero(int ambient) {
  return Idempotent(Subspace::zero(ambient), Subspace::full(ambient));
}

Idempotent Idempotent::identity(int ambient) {
  return Idempotent(Subspace::full(ambient), Subspace::zero(ambient));
}

Materialized Idempotent::materialize(const Tolerances& tol) const {
  const int d = ambient();
  const int r = range_.dim();
  if (r == 0) return {ComplexMatrix::Zero(d, d), 1.0};
  if (r == d) return {ComplexMatrix::Identity(d, d), 1.0};

  ComplexMatrix basis(d, d);
  basis << range_.frame(), kernel_.frame();
  Eigen::JacobiSVD<ComplexMatrix> svd(basis);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / std::max(sv(d - 1), 1e-300);
  if (cond > tol.cond_max)
    throw Error(ErrorCode::nearly_degenerate,
                "materialize: nearly degenerate idempotent, basis condition number " +
                    std::to_string(cond));

  // E = [R|K] diag(I_r, 0) [R|K]^{-1}: take the top r rows of the inverse.
  ComplexMatrix inv = basis.partialPivLu().solve(ComplexMatrix::Identity(d, d));
  Materialized out{range_.frame() * inv.topRows(r), cond};

  const double resid_r = (out.matrix * range_.frame() - range_.frame()).norm();
  const double resid_k = (out.matrix * kernel_.frame()).norm();
  const double bound = tol.materialize_residual * std::max(cond, 1.0);
  detail::require(resid_r <= bound && resid_k <= bound, ErrorCode::nearly_degenerate,
                  "materialize: action residual exceeds tolerance");
  return out;
}

Idempotent sum_annihilating(std::span<const Idempotent> parts, const Tolerances& tol) {
  detail::require(!parts.empty(), ErrorCode::invalid_argument, "sum_annihilating: empty list");
  const int d = parts[0].ambient();
  if (parts.size() == 1) return parts[0];

  std::vector<ComplexMatrix> mats;
  mats.reserve(parts.size());
  for (const auto& e : parts) {
    detail::require(e.ambient() == d, ErrorCode::dimension_mismatch,
                    "sum_annihilating: ambient mismatch");
    mats.push_back(e.materialize(tol).matrix);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      const double nij = (mats[i] * mats[j]).norm();
      const double nji = (mats[j] * mats[i]).norm();
      if (nij > tol.annihilation || nji > tol.annihilation) {
        std::ostringstream os;
        os << "sum_annihilating: not mutually annihilating, pair (" << i << "," << j
           << ") has product norms " << nij << ", " << nji;
        throw Error(ErrorCode::not_mutually_annihilating, os.str());
      }
    }
  }

  Subspace range = parts[0].range();
  Subspace kernel = parts[0].kernel();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    range = subspace_join(range, parts[i].range(), tol);
    kernel = subspace_meet(kernel, parts[i].kernel(), tol);
  }
  int rank_sum = 0;
  for (const auto& e : parts) rank_sum += e.range().dim();
  detail::require(range.dim() == rank_sum, ErrorCode::not_mutually_annihilating,
                  "sum_annihilating: joined range rank " + std::to_string(range.dim()) +
                      " disagrees with trace sum " + std::to_string(rank_sum));
  return Idempotent::from_pair(std::move(range), std::move(kernel), tol);
}

CommutationWitness idempotents_commute(const Idempotent& e, const Idempotent& f,
                                       const Tolerances& tol) {
  detail::require(e.ambient() == f.ambient(), ErrorCode::dimension_mismatch,
                  "idempotents_commute: ambient mismatch");
  const int d = e.ambient();

  const Materialized me = e.materialize(tol);
  const Materialized mf = f.materialize(tol);
  CommutationWitness w;
  w.commutator_norm = (me.matrix * mf.matrix - mf.matrix * me.matrix).norm();
  w.scale = std::max(me.matrix.norm() * mf.matrix.norm(), 1e-300);
  const bool direct = w.commutator_norm <= tol.commute_rel * w.scale;

  const Subspace& p = e.range();
  const Subspace& q = e.kernel();
  const Subspace& r = f.range();
  const Subspace& s = f.kernel();
  Subspace join = subspace_join(subspace_meet(p, r, tol), subspace_meet(p, s, tol), tol);
  join = subspace_join(join, subspace_meet(q, r, tol), tol);
  join = subspace_join(join, subspace_meet(q, s, tol), tol);
  w.lattice_join_dim = join.dim();
  const bool lattice = (w.lattice_join_dim == d);

  if (direct != lattice) {
    std::ostringstream os;
    os << "idempotents_commute: criterion mismatch (commutator " << w.commutator_norm
       << " vs lattice join dim " << w.lattice_join_dim << "/" << d << ")";
    throw Error(ErrorCode::criterion_mismatch, os.str());
  }
  w.commute = direct;
  return w;
}

}  // namespace brown
