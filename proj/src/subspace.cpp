#include "brown/subspace.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace brown {

Subspace Subspace::from_frame(ComplexMatrix frame, const Tolerances& tol) {
  ensure_finite(frame, "Subspace frame");
  const int d = static_cast<int>(frame.rows());
  const int k = static_cast<int>(frame.cols());
  detail::require(k <= d, ErrorCode::dimension_mismatch, "Subspace: more columns than ambient dim");
  if (k > 0) {
    const double err =
        (frame.adjoint() * frame - ComplexMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
    detail::require(err <= tol.frame_orthonormality * std::max(1.0, double(d)),
                    ErrorCode::invalid_argument, "Subspace: frame not orthonormal");
  }
  return Subspace(d, std::move(frame));
}

Subspace Subspace::from_span(const ComplexMatrix& cols, const Tolerances& tol) {
  ensure_finite(cols, "Subspace span");
  const int d = static_cast<int>(cols.rows());
  if (cols.cols() == 0) return zero(d);
  Eigen::JacobiSVD<ComplexMatrix> svd(cols, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rank_rel * (sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff && sv(rank) > 0.0) ++rank;
  return Subspace(d, svd.matrixU().leftCols(rank));
}

Subspace Subspace::zero(int ambient) { return Subspace(ambient, ComplexMatrix(ambient, 0)); }

Subspace Subspace::full(int ambient) {
  return Subspace(ambient, ComplexMatrix::Identity(ambient, ambient));
}

Subspace Subspace::span_of_basis_vector(int ambient, int index) {
  ComplexMatrix f = ComplexMatrix::Zero(ambient, 1);
  f(index, 0) = 1.0;
  return Subspace(ambient, std::move(f));
}

namespace {
void check_ambient(const Subspace& u, const Subspace& v, const char* op) {
  detail::require(u.ambient() == v.ambient(), ErrorCode::dimension_mismatch,
                  std::string(op) + ": ambient dimensions differ");
}
}  // namespace

Subspace subspace_meet(const Subspace& u, const Subspace& v, const Tolerances& tol) {
  check_ambient(u, v, "subspace_meet");
  if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(u.ambient());
  // principal angles between the two frames; directions with cosine ~ 1 span
  // the intersection
  Eigen::JacobiSVD<ComplexMatrix> svd(u.frame().adjoint() * v.frame(), Eigen::ComputeFullU);
  const auto& cosines = svd.singularValues();
  int count = 0;
  while (count < cosines.size() && cosines(count) >= 1.0 - tol.angle) ++count;
  if (count == 0) return Subspace::zero(u.ambient());
  ComplexMatrix dirs = u.frame() * svd.matrixU().leftCols(count);
  // principal directions are orthonormal up to roundoff; clean with a QR pass
  Eigen::HouseholderQR<ComplexMatrix> qr(dirs);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(u.ambient(), count);
  return Subspace::from_frame(std::move(q), tol);
}

Subspace subspace_join(const Subspace& u, const Subspace& v, const Tolerances& tol) {
  check_ambient(u, v, "subspace_join");
  if (u.dim() == 0) return v;
  if (v.dim() == 0) return u;
  ComplexMatrix cat(u.ambient(), u.dim() + v.dim());
  cat << u.frame(), v.frame();
  return Subspace::from_span(cat, tol);
}

Subspace subspace_complement(const Subspace& u, const Tolerances& tol) {
  const int d = u.ambient();
  const int k = u.dim();
  if (k == 0) return Subspace::full(d);
  if (k == d) return Subspace::zero(d);
  Eigen::HouseholderQR<ComplexMatrix> qr(u.frame());
  ComplexMatrix q = qr.householderQ();
  return Subspace::from_frame(q.rightCols(d - k), tol);
}

double subspace_distance(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) return std::numeric_limits<double>::infinity();
  if (u.dim() == 0 && v.dim() == 0) return 0.0;
  ComplexMatrix diff = u.projector() - v.projector();
  Eigen::JacobiSVD<ComplexMatrix> svd(diff);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

bool subspace_contains(const Subspace& u, const Subspace& v, const Tolerances& tol) {
  if (u.ambient() != v.ambient()) return false;
  if (v.dim() == 0) return true;
  const double resid = (v.frame() - u.projector() * v.frame()).norm();
  return resid <= tol.subspace_dist * std::sqrt(double(v.dim()));
}

double max_principal_cosine(const Subspace& u, const Subspace& v) {
  if (u.dim() == 0 || v.dim() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(u.frame().adjoint() * v.frame());
  return svd.singularValues()(0);
}

}  // namespace brown
