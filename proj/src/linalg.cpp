#include "brown/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <sstream>
#include <vector>

namespace brown {

namespace {

std::string cnum(Complex z) {
  std::ostringstream os;
  os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  return os.str();
}

// Swaps the diagonal entries at positions k, k+1 of the triangular factor by a
// unitary similarity, updating q accordingly. The first column of the local
// rotation is the normalized eigenvector of the trailing eigenvalue.
void swap_adjacent(ComplexMatrix& u, ComplexMatrix& q, int k) {
  const int n = static_cast<int>(u.rows());
  const Complex a = u(k, k);
  const Complex b = u(k, k + 1);
  const Complex c = u(k + 1, k + 1);

  const double scale = std::hypot(std::abs(b), std::abs(c - a));
  if (scale == 0.0) return;  // equal eigenvalues, nothing to move
  const Complex v0 = b / scale;
  const Complex v1 = (c - a) / scale;

  Eigen::Matrix2cd g;
  g << v0, -std::conj(v1), v1, std::conj(v0);

  u.block(0, k, k + 2, 2) = u.block(0, k, k + 2, 2) * g;
  u.block(k, k, 2, n - k) = g.adjoint() * u.block(k, k, 2, n - k);
  q.middleCols(k, 2) = q.middleCols(k, 2) * g;

  u(k + 1, k) = Complex(0, 0);
  u(k, k) = c;
  u(k + 1, k + 1) = a;
}

}  // namespace

SchurPair schur(const ComplexMatrix& a, const Tolerances& tol) {
  ensure_square(a, "schur");
  ensure_finite(a, "schur");
  const int d = static_cast<int>(a.rows());
  detail::require(d <= tol.max_dim, ErrorCode::size_limit,
                  "schur: dimension " + std::to_string(d) + " exceeds configured max " +
                      std::to_string(tol.max_dim));

  Eigen::ComplexSchur<ComplexMatrix> cs(a, /*computeU=*/true);
  if (cs.info() != Eigen::Success)
    throw Error(ErrorCode::eigen_iteration, "schur: eigen-iteration failed");

  SchurPair out{cs.matrixU(), cs.matrixT()};
  const double na = fnorm(a);
  const double resid = fnorm(out.q * out.u * out.q.adjoint() - a);
  const double bound = tol.schur_recon_factor * d * std::max(na, 1e-300);
  if (resid > bound)
    throw Error(ErrorCode::eigen_iteration,
                "schur: eigen-iteration failed, reconstruction residual " + std::to_string(resid) +
                    " exceeds " + std::to_string(bound));
  const double unit = (out.q.adjoint() * out.q - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  detail::require(unit <= 1e-12 * std::max(1.0, static_cast<double>(d)), ErrorCode::eigen_iteration,
                  "schur: Q not unitary");
  return out;
}

ReorderedSchur reorder_schur(const SchurPair& qu, const std::function<bool(Complex)>& select,
                             const Tolerances& tol) {
  const int n = static_cast<int>(qu.u.rows());
  ReorderedSchur out{qu.q, qu.u, 0};
  const double floor = tol.cluster_floor * std::max(fnorm(qu.u), 1e-300);

  std::vector<char> keep(n);
  for (int i = 0; i < n; ++i) keep[i] = select(out.u(i, i)) ? 1 : 0;
  out.selected_dim = static_cast<int>(std::count(keep.begin(), keep.end(), char(1)));

  int fill = 0;
  for (int i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    // bubble position i up to `fill` by adjacent swaps
    for (int k = i; k > fill; --k) {
      const Complex lo = out.u(k - 1, k - 1);
      const Complex hi = out.u(k, k);
      if (std::abs(lo - hi) < floor)
        throw Error(ErrorCode::ill_separated_cluster,
                    "reorder_schur: ill-separated cluster, eigenvalues " + cnum(lo) + " and " +
                        cnum(hi) + " closer than " + std::to_string(floor));
      swap_adjacent(out.u, out.q, k - 1);
    }
    ++fill;
  }
  return out;
}

ComplexMatrix sylvester_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                              const ComplexMatrix& c, const Tolerances& tol) {
  ensure_square(a, "sylvester_solve A");
  ensure_square(b, "sylvester_solve B");
  detail::require(c.rows() == a.rows() && c.cols() == b.rows(), ErrorCode::dimension_mismatch,
                  "sylvester_solve: C shape mismatch");

  const SchurPair sa = schur(a, tol);
  const SchurPair sb = schur(b, tol);
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(b.rows());

  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) gap = std::min(gap, std::abs(sa.u(i, i) - sb.u(j, j)));
  const double floor = tol.cluster_floor * std::max(fnorm(a) + fnorm(b), 1e-300);
  if (gap < floor)
    throw Error(ErrorCode::sylvester_ill_conditioned,
                "sylvester_solve: Sylvester ill-conditioned, spectral gap " + std::to_string(gap) +
                    " below floor " + std::to_string(floor));

  // Triangular system: Ua Y - Y Ub = Ct, solved column by column.
  ComplexMatrix ct = sa.q.adjoint() * c * sb.q;
  ComplexMatrix y(m, n);
  for (int j = 0; j < n; ++j) {
    ComplexVector rhs = ct.col(j);
    for (int k = 0; k < j; ++k) rhs += y.col(k) * sb.u(k, j);
    ComplexMatrix shifted = sa.u;
    shifted.diagonal().array() -= sb.u(j, j);
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  return sa.q * y * sb.q.adjoint();
}

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  const long rows = a.rows() * b.rows();
  const long cols = a.cols() * b.cols();
  detail::require(rows <= tol.max_dim && cols <= tol.max_dim, ErrorCode::size_limit,
                  "kronecker: product dimension " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " exceeds configured max");
  ComplexMatrix out(rows, cols);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector eigenvalues(const ComplexMatrix& a, const Tolerances& tol) {
  return schur(a, tol).u.diagonal();
}

double operator_norm(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

}  // namespace brown
