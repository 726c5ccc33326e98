#include "brown/potential.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <cmath>
#include <thread>

#include "brown/linalg.hpp"

namespace brown {

double fk_log_det(const ComplexMatrix& a, const Tolerances& tol) {
  ensure_square(a, "fk_log_det");
  const int d = static_cast<int>(a.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  const double floor = tol.sv_floor * sv(0);
  double acc = 0.0;
  for (int i = 0; i < d; ++i) {
    if (sv(i) <= floor) return -std::numeric_limits<double>::infinity();
    acc += std::log(sv(i));
  }
  return acc / d;
}

double characterization_gap(const CommutingTuple& tuple, const AtomicMeasure& mu,
                            const std::vector<Complex>& alpha, const Tolerances& tol) {
  detail::require(static_cast<int>(alpha.size()) == tuple.n(), ErrorCode::dimension_mismatch,
                  "characterization_gap: alpha arity mismatch");
  detail::require(mu.dim() == tuple.n(), ErrorCode::dimension_mismatch,
                  "characterization_gap: measure dimension mismatch");
  const int d = tuple.dim();

  double rhs = 0.0;
  for (const auto& atom : mu.atoms()) {
    Complex dot = -1.0;
    for (int i = 0; i < tuple.n(); ++i) dot += alpha[i] * atom.z[i];
    const double dist = std::abs(dot);
    if (dist < tol.alpha_guard)
      throw Error(ErrorCode::ill_posed_alpha,
                  "characterization_gap: ill-posed alpha, atom within " + std::to_string(dist) +
                      " of the hyperplane");
    rhs += atom.weight * std::log(dist);
  }

  ComplexMatrix combo = ComplexMatrix::Identity(d, d) * Complex(-1.0, 0.0);
  for (int i = 0; i < tuple.n(); ++i) combo += alpha[i] * tuple.mat(i);
  const double lhs = fk_log_det(combo, tol);
  return std::abs(lhs - rhs);
}

double characterization_gap(const CommutingTuple& tuple, const JointDecomposition& dec,
                            const std::vector<Complex>& alpha, const Tolerances& tol) {
  return characterization_gap(tuple, brown_measure(dec, tol), alpha, tol);
}

double modified_spectral_radius(const AtomicMeasure& mu) {
  detail::require(mu.dim() == 1, ErrorCode::dimension_mismatch,
                  "modified_spectral_radius: 1-dimensional measures only");
  double r = 0.0;
  for (const auto& a : mu.atoms()) r = std::max(r, std::abs(a.z[0]));
  return r;
}

Report verify_radius_inequalities(const ComplexMatrix& s, const ComplexMatrix& t,
                                  const Tolerances& tol) {
  Report rep;
  rep.title = "radius-inequalities";
  CommutingTuple pair({s, t}, tol);  // validates commutation

  const double rs = modified_spectral_radius(brown_measure(decompose_single(s, tol), tol));
  const double rt = modified_spectral_radius(brown_measure(decompose_single(t, tol), tol));
  const double rst = modified_spectral_radius(brown_measure(decompose_single(s * t, tol), tol));
  const double rsum = modified_spectral_radius(brown_measure(decompose_single(s + t, tol), tol));

  rep.add("r'(ST) - r'(S) r'(T)", rst - rs * rt, 1e-12);
  rep.add("r'(S+T) - r'(S) - r'(T)", rsum - (rs + rt), 1e-12);
  return rep;
}

double log_potential(const ComplexMatrix& t, Complex lambda, double eps) {
  ensure_square(t, "log_potential");
  detail::require(eps > 0, ErrorCode::invalid_argument, "log_potential: eps must be positive");
  const int d = static_cast<int>(t.rows());
  ComplexMatrix shifted = t;
  shifted.diagonal().array() -= lambda;
  Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
  double acc = 0.0;
  for (int i = 0; i < d; ++i) acc += std::log(std::norm(svd.singularValues()(i)) + eps * eps);
  return acc / (2.0 * d);
}

GridDensity::GridDensity(GridSpec spec, double eps, Eigen::MatrixXd cell_mass,
                         const Tolerances& tol)
    : spec_(spec), eps_(eps), mass_(std::move(cell_mass)) {
  for (int i = 0; i < spec_.nx; ++i) {
    for (int j = 0; j < spec_.ny; ++j) {
      const double m = mass_(i, j);
      total_ += m;
      if (m < 0) {
        neg_total_ -= m;
        leak_ = std::max(leak_, -m);
      }
    }
  }
  if (leak_ > tol.mass_tol * std::max(std::abs(total_), 1e-12))
    throw Error(ErrorCode::grid, "GridDensity: negative cell mass " + std::to_string(leak_) +
                                     " exceeds " + std::to_string(tol.mass_tol) + " of total");
}

double GridDensity::mass_where(const std::function<bool(Complex)>& pred) const {
  double m = 0;
  for (int i = 0; i < spec_.nx; ++i)
    for (int j = 0; j < spec_.ny; ++j)
      if (pred(Complex(cell_x(i), cell_y(j)))) m += mass_(i, j);
  return m;
}

GridSpec default_grid(const ComplexMatrix& t, double eps, int resolution, double margin) {
  const double r = operator_norm(t) + 3.0 * eps + margin;
  return GridSpec{-r, r, -r, r, resolution, resolution};
}

GridDensity grid_brown(const ComplexMatrix& t, const GridSpec& spec, double eps, int threads,
                       const Tolerances& tol) {
  ensure_square(t, "grid_brown");
  detail::require(spec.nx >= 3 && spec.ny >= 3, ErrorCode::grid, "grid_brown: grid too coarse");
  detail::require(eps > 0, ErrorCode::invalid_argument, "grid_brown: eps must be positive");
  const int d = static_cast<int>(t.rows());
  const double hx = (spec.x_max - spec.x_min) / spec.nx;
  const double hy = (spec.y_max - spec.y_min) / spec.ny;

  // Potential nodes at cell centers plus a one-cell halo. Per node,
  // det((T-l)^H (T-l) + eps^2) = det(G - conj(l) T - l T^H + (|l|^2+eps^2))
  // with G = T^H T precomputed; the Cholesky factor gives the log-det.
  const int px = spec.nx + 2;
  const int py = spec.ny + 2;
  Eigen::MatrixXd pot(px, py);
  ComplexMatrix gram = t.adjoint() * t;
  ComplexMatrix th = t.adjoint();

  auto eval_node = [&](int ix, int iy) {
    const Complex lambda(spec.x_min + (ix - 0.5) * hx, spec.y_min + (iy - 0.5) * hy);
    ComplexMatrix m = gram;
    m.noalias() -= std::conj(lambda) * t;
    m.noalias() -= lambda * th;
    m.diagonal().array() += std::norm(lambda) + eps * eps;
    Eigen::LLT<ComplexMatrix> llt(m);
    if (llt.info() != Eigen::Success)
      throw Error(ErrorCode::grid, "grid_brown: Cholesky failure at a grid node");
    double acc = 0.0;
    for (int k = 0; k < d; ++k) acc += std::log(std::abs(llt.matrixLLT()(k, k)));
    return acc / d;  // = (1/2d) log det
  };

  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min(nthreads, px));
  {
    std::vector<std::thread> pool;
    std::atomic<int> next_row{0};
    auto worker = [&]() {
      for (;;) {
        const int ix = next_row.fetch_add(1);
        if (ix >= px) return;
        for (int iy = 0; iy < py; ++iy) pot(ix, iy) = eval_node(ix, iy);
      }
    };
    for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
    for (auto& th_ : pool) th_.join();
  }

  // five-point Laplacian; cell mass = (1/2pi) (d2x * hy/hx + d2y * hx/hy)
  Eigen::MatrixXd mass(spec.nx, spec.ny);
  for (int i = 0; i < spec.nx; ++i) {
    for (int j = 0; j < spec.ny; ++j) {
      const int ix = i + 1, iy = j + 1;
      const double d2x = pot(ix + 1, iy) - 2.0 * pot(ix, iy) + pot(ix - 1, iy);
      const double d2y = pot(ix, iy + 1) - 2.0 * pot(ix, iy) + pot(ix, iy - 1);
      mass(i, j) = (d2x * hy / hx + d2y * hx / hy) / (2.0 * M_PI);
    }
  }

  // the potential must be harmonic near the boundary; otherwise the grid is
  // clipping spectral mass
  double worst_edge = 0.0;
  for (int i = 0; i < spec.nx; ++i)
    worst_edge = std::max({worst_edge, std::abs(mass(i, 0)), std::abs(mass(i, spec.ny - 1))});
  for (int j = 0; j < spec.ny; ++j)
    worst_edge = std::max({worst_edge, std::abs(mass(0, j)), std::abs(mass(spec.nx - 1, j))});
  if (worst_edge > tol.grid_boundary_cell)
    throw Error(ErrorCode::grid, "grid_brown: grid does not contain spectrum (boundary cell mass " +
                                     std::to_string(worst_edge) + ")");

  return GridDensity(spec, eps, std::move(mass), tol);
}

}  // namespace brown
