#pragma once

#include "brown/measure.hpp"

namespace brown {

/// tau(log|A|) = (1/d) sum log(singular values). Returns -infinity when A is
/// singular at the relative floor; that is a value, not an error.
double fk_log_det(const ComplexMatrix& a, const Tolerances& tol = default_tols());

/// |tau(log|sum alpha_i T_i - 1|) - int log|sum alpha_i z_i - 1| dmu| for the
/// tuple's joint eigenvalue measure. Raises ill_posed_alpha when an atom lies
/// within the hyperplane guard.
double characterization_gap(const CommutingTuple& tuple, const AtomicMeasure& mu,
                            const std::vector<Complex>& alpha,
                            const Tolerances& tol = default_tols());
double characterization_gap(const CommutingTuple& tuple, const JointDecomposition& dec,
                            const std::vector<Complex>& alpha,
                            const Tolerances& tol = default_tols());

/// r'(T) = max |z| over the support of a 1-dimensional measure.
double modified_spectral_radius(const AtomicMeasure& mu);

/// r'(ST) <= r'(S) r'(T) and r'(S+T) <= r'(S) + r'(T), radii from the
/// eigenvalue measures of S, T, ST and S+T.
Report verify_radius_inequalities(const ComplexMatrix& s, const ComplexMatrix& t,
                                  const Tolerances& tol = default_tols());

/// Regularized log-potential (1/2d) log det((T-lambda)^H (T-lambda) + eps^2).
double log_potential(const ComplexMatrix& t, Complex lambda, double eps);

struct GridSpec {
  double x_min, x_max, y_min, y_max;
  int nx = 200, ny = 200;
};

/// Cell masses of the distributional Laplacian (1/2pi) of the regularized
/// log-potential.
class GridDensity {
public:
  GridDensity(GridSpec spec, double eps, Eigen::MatrixXd cell_mass,
              const Tolerances& tol = default_tols());

  const GridSpec& spec() const { return spec_; }
  double epsilon() const { return eps_; }
  const Eigen::MatrixXd& cell_mass() const { return mass_; }
  double total_mass() const { return total_; }
  /// Largest single-cell negativity (cell masses >= -negative_leak(); the
  /// construction rejects grids where this exceeds 5% of the total).
  double negative_leak() const { return leak_; }
  /// Summed |negative cell mass|, reported as a diagnostic. Under-resolved
  /// atoms (eps below the cell size) produce an oscillating ring whose summed
  /// leak can exceed the per-cell bound without invalidating the grid.
  double negative_total() const { return neg_total_; }

  double cell_x(int i) const { return spec_.x_min + (i + 0.5) * hx(); }
  double cell_y(int j) const { return spec_.y_min + (j + 0.5) * hy(); }
  double hx() const { return (spec_.x_max - spec_.x_min) / spec_.nx; }
  double hy() const { return (spec_.y_max - spec_.y_min) / spec_.ny; }

  /// Total mass of cells whose center satisfies the predicate.
  double mass_where(const std::function<bool(Complex)>& pred) const;

private:
  GridSpec spec_;
  double eps_;
  Eigen::MatrixXd mass_;
  double total_ = 0;
  double leak_ = 0;
  double neg_total_ = 0;
};

/// Evaluates the log-potential over the grid (each cell independently; the
/// result is identical for any thread count) and forms the five-point
/// Laplacian mass per cell. Errors with "grid does not contain spectrum" when
/// the potential is visibly non-harmonic on the boundary ring.
GridDensity grid_brown(const ComplexMatrix& t, const GridSpec& spec, double eps, int threads = 0,
                       const Tolerances& tol = default_tols());

/// Default grid for a matrix: centered square covering the
/// eps-pseudospectrum, radius ||T|| + 3 eps + margin.
GridSpec default_grid(const ComplexMatrix& t, double eps, int resolution = 200,
                      double margin = 0.5);

}  // namespace brown
