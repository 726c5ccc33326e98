#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace brown {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// A point in C^n.
using Point = std::vector<Complex>;

enum class ErrorCode {
  verification,
  commutation,
  decomposition,
  grid,
  io,
  dimension_mismatch,
  eigen_iteration,
  ill_separated_cluster,
  sylvester_ill_conditioned,
  not_complementary_pair,
  nearly_degenerate,
  not_mutually_annihilating,
  criterion_mismatch,
  boundary_ambiguous,
  not_invariant,
  ill_posed_alpha,
  size_limit,
  invalid_argument,
};

/// All library failures are reported through this type; the CLI maps
/// `code` onto its documented exit codes.
class Error : public std::runtime_error {
public:
  Error(ErrorCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  ErrorCode code;

  int exit_code() const noexcept {
    switch (code) {
      case ErrorCode::commutation: return 2;
      case ErrorCode::decomposition:
      case ErrorCode::eigen_iteration:
      case ErrorCode::ill_separated_cluster:
      case ErrorCode::sylvester_ill_conditioned: return 3;
      case ErrorCode::grid: return 4;
      case ErrorCode::io: return 5;
      default: return 1;
    }
  }
};

/// Normalized trace of a projection, kept in exact rank arithmetic:
/// value() == rank/dim with integer rank.
struct TraceValue {
  int rank = 0;
  int dim = 1;
  double value() const { return static_cast<double>(rank) / static_cast<double>(dim); }
};

inline bool operator==(const TraceValue& a, const TraceValue& b) {
  return static_cast<long long>(a.rank) * b.dim == static_cast<long long>(b.rank) * a.dim;
}

/// Numerical policy knobs. Defaults are the library-wide contract; the CLI
/// exposes --tol-* overrides and echoes effective values into reports.
struct Tolerances {
  double frame_orthonormality = 1e-12;  // ||F^H F - I||_max on Subspace frames
  double rank_rel = 1e-10;              // relative singular-value cutoff for rank decisions
  double angle = 1e-8;                  // principal-angle cosine slack for subspace meets
  double schur_recon_factor = 1e-10;    // reconstruction residual <= factor * d * ||A||_F
  double cluster_floor = 1e-7;          // eigenvalue chaining radius, relative to ||A||_F
  double commutation_rel = 1e-10;       // tuple commutator bound, relative
  double invariance_rel = 1e-8;         // ||(1-P) T P|| <= rel * ||T||
  double complementary_cos = 1e-10;     // range/kernel overlap cosine <= 1 - this
  double idempotent_residual = 1e-8;    // ||E^2-E||_F <= this * cond
  double materialize_residual = 1e-9;   // action residual <= this * cond
  double cond_max = 1e12;               // frame condition number ceiling
  double annihilation = 1e-8;           // ||E_i E_j||_F ceiling for annihilating sums
  double commute_rel = 1e-8;            // commutator criterion, relative
  double boundary_delta = 1e-9;         // region-boundary ambiguity guard
  double merge_tol = 1e-9;              // atom merge radius
  double alpha_guard = 1e-6;            // characterization hyperplane guard
  double sv_floor = 1e-14;              // relative singular-value floor for log-determinants
  double subspace_dist = 1e-8;          // verification distance for subspace equality
  double mass_tol = 0.05;               // grid total-mass slack
  double grid_boundary_cell = 1e-4;     // per-cell harmonicity ceiling on the boundary ring
  int max_dim = 1024;                   // matrix dimension ceiling
};

inline const Tolerances& default_tols() {
  static const Tolerances t{};
  return t;
}

namespace detail {
inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}
}  // namespace detail

/// Frobenius norm shorthand used by most contracts.
inline double fnorm(const ComplexMatrix& a) { return a.norm(); }

inline void ensure_finite(const ComplexMatrix& a, const std::string& what) {
  if (!a.allFinite()) throw Error(ErrorCode::invalid_argument, what + ": non-finite entries");
}

inline void ensure_square(const ComplexMatrix& a, const std::string& what) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::dimension_mismatch,
                what + ": matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

}  // namespace brown
