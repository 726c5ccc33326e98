#pragma once

#include <span>
#include <vector>

#include "brown/subspace.hpp"

namespace brown {

/// Matrix form of an idempotent together with the condition number of the
/// [range|kernel] basis it was computed from.
struct Materialized {
  ComplexMatrix matrix;
  double condition;
};

/// A (not necessarily orthogonal) idempotent, stored as its (range, kernel)
/// pair of subspaces. The matrix form is produced on demand.
class Idempotent {
public:
  /// Builds the unique idempotent with the given range and kernel. The pair
  /// must be complementary: dims add up to the ambient dimension and the
  /// subspaces meet only in 0.
  static Idempotent from_pair(Subspace range, Subspace kernel,
                              const Tolerances& tol = default_tols());

  static Idempotent zero(int ambient);
  static Idempotent identity(int ambient);

  const Subspace& range() const { return range_; }
  const Subspace& kernel() const { return kernel_; }
  int ambient() const { return range_.ambient(); }

  TraceValue trace() const { return TraceValue{range_.dim(), ambient()}; }

  /// The projection whose trace realizes tr(e); at finite dimension the range
  /// projection has the same trace as the support projection.
  Subspace support_projection() const { return range_; }

  /// 1 - e: range and kernel swap.
  Idempotent complement() const { return Idempotent(kernel_, range_); }

  /// Explicit matrix via the basis change [R|K] diag(I,0) [R|K]^{-1}.
  Materialized materialize(const Tolerances& tol = default_tols()) const;

private:
  Idempotent(Subspace range, Subspace kernel)
      : range_(std::move(range)), kernel_(std::move(kernel)) {}
  Subspace range_;
  Subspace kernel_;
};

/// Sum of mutually annihilating idempotents: range = join of ranges, kernel =
/// meet of kernels, trace adds in exact rank arithmetic.
Idempotent sum_annihilating(std::span<const Idempotent> parts,
                            const Tolerances& tol = default_tols());

struct CommutationWitness {
  bool commute = false;
  int lattice_join_dim = 0;    // dim of (P^R)v(P^S)v(Q^R)v(Q^S)
  double commutator_norm = 0;  // ||EF - FE||_F
  double scale = 1;            // ||E||_F ||F||_F
};

/// Evaluates both the lattice criterion and the direct commutator; raises
/// criterion_mismatch if the two disagree.
CommutationWitness idempotents_commute(const Idempotent& e, const Idempotent& f,
                                       const Tolerances& tol = default_tols());

}  // namespace brown
