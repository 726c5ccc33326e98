#pragma once

#include "brown/types.hpp"

namespace brown {

/// A closed subspace of C^d, carried by a d x k orthonormal frame (k may be 0).
class Subspace {
public:
  /// Wraps a frame that is already orthonormal (validated).
  static Subspace from_frame(ComplexMatrix frame, const Tolerances& tol = default_tols());

  /// Orthonormalizes the column span of an arbitrary matrix; rank is decided
  /// by the relative singular-value threshold.
  static Subspace from_span(const ComplexMatrix& cols, const Tolerances& tol = default_tols());

  static Subspace zero(int ambient);
  static Subspace full(int ambient);
  static Subspace span_of_basis_vector(int ambient, int index);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(frame_.cols()); }
  const ComplexMatrix& frame() const { return frame_; }

  /// Orthogonal projection onto the subspace.
  ComplexMatrix projector() const { return frame_ * frame_.adjoint(); }

  TraceValue trace() const { return TraceValue{dim(), ambient_}; }

private:
  Subspace(int ambient, ComplexMatrix frame) : ambient_(ambient), frame_(std::move(frame)) {}
  int ambient_;
  ComplexMatrix frame_;
};

/// Lattice meet: intersection detected via principal angles (cosine within
/// `tol.angle` of 1).
Subspace subspace_meet(const Subspace& u, const Subspace& v, const Tolerances& tol = default_tols());

/// Lattice join: closure of the sum; rank by relative singular-value cutoff.
Subspace subspace_join(const Subspace& u, const Subspace& v, const Tolerances& tol = default_tols());

/// Orthogonal complement.
Subspace subspace_complement(const Subspace& u, const Tolerances& tol = default_tols());

/// ||P_u - P_v||_2; equals sin of the largest principal angle when dims agree
/// and is >= 1 when they differ.
double subspace_distance(const Subspace& u, const Subspace& v);

/// Whether v <= u, i.e. ||(1 - P_u) frame_v|| <= tol.subspace_dist.
bool subspace_contains(const Subspace& u, const Subspace& v, const Tolerances& tol = default_tols());

/// Largest principal-angle cosine between u and v (0 when either is trivial).
double max_principal_cosine(const Subspace& u, const Subspace& v);

}  // namespace brown
