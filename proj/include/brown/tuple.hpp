#pragma once

#include "brown/idempotent.hpp"
#include "brown/region.hpp"
#include "brown/report.hpp"

namespace brown {

/// A tuple of pairwise commuting d x d matrices. Construction validates the
/// relative commutator bound and records the worst pair.
class CommutingTuple {
public:
  explicit CommutingTuple(std::vector<ComplexMatrix> mats,
                          const Tolerances& tol = default_tols());

  int n() const { return static_cast<int>(mats_.size()); }
  int dim() const { return static_cast<int>(mats_[0].rows()); }
  const std::vector<ComplexMatrix>& mats() const { return mats_; }
  const ComplexMatrix& mat(int i) const { return mats_[i]; }
  double commutator_bound() const { return commutator_bound_; }

private:
  std::vector<ComplexMatrix> mats_;
  double commutator_bound_ = 0.0;
};

/// One joint generalized eigenspace: the representative point in C^n, its
/// algebraic multiplicity, and an orthonormal frame of the space.
struct Cluster {
  Point point;
  int multiplicity = 0;
  Subspace space;
};

/// The full joint spectral decomposition of a commuting tuple. Spaces are
/// invariant for every operator and jointly complementary (generally not
/// orthogonal to each other).
class JointDecomposition {
public:
  JointDecomposition(CommutingTuple tuple, std::vector<Cluster> clusters,
                     const Tolerances& tol = default_tols());

  const CommutingTuple& tuple() const { return tuple_; }
  const std::vector<Cluster>& clusters() const { return clusters_; }
  int dim() const { return tuple_.dim(); }
  int n() const { return tuple_.n(); }

  /// Condition number of the concatenated cluster frames.
  double frame_condition() const { return frame_condition_; }
  /// Worst relative invariance residual ||(1-P_j) T_i P_j|| / ||T_i||.
  double invariance_residual() const { return invariance_residual_; }

private:
  CommutingTuple tuple_;
  std::vector<Cluster> clusters_;
  double frame_condition_ = 1.0;
  double invariance_residual_ = 0.0;
};

/// Recursive Schur refinement: splits along chained eigenvalue clusters of
/// T_1, then refines each invariant subspace with T_2, ..., T_n.
JointDecomposition joint_decompose(CommutingTuple tuple, const Tolerances& tol = default_tols());

/// Convenience: decomposition of a single operator.
JointDecomposition decompose_single(const ComplexMatrix& t, const Tolerances& tol = default_tols());

/// The idempotent e_{T_1..T_n}(B): identity on the spectral subspace of B,
/// zero on the spectral subspace of the complement. Cluster points within
/// boundary_delta of the region boundary raise boundary_ambiguous.
Idempotent riesz_idempotent(const JointDecomposition& dec, const Region& b,
                            const Tolerances& tol = default_tols());

/// K_{T_1..T_n}(B): join of the cluster spaces whose points lie in B.
Subspace spectral_projection(const JointDecomposition& dec, const Region& b,
                             const Tolerances& tol = default_tols());

/// mu(B) = tau(P(B)) in exact rank arithmetic.
TraceValue spectral_trace(const JointDecomposition& dec, const Region& b,
                          const Tolerances& tol = default_tols());

/// Compression of T to an invariant subspace (frame^H T frame).
ComplexMatrix restrict_to(const ComplexMatrix& t, const Subspace& k,
                          const Tolerances& tol = default_tols());

/// Matrix polynomial q(T_1..T_n); evaluated in two factor orders, asserting
/// agreement (the tuple commutes, so ordering is immaterial up to roundoff).
ComplexMatrix evaluate_polynomial(const CommutingTuple& tuple, const Polynomial& q,
                                  const Tolerances& tol = default_tols());

/// Meet route vs cluster route for a product box B_1 x ... x B_n.
Report verify_box_formula(const JointDecomposition& dec, const std::vector<Region>& boxes,
                          const Tolerances& tol = default_tols());

/// sigma-additivity and pairwise annihilation over a finite disjoint cover.
Report verify_sigma_additivity(const JointDecomposition& dec, const std::vector<Region>& partition,
                               const Tolerances& tol = default_tols());

/// K(A)^K(B) = K(A^B), K(AuB) = K(A)vK(B), and the adjoint-complement
/// identity computed from a fresh decomposition of T^H. Single operators only.
Report verify_lattice_identities(const JointDecomposition& dec, const Region& a, const Region& b,
                                 const Tolerances& tol = default_tols());

/// K_{T|P}(B) pulled back through the frame equals K_T(B) ^ P.
Report verify_restriction_identity(const ComplexMatrix& t, const Subspace& p, const Region& b,
                                   const Tolerances& tol = default_tols());

/// Every invariant subspace assembled from clusters inside B stays below
/// P(B); `trials` random subsets are additionally re-validated by
/// decomposing the restricted tuple.
Report verify_maximality(const JointDecomposition& dec, const Region& b, int trials,
                         std::uint64_t seed = 0, const Tolerances& tol = default_tols());

}  // namespace brown
