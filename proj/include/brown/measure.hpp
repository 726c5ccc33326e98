#pragma once

#include "brown/tuple.hpp"

namespace brown {

struct Atom {
  Point z;
  double weight = 0.0;
};

/// Finitely supported probability measure on C^n. Construction merges atoms
/// closer than merge_tol (weighted means, deterministic order) and validates
/// unit mass.
class AtomicMeasure {
public:
  AtomicMeasure(int dim, std::vector<Atom> atoms, const Tolerances& tol = default_tols());

  static AtomicMeasure dirac(Point p);

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_mass() const;

  /// Mass of a region (exact membership per atom).
  double mass(const Region& r) const;

private:
  int dim_;
  std::vector<Atom> atoms_;
};

/// Joint eigenvalue distribution of the decomposition: cluster points with
/// weights multiplicity/d.
AtomicMeasure brown_measure(const JointDecomposition& dec, const Tolerances& tol = default_tols());

/// Atoms mapped pointwise, coinciding images merged; mass preserved exactly.
AtomicMeasure pushforward(const AtomicMeasure& mu, const MapDescriptor& map,
                          const Tolerances& tol = default_tols());

/// Product measure on C^{m+n}.
AtomicMeasure product_measure(const AtomicMeasure& mu, const AtomicMeasure& nu,
                              const Tolerances& tol = default_tols());

/// Classical additive / multiplicative convolution of measures on C.
AtomicMeasure convolve_additive(const AtomicMeasure& mu, const AtomicMeasure& nu,
                                const Tolerances& tol = default_tols());
AtomicMeasure convolve_multiplicative(const AtomicMeasure& mu, const AtomicMeasure& nu,
                                      const Tolerances& tol = default_tols());

/// Matching distance: minimal-cost perfect matching where matching atom i to
/// atom j costs |w_i - v_j| + |p_i - q_j| and matching an atom to nothing
/// costs its weight. Zero iff the measures agree up to merge_tol; symmetric.
double measure_distance(const AtomicMeasure& mu, const AtomicMeasure& nu);

/// Builds the dyadic box function nu(A,B) = tau(P_S(A) ^ P_T(B)) over a grid
/// of the given depth covering the joint spectrum, checks separate
/// sigma-additivity in each argument (exactly, in rank arithmetic), and
/// reconstructs the measure from grid data: each occupied cell pair
/// contributes an atom at the trace-mean of the compressed operators.
/// The reconstruction must match brown_measure(dec).
Report verify_distribution_extension(const JointDecomposition& dec, int grid_depth,
                                     const Tolerances& tol = default_tols());

}  // namespace brown
