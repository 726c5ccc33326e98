#pragma once

#include "brown/measure.hpp"

namespace brown {

enum class CoverMap { add, multiply };

/// One emitted dyadic box pair I(z,delta) x I(w,delta).
struct CoverBox {
  Complex z, w;
  double delta = 1.0;
  int level = 0;
};

/// A materialized portion of the canonical dyadic cover of map^{-1}(U).
/// The emission rule consumes only U (and norm_bound for the multiplicative
/// map); disjointness and the safety inclusions hold exactly.
struct BoxCover {
  Region target;
  CoverMap map = CoverMap::add;
  int depth = 0;
  double norm_bound = 0.0;
  std::vector<CoverBox> boxes;
  /// Fraction of the guide measure's preimage mass covered (1 with no guide).
  double covered_fraction = 1.0;
};

/// Emits, level by level (half-widths 1, 1/2, ..., 2^{-depth}), the canonical
/// boxes that are safe for the map: a level-m box is in the cover iff it
/// passes the safety inclusion and no ancestor does. Materialization is
/// directed by the guide atoms (preimage points of the supplied measure) plus
/// a U-derived probe lattice, so box counts stay bounded; the underlying
/// cover is independent of any operator data.
BoxCover dyadic_cover(const Region& u, CoverMap map, int depth, double norm_bound = 0.0,
                      const AtomicMeasure* guide = nullptr, double window = 0.0,
                      const Tolerances& tol = default_tols());

/// Exact pairwise disjointness (half-open semantics) and safety-inclusion
/// re-verification plus corner evaluation of the preimage condition.
Report check_cover(const BoxCover& cover, const Tolerances& tol = default_tols());

/// Cover-based joins against P_{S+T}(U), P_{ST}(U) and the direct preimage
/// projections P_{S,T}(a^{-1} U), P_{S,T}(m^{-1} U).
Report verify_preimage_projection(const JointDecomposition& dec, const Region& u, int depth,
                                  const Tolerances& tol = default_tols());

/// Meet of P(U_k) over a shrinking family of opens equals P(B) once the opens
/// separate the clusters.
Report verify_general_borel(const JointDecomposition& dec, const Region& b,
                            const std::vector<Region>& opens,
                            const Tolerances& tol = default_tols());

}  // namespace brown
