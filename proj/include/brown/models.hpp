#pragma once

#include <optional>

#include "brown/measure.hpp"
#include "brown/rng.hpp"

namespace brown {

struct JordanBlockSpec {
  Complex eigenvalue;
  int size = 1;
};

/// A generated matrix tuple plus, when the construction knows it, the exact
/// joint eigenvalue measure.
struct GeneratedModel {
  std::string kind;
  std::uint64_t seed = 0;
  std::vector<ComplexMatrix> mats;
  std::optional<AtomicMeasure> oracle;
};

/// One Ginibre matrix: i.i.d. centered complex Gaussian entries, variance 1/d.
GeneratedModel make_ginibre(int d, std::uint64_t seed);

/// T_i = S D_i S^{-1} with diagonal D_i and a shared similarity S of
/// controlled condition number. Diagonal entries are drawn with pairwise
/// separation at least min_sep per coordinate. Commuting, non-normal, exact
/// oracle.
GeneratedModel make_conjugated_diagonal(int d, int n, std::uint64_t seed,
                                        double condition = 30.0, double min_sep = 0.0,
                                        const Tolerances& tol = default_tols());

/// T_i = S p_i(J) S^{-1} for a shared Jordan-form base J with the given
/// eigenvalue layout. Defective, commuting, exact oracle.
GeneratedModel make_poly_of_jordan(int d, const std::vector<Polynomial>& polys,
                                   const std::vector<JordanBlockSpec>& layout, std::uint64_t seed,
                                   const Tolerances& tol = default_tols());

/// (S (x) 1, 1 (x) T) for conjugated-diagonal S, T; oracle is the product of
/// the factor measures.
GeneratedModel make_kronecker_pair(int d1, int d2, std::uint64_t seed,
                                   const Tolerances& tol = default_tols());

/// A random normal matrix U diag U^H with unitary U.
GeneratedModel make_normal(int d, std::uint64_t seed, const Tolerances& tol = default_tols());

/// Random unitary (QR of a Gaussian with phase-fixed diagonal).
ComplexMatrix random_unitary(int d, Rng& rng);

/// Similarity with prescribed 2-norm condition number.
ComplexMatrix random_similarity(int d, double condition, Rng& rng);

/// d complex values in [-scale, scale]^2 with pairwise separation >= min_sep.
std::vector<Complex> separated_points(int d, double scale, double min_sep, Rng& rng);

}  // namespace brown
