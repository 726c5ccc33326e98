#pragma once

#include <functional>

#include "brown/types.hpp"

namespace brown {

/// Unitary Schur factorization A = Q U Q^H with U upper triangular.
struct SchurPair {
  ComplexMatrix q;
  ComplexMatrix u;
};

/// Complex Schur decomposition. Validates the reconstruction residual
/// ||Q U Q^H - A||_F <= schur_recon_factor * d * ||A||_F and unitarity of Q.
SchurPair schur(const ComplexMatrix& a, const Tolerances& tol = default_tols());

/// Reorders a Schur pair so that the eigenvalues accepted by `select` occupy
/// the leading block. Returns the reordered pair plus the leading-block size.
/// Swapping across a pair closer than the separation floor raises
/// ill_separated_cluster naming the pair.
struct ReorderedSchur {
  ComplexMatrix q;
  ComplexMatrix u;
  int selected_dim = 0;
};
ReorderedSchur reorder_schur(const SchurPair& qu, const std::function<bool(Complex)>& select,
                             const Tolerances& tol = default_tols());

/// Solves A X - X B = C for rectangular X (Bartels-Stewart). Requires the
/// spectra of A and B to be separated by more than the floor.
ComplexMatrix sylvester_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                              const ComplexMatrix& c, const Tolerances& tol = default_tols());

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b,
                        const Tolerances& tol = default_tols());

/// Eigenvalues of a (small) square matrix via Schur; unsorted.
ComplexVector eigenvalues(const ComplexMatrix& a, const Tolerances& tol = default_tols());

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

}  // namespace brown
