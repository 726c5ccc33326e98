#include "brown/models.hpp"

#include <Eigen/QR>
#include <cmath>

#include "brown/linalg.hpp"

namespace brown {

ComplexMatrix random_unitary(int d, Rng& rng) {
  ComplexMatrix g = rng.gaussian_matrix(d, d);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Complex rii = r(i, i);
    q.col(i) *= std::abs(rii) > 0 ? rii / std::abs(rii) : Complex(1, 0);
  }
  return q;
}

ComplexMatrix random_similarity(int d, double condition, Rng& rng) {
  detail::require(condition >= 1.0, ErrorCode::invalid_argument,
                  "random_similarity: condition must be >= 1");
  ComplexMatrix u = random_unitary(d, rng);
  ComplexMatrix v = random_unitary(d, rng);
  Eigen::VectorXd sv(d);
  for (int i = 0; i < d; ++i)
    sv(i) = std::pow(condition, d == 1 ? 0.0 : -static_cast<double>(i) / (d - 1));
  return u * sv.asDiagonal() * v;
}

std::vector<Complex> separated_points(int d, double scale, double min_sep, Rng& rng) {
  std::vector<Complex> pts;
  pts.reserve(d);
  int attempts = 0;
  while (static_cast<int>(pts.size()) < d) {
    detail::require(++attempts < 100000, ErrorCode::invalid_argument,
                    "separated_points: cannot place points at the requested separation");
    Complex z(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
    bool ok = true;
    for (Complex p : pts)
      if (std::abs(z - p) < min_sep) ok = false;
    if (ok) pts.push_back(z);
  }
  return pts;
}

GeneratedModel make_ginibre(int d, std::uint64_t seed) {
  Rng rng(seed);
  GeneratedModel m;
  m.kind = "ginibre";
  m.seed = seed;
  m.mats.push_back(rng.gaussian_matrix(d, d) / std::sqrt(static_cast<double>(d)));
  return m;
}

GeneratedModel make_conjugated_diagonal(int d, int n, std::uint64_t seed, double condition,
                                        double min_sep, const Tolerances& tol) {
  Rng rng(seed ^ 0xc0a71ed5eedull);
  GeneratedModel m;
  m.kind = "conjugated_diagonal";
  m.seed = seed;

  if (min_sep <= 0) min_sep = std::min(0.4, 2.0 / d);
  ComplexMatrix s = random_similarity(d, condition, rng);
  ComplexMatrix sinv = s.partialPivLu().solve(ComplexMatrix::Identity(d, d));

  std::vector<std::vector<Complex>> diags;
  for (int i = 0; i < n; ++i) diags.push_back(separated_points(d, 1.5, min_sep, rng));

  for (int i = 0; i < n; ++i) {
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) diag(k, k) = diags[i][k];
    m.mats.push_back(s * diag * sinv);
  }

  std::vector<Atom> atoms;
  for (int k = 0; k < d; ++k) {
    Point p(n);
    for (int i = 0; i < n; ++i) p[i] = diags[i][k];
    atoms.push_back(Atom{std::move(p), 1.0 / d});
  }
  m.oracle = AtomicMeasure(n, std::move(atoms), tol);
  return m;
}

GeneratedModel make_poly_of_jordan(int d, const std::vector<Polynomial>& polys,
                                   const std::vector<JordanBlockSpec>& layout, std::uint64_t seed,
                                   const Tolerances& tol) {
  int total = 0;
  for (const auto& b : layout) total += b.size;
  detail::require(total == d, ErrorCode::invalid_argument,
                  "make_poly_of_jordan: block sizes must sum to d");
  for (const auto& p : polys)
    detail::require(p.nvars == 1, ErrorCode::invalid_argument,
                    "make_poly_of_jordan: base polynomials are univariate");

  Rng rng(seed ^ 0x10edall);
  GeneratedModel m;
  m.kind = "poly_of_jordan";
  m.seed = seed;

  ComplexMatrix base = ComplexMatrix::Zero(d, d);
  int at = 0;
  for (const auto& b : layout) {
    for (int k = 0; k < b.size; ++k) {
      base(at + k, at + k) = b.eigenvalue;
      if (k + 1 < b.size) base(at + k, at + k + 1) = 1.0;
    }
    at += b.size;
  }
  ComplexMatrix s = random_similarity(d, 10.0, rng);
  ComplexMatrix sinv = s.partialPivLu().solve(ComplexMatrix::Identity(d, d));

  CommutingTuple base_tuple({base}, tol);
  for (const auto& p : polys) m.mats.push_back(s * evaluate_polynomial(base_tuple, p, tol) * sinv);

  const int n = static_cast<int>(polys.size());
  std::vector<Atom> atoms;
  for (const auto& b : layout) {
    Point p(n);
    for (int i = 0; i < n; ++i) p[i] = polys[i].eval({b.eigenvalue});
    atoms.push_back(Atom{std::move(p), static_cast<double>(b.size) / d});
  }
  m.oracle = AtomicMeasure(n, std::move(atoms), tol);
  return m;
}

GeneratedModel make_kronecker_pair(int d1, int d2, std::uint64_t seed, const Tolerances& tol) {
  GeneratedModel a = make_conjugated_diagonal(d1, 1, seed * 2 + 1, 10.0, 0.0, tol);
  GeneratedModel b = make_conjugated_diagonal(d2, 1, seed * 2 + 2, 10.0, 0.0, tol);
  GeneratedModel m;
  m.kind = "kronecker_pair";
  m.seed = seed;
  m.mats.push_back(kronecker(a.mats[0], ComplexMatrix::Identity(d2, d2), tol));
  m.mats.push_back(kronecker(ComplexMatrix::Identity(d1, d1), b.mats[0], tol));
  m.oracle = product_measure(*a.oracle, *b.oracle, tol);
  return m;
}

GeneratedModel make_normal(int d, std::uint64_t seed, const Tolerances& tol) {
  Rng rng(seed ^ 0x40354a1ull);
  GeneratedModel m;
  m.kind = "normal";
  m.seed = seed;
  auto diag = separated_points(d, 1.5, std::min(0.4, 2.0 / d), rng);
  ComplexMatrix u = random_unitary(d, rng);
  ComplexMatrix dm = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) dm(k, k) = diag[k];
  m.mats.push_back(u * dm * u.adjoint());
  std::vector<Atom> atoms;
  for (Complex z : diag) atoms.push_back(Atom{Point{z}, 1.0 / d});
  m.oracle = AtomicMeasure(1, std::move(atoms), tol);
  return m;
}

}  // namespace brown
