#include <doctest.h>

#include "brown/linalg.hpp"
#include "brown/rng.hpp"

using namespace brown;

namespace {
ComplexMatrix diag2(Complex a, Complex b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

std::vector<Complex> sorted_eigs(const ComplexMatrix& u) {
  std::vector<Complex> v;
  for (int i = 0; i < u.rows(); ++i) v.push_back(u(i, i));
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}
}  // namespace

TEST_CASE("schur of the identity is the identity") {
  ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  SchurPair s = schur(id);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(s.u(i, i) - 1.0) < 1e-14);
  CHECK((s.q * s.u * s.q.adjoint() - id).norm() < 1e-13);
}

TEST_CASE("schur of a triangular matrix keeps its spectrum") {
  ComplexMatrix a(2, 2);
  a << 1, 1, 0, 2;
  SchurPair s = schur(a);
  auto eigs = sorted_eigs(s.u);
  CHECK(std::abs(eigs[0] - 1.0) < 1e-12);
  CHECK(std::abs(eigs[1] - 2.0) < 1e-12);
}

TEST_CASE("schur reconstruction residual on a seeded 8x8") {
  Rng rng(17);
  ComplexMatrix a = rng.gaussian_matrix(8, 8);
  SchurPair s = schur(a);
  CHECK((s.q * s.u * s.q.adjoint() - a).norm() <= 1e-10 * 8 * a.norm());
  // strict triangularity below the diagonal
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < i; ++j) CHECK(s.u(i, j) == Complex(0, 0));
}

TEST_CASE("schur round-trips across 100 seeded matrices, d in 2..64") {
  Rng rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng.integer(63));
    ComplexMatrix a = rng.gaussian_matrix(d, d);
    SchurPair s = schur(a);
    CHECK((s.q * s.u * s.q.adjoint() - a).norm() <= 1e-10 * d * a.norm());
  }
}

TEST_CASE("reorder_schur moves the selected eigenvalue to the front") {
  SchurPair s{ComplexMatrix::Identity(2, 2), diag2(1.0, 2.0)};
  ReorderedSchur r = reorder_schur(s, [](Complex z) { return std::abs(z - 2.0) < 0.1; });
  CHECK(r.selected_dim == 1);
  CHECK(std::abs(r.u(0, 0) - 2.0) < 1e-12);
  CHECK(std::abs(r.u(1, 1) - 1.0) < 1e-12);
}

TEST_CASE("reorder_schur gathers a repeated eigenvalue into the leading block") {
  ComplexMatrix u = ComplexMatrix::Zero(3, 3);
  u(0, 0) = 1;
  u(1, 1) = 1;
  u(2, 2) = 2;
  // put 2 first so the selection has to move two entries
  SchurPair s{ComplexMatrix::Identity(3, 3), u};
  ReorderedSchur r = reorder_schur(s, [](Complex z) { return std::abs(z - 2.0) < 0.1; });
  CHECK(r.selected_dim == 1);
  CHECK(std::abs(r.u(0, 0) - 2.0) < 1e-12);
  CHECK(std::abs(r.u(1, 1) - 1.0) < 1e-12);
  CHECK(std::abs(r.u(2, 2) - 1.0) < 1e-12);
}

TEST_CASE("reorder_schur on a random 6x6 with well-separated spectrum") {
  Rng rng(5);
  ComplexMatrix a = ComplexMatrix::Zero(6, 6);
  for (int i = 0; i < 6; ++i) a(i, i) = Complex(i, -0.3 * i);
  ComplexMatrix g = rng.gaussian_matrix(6, 6);
  ComplexMatrix q = schur(g).q;  // random unitary
  a = q * a * q.adjoint();
  SchurPair s = schur(a);
  auto select = [](Complex z) { return z.real() > 2.5; };
  ReorderedSchur r = reorder_schur(s, select);
  CHECK(r.selected_dim == 3);
  CHECK((r.q * r.u * r.q.adjoint() - a).norm() <= 1e-10 * 6 * a.norm());
  for (int i = 0; i < 3; ++i) CHECK(select(r.u(i, i)));
  for (int i = 3; i < 6; ++i) CHECK(!select(r.u(i, i)));
}

TEST_CASE("reorder_schur refuses to swap an ill-separated pair") {
  SchurPair s{ComplexMatrix::Identity(2, 2), diag2(1.0, 1.0 + 1e-12)};
  CHECK_THROWS_WITH_AS(reorder_schur(s, [](Complex z) { return std::abs(z - 1.0) > 5e-13; }),
                       doctest::Contains("ill-separated"), Error);
}

TEST_CASE("sylvester scalar cases") {
  ComplexMatrix a(1, 1), b(1, 1), c(1, 1);
  a << 1;
  b << 3;
  c << 2;
  CHECK(std::abs(sylvester_solve(a, b, c)(0, 0) - Complex(-1)) < 1e-12);
  a << 2;
  b << 0;
  c << 0;
  CHECK(std::abs(sylvester_solve(a, b, c)(0, 0)) < 1e-12);
}

TEST_CASE("sylvester residual on a random 4x4 / 3x3 pair with shifted spectra") {
  Rng rng(7);
  ComplexMatrix a = rng.gaussian_matrix(4, 4);
  ComplexMatrix b = rng.gaussian_matrix(3, 3) + 10.0 * ComplexMatrix::Identity(3, 3);
  ComplexMatrix c = rng.gaussian_matrix(4, 3);
  ComplexMatrix x = sylvester_solve(a, b, c);
  CHECK((a * x - x * b - c).norm() <= 1e-10 * (a.norm() + b.norm()) * x.norm() + 1e-12);
}

TEST_CASE("sylvester reports the spectral gap when ill-conditioned") {
  ComplexMatrix a(1, 1), b(1, 1), c(1, 1);
  a << 1;
  b << 1 + 1e-9;
  c << 1;
  CHECK_THROWS_WITH_AS(sylvester_solve(a, b, c), doctest::Contains("ill-conditioned"), Error);
}

TEST_CASE("kronecker basics") {
  ComplexMatrix a = diag2(1.0, 2.0);
  ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  ComplexMatrix k = kronecker(a, id2);
  CHECK(k.rows() == 4);
  CHECK(std::abs(k(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(k(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(k(2, 2) - 2.0) < 1e-15);
  CHECK(std::abs(k(3, 3) - 2.0) < 1e-15);
  CHECK((kronecker(id2, id2) - ComplexMatrix::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("kronecker factors commute: (A x 1)(1 x B) = (1 x B)(A x 1)") {
  Rng rng(11);
  ComplexMatrix a = rng.gaussian_matrix(3, 3);
  ComplexMatrix b = rng.gaussian_matrix(3, 3);
  ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  ComplexMatrix left = kronecker(a, id) * kronecker(id, b);
  ComplexMatrix right = kronecker(id, b) * kronecker(a, id);
  CHECK((left - right).norm() <= 1e-12 * left.norm());
  CHECK((left - kronecker(a, b)).norm() <= 1e-12 * left.norm());
}

TEST_CASE("kronecker size ceiling") {
  Tolerances tol;
  tol.max_dim = 8;
  ComplexMatrix a = ComplexMatrix::Identity(4, 4);
  CHECK_THROWS_AS(kronecker(a, a, tol), Error);
}
