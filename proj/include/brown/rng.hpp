#pragma once

#include <cstdint>
#include <random>

#include "brown/types.hpp"

namespace brown {

/// Seeded generator with an explicit Box-Muller transform so that streams are
/// identical across standard libraries (std::normal_distribution is not).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do { u = uniform(); } while (u <= 0.0);
    const double r = std::sqrt(-2.0 * std::log(u));
    const double t = 2.0 * M_PI * uniform();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  /// Standard complex Gaussian: E|z|^2 = 1.
  Complex cgauss() {
    const double s = std::sqrt(0.5);
    return {s * gauss(), s * gauss()};
  }

  std::uint64_t integer(std::uint64_t n) { return gen_() % n; }

  /// d x d matrix with i.i.d. standard complex Gaussian entries.
  ComplexMatrix gaussian_matrix(int rows, int cols) {
    ComplexMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a(i, j) = cgauss();
    return a;
  }

private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace brown
