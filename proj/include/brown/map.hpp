#pragma once

#include <map>
#include <variant>
#include <vector>

#include "brown/types.hpp"

namespace brown {

/// Polynomial q: C^n -> C with coefficients indexed by multi-degree.
struct Polynomial {
  int nvars = 1;
  /// exponent vector (length nvars) -> coefficient; zero coefficients allowed
  std::map<std::vector<int>, Complex> terms;

  Complex eval(const Point& z) const;
  int total_degree() const;
};

/// The map family the push-forward theorems quantify over.
class MapDescriptor {
public:
  struct AddLast {
    int n;  // C^{n+1} -> C^n: (z_1..z_{n-1}, z_n + z_{n+1})
  };
  struct MulLast {
    int n;
    Complex alpha;  // C^{n+1} -> C^n: (z_1..z_{n-1}, alpha z_n z_{n+1})
  };
  struct ScalePair {
    Complex alpha, beta;  // C^2 -> C^2: (alpha z, beta w)
  };
  struct Permutation {
    std::vector<int> sigma;  // out_i = in_{sigma[i]}, 0-based bijection
  };
  struct Duplicate {
    int n, index;  // C^n -> C^{n+1}: appends z_index (0-based)
  };

  static MapDescriptor polynomial(Polynomial p);
  static MapDescriptor add_last(int n);
  static MapDescriptor mul_last(int n, Complex alpha);
  static MapDescriptor scale_pair(Complex alpha, Complex beta);
  static MapDescriptor permutation(std::vector<int> sigma);
  static MapDescriptor duplicate(int n, int index);

  /// q(z,w) = z + w and q(z,w) = z*w as 2-variable polynomials.
  static MapDescriptor add2();
  static MapDescriptor mul2();
  /// q(z) = z + c.
  static MapDescriptor shift1(Complex c);

  int in_dim() const;
  int out_dim() const;
  Point apply(const Point& z) const;

  using Variant = std::variant<Polynomial, AddLast, MulLast, ScalePair, Permutation, Duplicate>;
  const Variant& node() const { return node_; }

private:
  explicit MapDescriptor(Variant v) : node_(std::move(v)) {}
  Variant node_;
};

}  // namespace brown
