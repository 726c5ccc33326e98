#include "brown/map.hpp"

#include <algorithm>
#include <numeric>

namespace brown {

Complex Polynomial::eval(const Point& z) const {
  detail::require(static_cast<int>(z.size()) == nvars, ErrorCode::dimension_mismatch,
                  "Polynomial::eval: arity mismatch");
  Complex acc = 0.0;
  for (const auto& [exps, coeff] : terms) {
    Complex mono = coeff;
    for (int i = 0; i < nvars; ++i)
      for (int e = 0; e < exps[i]; ++e) mono *= z[i];
    acc += mono;
  }
  return acc;
}

int Polynomial::total_degree() const {
  int deg = 0;
  for (const auto& [exps, coeff] : terms)
    if (coeff != Complex(0, 0))
      deg = std::max(deg, std::accumulate(exps.begin(), exps.end(), 0));
  return deg;
}

MapDescriptor MapDescriptor::polynomial(Polynomial p) {
  detail::require(p.nvars >= 1, ErrorCode::invalid_argument, "polynomial map: nvars must be >= 1");
  for (const auto& [exps, coeff] : p.terms)
    detail::require(static_cast<int>(exps.size()) == p.nvars, ErrorCode::invalid_argument,
                    "polynomial map: exponent arity mismatch");
  return MapDescriptor(std::move(p));
}

MapDescriptor MapDescriptor::add_last(int n) {
  detail::require(n >= 1, ErrorCode::invalid_argument, "add_last: n must be >= 1");
  return MapDescriptor(AddLast{n});
}

MapDescriptor MapDescriptor::mul_last(int n, Complex alpha) {
  detail::require(n >= 1, ErrorCode::invalid_argument, "mul_last: n must be >= 1");
  return MapDescriptor(MulLast{n, alpha});
}

MapDescriptor MapDescriptor::scale_pair(Complex alpha, Complex beta) {
  return MapDescriptor(ScalePair{alpha, beta});
}

MapDescriptor MapDescriptor::permutation(std::vector<int> sigma) {
  std::vector<int> seen(sigma.size(), 0);
  for (int s : sigma) {
    detail::require(s >= 0 && s < static_cast<int>(sigma.size()) && !seen[s],
                    ErrorCode::invalid_argument, "permutation map: not a bijection");
    seen[s] = 1;
  }
  return MapDescriptor(Permutation{std::move(sigma)});
}

MapDescriptor MapDescriptor::duplicate(int n, int index) {
  detail::require(index >= 0 && index < n, ErrorCode::invalid_argument,
                  "duplicate map: index out of range");
  return MapDescriptor(Duplicate{n, index});
}

MapDescriptor MapDescriptor::add2() {
  Polynomial p;
  p.nvars = 2;
  p.terms[{1, 0}] = 1.0;
  p.terms[{0, 1}] = 1.0;
  return polynomial(std::move(p));
}

MapDescriptor MapDescriptor::mul2() {
  Polynomial p;
  p.nvars = 2;
  p.terms[{1, 1}] = 1.0;
  return polynomial(std::move(p));
}

MapDescriptor MapDescriptor::shift1(Complex c) {
  Polynomial p;
  p.nvars = 1;
  p.terms[{1}] = 1.0;
  p.terms[{0}] = c;
  return polynomial(std::move(p));
}

int MapDescriptor::in_dim() const {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Polynomial>) return m.nvars;
        if constexpr (std::is_same_v<T, AddLast>) return m.n + 1;
        if constexpr (std::is_same_v<T, MulLast>) return m.n + 1;
        if constexpr (std::is_same_v<T, ScalePair>) return 2;
        if constexpr (std::is_same_v<T, Permutation>) return static_cast<int>(m.sigma.size());
        if constexpr (std::is_same_v<T, Duplicate>) return m.n;
      },
      node_);
}

int MapDescriptor::out_dim() const {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Polynomial>) return 1;
        if constexpr (std::is_same_v<T, AddLast>) return m.n;
        if constexpr (std::is_same_v<T, MulLast>) return m.n;
        if constexpr (std::is_same_v<T, ScalePair>) return 2;
        if constexpr (std::is_same_v<T, Permutation>) return static_cast<int>(m.sigma.size());
        if constexpr (std::is_same_v<T, Duplicate>) return m.n + 1;
      },
      node_);
}

Point MapDescriptor::apply(const Point& z) const {
  detail::require(static_cast<int>(z.size()) == in_dim(), ErrorCode::dimension_mismatch,
                  "MapDescriptor::apply: arity mismatch");
  return std::visit(
      [&z](const auto& m) -> Point {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          return {m.eval(z)};
        } else if constexpr (std::is_same_v<T, AddLast>) {
          Point out(z.begin(), z.begin() + m.n - 1);
          out.push_back(z[m.n - 1] + z[m.n]);
          return out;
        } else if constexpr (std::is_same_v<T, MulLast>) {
          Point out(z.begin(), z.begin() + m.n - 1);
          out.push_back(m.alpha * z[m.n - 1] * z[m.n]);
          return out;
        } else if constexpr (std::is_same_v<T, ScalePair>) {
          return {m.alpha * z[0], m.beta * z[1]};
        } else if constexpr (std::is_same_v<T, Permutation>) {
          Point out(z.size());
          for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[m.sigma[i]];
          return out;
        } else {
          Point out = z;
          out.push_back(z[m.index]);
          return out;
        }
      },
      node_);
}

}  // namespace brown
