#pragma once

#include <vector>

namespace sgh {

// 1d rule on [-1,1]
struct Rule1d {
  std::vector<double> x;
  std::vector<double> w;
  int count() const { return static_cast<int>(x.size()); }
};

// n-point Gauss-Legendre rule, exact for degree 2n-1
Rule1d gauss_legendre_1d(int n);

// n-point Gauss-Lobatto rule including endpoints, exact for degree 2n-3
Rule1d gauss_lobatto_1d(int n);

enum class RuleKind { GaussLegendre, GaussLobatto };

// tensor rule on [-1,1]^2, points ordered row-major with the first
// reference axis varying fastest (R-direction priority)
struct Rule2d {
  RuleKind kind{};
  int n = 0;  // points per axis
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> w;
  int count() const { return static_cast<int>(w.size()); }
};

Rule2d gauss_legendre_2d(int n);
Rule2d gauss_lobatto_2d(int n);

}  // namespace sgh
