#include "sgh/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace sgh {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

Rule1d gauss_legendre_1d(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_1d: order must be >= 1");
  Rule1d rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int k = 0; k < (n + 1) / 2; ++k) {
    // Newton from the Chebyshev-like seed
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(n, x, p, dp);
    rule.x[k] = -x;  // seeds descend from +1; store ascending
    rule.x[n - 1 - k] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.w[k] = w;
    rule.w[n - 1 - k] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

Rule1d gauss_lobatto_1d(int n) {
  if (n < 2) throw std::invalid_argument("gauss_lobatto_1d: order must be >= 2");
  Rule1d rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const int m = n - 1;
  rule.x[0] = -1.0;
  rule.x[m] = 1.0;
  rule.w[0] = rule.w[m] = 2.0 / (m * (m + 1));
  // interior nodes are the roots of P_m'
  for (int k = 1; k < m; ++k) {
    double x = std::cos(M_PI * k / m);  // Chebyshev-Lobatto seed, descending
    double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(m, x, p, dp);
      const double d2p = (2.0 * x * dp - m * (m + 1) * p) / (1.0 - x * x);
      const double dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(m, x, p, dp);
    rule.x[m - k] = x;
    rule.w[m - k] = 2.0 / (m * (m + 1) * p * p);
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

namespace {

Rule2d tensor_rule(const Rule1d& r1, RuleKind kind) {
  Rule2d rule;
  rule.kind = kind;
  rule.n = r1.count();
  const int n = rule.n;
  rule.x.resize(n * n);
  rule.y.resize(n * n);
  rule.w.resize(n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int q = j * n + i;
      rule.x[q] = r1.x[i];
      rule.y[q] = r1.x[j];
      rule.w[q] = r1.w[i] * r1.w[j];
    }
  }
  return rule;
}

}  // namespace

Rule2d gauss_legendre_2d(int n) { return tensor_rule(gauss_legendre_1d(n), RuleKind::GaussLegendre); }

Rule2d gauss_lobatto_2d(int n) { return tensor_rule(gauss_lobatto_1d(n), RuleKind::GaussLobatto); }

}  // namespace sgh
