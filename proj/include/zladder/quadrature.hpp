#pragma once

#include <functional>
#include <vector>

namespace zladder::quadrature {

// Gauss-Legendre nodes and weights on [-1, 1], computed once per order by
// Newton iteration on P_n and cached.
struct GlRule {
  std::vector<double> x;
  std::vector<double> w;
};

const GlRule& gauss_legendre_rule(int n);

// Fixed-order Gauss-Legendre approximation of the integral of f over [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a,
                      double b, int n);

struct AdaptiveResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long n_intervals = 0;
  bool converged = true;
};

// Bisecting adaptive Gauss-Legendre: an interval is accepted when the
// whole-interval rule and the two-half rule agree within its share of
// tol_abs; otherwise it is split, down to max_depth.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b, double tol_abs,
                                  int order = 16, int max_depth = 40);

// Same, but throws tolerance_error when refinement stalls before tol_abs.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol_abs, int order = 16);

}  // namespace zladder::quadrature
