#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "zladder/euler_kernel.hpp"
#include "zladder/ladder.hpp"

namespace zladder::transform {

// Mean-value control points on the deepest segment and their forward
// iterates: alphas[r] = phi1^{k-r}(d) for r = 0..k, betas[r-1] =
// phi1^{k-r}(e) for r = 1..k.
struct ExtractionResult {
  double d = 0.0;
  double e = 0.0;
  std::vector<double> alphas;
  std::vector<double> betas;
  double tol = 0.0;      // root tolerance, t units
  double base_lo = 0.0;  // echo of chain.base.lo for spacing ratios
  long L = 0;
  double U = 0.0;
  int k = 0;
};

struct FactorizationReport {
  double lhs = 0.0;
  double rhs_asym = 0.0;
  double rhs_exact = 0.0;
  double signal = 0.0;
  double noise = 0.0;
  double error_residual = 0.0;
  std::vector<double> spacing_ratios;
  // input and extraction echo, so a report serializes self-contained
  std::vector<double> alphas;
  std::vector<double> betas;
  double d = 0.0;
  double e = 0.0;
  long L = 0;
  double U = 0.0;
  int k = 0;
  double a = 0.0;
  double b = 0.0;
};

// Per-factor local spectral sums at the control points, their truncation
// estimates, and the product of |alpha sum / beta sum|.
struct QSystemEvaluation {
  std::vector<double> alpha_sums;
  std::vector<double> beta_sums;
  std::vector<double> alpha_remainders;
  std::vector<double> beta_remainders;
  double product = 1.0;
  bool precision_warning = false;
};

// f_k(t) = kernel(phi1^k(t)) * w_k(t) and the weight
// w_k(t) = prod_{j=0}^{k-1} z_eval(phi1^j(t))^2 / omega(phi1^j(t)).
// Returns {f_k, w_k}. Quadrature backend only.
std::pair<double, double> chained_f(double t, const ladder::SegmentChain& chain,
                                    const euler_kernel::EulerKernel& kr,
                                    const ladder::LadderModel& m);

// Adaptive quadrature of f_k over the deepest segment; by substitution it
// equals the closed kernel integral over the base.
double chain_integral(const ladder::SegmentChain& chain,
                      const euler_kernel::EulerKernel& kr,
                      const ladder::LadderModel& m, double tol);

// Leftmost point of the segment where g crosses target: uniform scan at
// scan_n points (refined up to 16x when no sign change is found), then
// bisection down to ulp scale.
double find_mvt_point(const std::function<double(double)>& g,
                      const ladder::Segment& seg, double target, int scan_n);

// 64 scan points per expected oscillation of Z on the segment.
int default_scan_n(const ladder::Segment& seg);

ExtractionResult extract_points(const ladder::SegmentChain& chain,
                                const euler_kernel::EulerKernel& kr,
                                const ladder::LadderModel& m);

FactorizationReport factorization_report(const ExtractionResult& res,
                                         const ladder::SegmentChain& chain,
                                         const euler_kernel::EulerKernel& kr,
                                         const ladder::LadderModel& m);

QSystemEvaluation qsystem_lhs(const ExtractionResult& res,
                              const special_functions::RSEvalConfig& cfg);

// (alpha_{r+1} - alpha_r) and (beta_{r+1} - beta_r), each divided by
// (1 - c) * prime_pi(base_lo); k alpha ratios then k-1 beta ratios.
std::vector<double> spacing_check(const ExtractionResult& res,
                                  const ladder::LadderModel& m);

}  // namespace zladder::transform
