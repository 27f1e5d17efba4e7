#pragma once

#include <string>
#include <vector>

#include "zladder/transform.hpp"

namespace zladder::experiments {

// One end-to-end pipeline run: chain, control points, factorization
// report, and the spectral-sum cross-evaluation.
struct TheoremRun {
  long L = 0;
  double U = 0.0;
  int k = 0;
  double a = 0.0;
  double b = 0.0;
  std::string backend;
  double tol = 0.0;
  ladder::SegmentChain chain;
  transform::ExtractionResult extraction;
  transform::FactorizationReport report;
  transform::QSystemEvaluation qsystem;
  double elapsed_s = 0.0;
};

TheoremRun run_theorem(long L, double U, int k,
                       const euler_kernel::EulerKernel& kr,
                       const ladder::LadderModel& m);

struct Decomposition {
  double signal = 0.0;
  double noise = 0.0;
  double error_residual = 0.0;
};

Decomposition decompose(const TheoremRun& run);

// The strictly interior grid U0 - delta < U_1 < ... < U_n < U0 + delta.
std::vector<double> scan_grid(double U0, double delta, int n_grid);

// Control-point tuples (alpha_0..alpha_k, beta_1..beta_k) over the U grid
// and the smallest pairwise separations.
struct DistinctScan {
  double U0 = 0.0;
  double delta = 0.0;
  std::vector<double> grid;
  std::vector<std::vector<double>> tuples;
  double min_pairwise_gap = 0.0;   // max-norm distance, min over pairs
  double min_component_gap = 0.0;  // per-coordinate gap, min over pairs
};

DistinctScan distinct_scan(long L, int k, const euler_kernel::EulerKernel& kr,
                           const ladder::LadderModel& m, double U0,
                           double delta, int n_grid);

// Complement law diagnostics: how closely T - phi1(T) tracks
// (1 - c) * prime_pi(T), and the closure (phi1 + (1-c) pi) / T.
struct ComplementRow {
  double T = 0.0;
  double phi1 = 0.0;
  double gap = 0.0;
  double pi_exact = 0.0;
  double ratio = 0.0;
  double closure = 0.0;
};

std::vector<ComplementRow> complement_report(const std::vector<double>& T_list,
                                             const ladder::LadderModel& m);

}  // namespace zladder::experiments
