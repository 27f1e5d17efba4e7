#include "zladder/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace zladder::experiments {

namespace sf = special_functions;

namespace {

template <class Fn>
auto stage(const char* label, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const error& e) {
    const std::string msg = std::string(label) + " stage: " + e.what();
    if (e.exit_code() == 2) throw numeric_error(msg);
    throw parameter_error(msg);
  }
}

}  // namespace

TheoremRun run_theorem(long L, double U, int k,
                       const euler_kernel::EulerKernel& kr,
                       const ladder::LadderModel& m) {
  kr.validate();
  m.validate();
  const auto t0 = std::chrono::steady_clock::now();
  TheoremRun run;
  run.L = L;
  run.U = U;
  run.k = k;
  run.a = kr.a;
  run.b = kr.b;
  run.backend = moment::backend_name(m.backend);
  run.tol = m.tol;
  run.chain = stage("chain", [&] { return ladder::reverse_chain(L, U, k, m); });
  run.extraction = stage(
      "extraction", [&] { return transform::extract_points(run.chain, kr, m); });
  run.report = stage("factorization", [&] {
    return transform::factorization_report(run.extraction, run.chain, kr, m);
  });
  run.qsystem = stage(
      "qsystem", [&] { return transform::qsystem_lhs(run.extraction, m.zcfg); });
  run.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return run;
}

Decomposition decompose(const TheoremRun& run) {
  return {run.report.signal, run.report.noise, run.report.error_residual};
}

std::vector<double> scan_grid(double U0, double delta, int n_grid) {
  if (n_grid < 2) throw parameter_error("n_grid must be at least 2");
  if (!(delta > 0.0)) throw parameter_error("delta must be positive");
  std::vector<double> grid;
  for (int i = 0; i < n_grid; ++i) {
    const double u = U0 - delta + (i + 1) * (2.0 * delta) / (n_grid + 1);
    if (!(u > 0.0 && u < kPi))
      throw parameter_error("U grid leaves (0, pi)");
    grid.push_back(u);
  }
  return grid;
}

DistinctScan distinct_scan(long L, int k, const euler_kernel::EulerKernel& kr,
                           const ladder::LadderModel& m, double U0,
                           double delta, int n_grid) {
  DistinctScan scan;
  scan.U0 = U0;
  scan.delta = delta;
  scan.grid = scan_grid(U0, delta, n_grid);
  for (double u : scan.grid) {
    const auto chain = ladder::reverse_chain(L, u, k, m);
    const auto res = transform::extract_points(chain, kr, m);
    std::vector<double> tuple = res.alphas;
    tuple.insert(tuple.end(), res.betas.begin(), res.betas.end());
    scan.tuples.push_back(std::move(tuple));
  }
  double min_pair = std::numeric_limits<double>::infinity();
  double min_comp = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scan.tuples.size(); ++i) {
    for (std::size_t j = i + 1; j < scan.tuples.size(); ++j) {
      double maxc = 0.0;
      double minc = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < scan.tuples[i].size(); ++c) {
        const double diff = std::abs(scan.tuples[i][c] - scan.tuples[j][c]);
        maxc = std::max(maxc, diff);
        minc = std::min(minc, diff);
      }
      min_pair = std::min(min_pair, maxc);
      min_comp = std::min(min_comp, minc);
    }
  }
  scan.min_pairwise_gap = min_pair;
  scan.min_component_gap = min_comp;
  return scan;
}

std::vector<ComplementRow> complement_report(const std::vector<double>& T_list,
                                             const ladder::LadderModel& m) {
  std::vector<ComplementRow> rows;
  for (double T : T_list) {
    ComplementRow row;
    row.T = T;
    row.phi1 = ladder::phi1(T, m);
    row.gap = T - row.phi1;
    row.pi_exact = sf::prime_pi(T, sf::PiMode::exact_sieve);
    row.ratio = row.gap / ((1.0 - m.c) * row.pi_exact);
    row.closure = (row.phi1 + (1.0 - m.c) * row.pi_exact) / T;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace zladder::experiments
