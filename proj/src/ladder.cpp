#include "zladder/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

namespace zladder::ladder {

namespace sf = special_functions;

void LadderModel::validate() const {
  if (!(c > 0.577215 && c < 0.577216))
    throw parameter_error("c must lie in (0.577215, 0.577216)");
  if (!(tol > 0.0)) throw parameter_error("inversion tolerance must be positive");
  if (!(t_min >= 10.0)) throw parameter_error("t_min must be at least 10");
  if (!(pipeline_min >= t_min))
    throw parameter_error("pipeline minimum must be at least t_min");
  if (backend == moment::Backend::quadrature && table == nullptr)
    throw parameter_error("quadrature backend needs a checkpoint table");
  zcfg.validate();
}

double moment_main(double y, const LadderModel& m) {
  return y * std::log(y) + (m.c - kLnTwoPi) * y + m.c0;
}

double moment_main_slope(double y, const LadderModel& m) {
  return std::log(y) + 1.0 + m.c - kLnTwoPi;
}

double hl(double T, const LadderModel& m) {
  if (m.backend == moment::Backend::asymptotic)
    return moment::hl_asymptotic(T, m.c, m.c0);
  return moment::hl_integral(T, m.backend, *m.table, m.zcfg, m.c, m.c0);
}

double phi1(double T, const LadderModel& m) {
  m.validate();
  if (!(T >= m.t_min)) {
    std::ostringstream os;
    os << "phi1 requires T >= " << m.t_min;
    throw domain_error(os.str());
  }
  const double target = hl(T, m);
  // moment_main is increasing for y > 2pi exp(-1-c) ~ 1.3, so [2, T] brackets
  double lo = 2.0, hi = T;
  if (moment_main(lo, m) > target || moment_main(hi, m) < target)
    throw convergence_error("phi1 bracket failed; target outside [F(2), F(T)]");
  // first-order complement estimate as the Newton seed
  double y = T - (1.0 - m.c) * T / moment_main_slope(T, m);
  y = std::clamp(y, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double r = moment_main(y, m) - target;
    const double slope = moment_main_slope(y, m);
    if (std::abs(r) <= m.tol * slope) return y;
    if (r > 0.0) hi = y; else lo = y;
    double next = y - r / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    y = next;
  }
  throw convergence_error("phi1 Newton iteration did not converge");
}

double omega(double t, const LadderModel& m) {
  return moment_main_slope(phi1(t, m), m);
}

double tilde_z_sq(double t, const LadderModel& m) {
  if (m.backend != moment::Backend::quadrature)
    throw backend_error("tilde_z_sq requires the quadrature backend");
  const double z = sf::z_eval(t, m.zcfg);
  return z * z / omega(t, m);
}

double phi1_inverse(double x, const LadderModel& m) {
  m.validate();
  const double target = moment_main(x, m);
  const double slope = moment_main_slope(x, m);
  if (!(x > 0.0) || !(slope > 0.0))
    throw domain_error("phi1_inverse requires x in the increasing range");
  double lo = std::max(x, m.t_min);
  const double r_lo = hl(lo, m) - target;
  if (std::abs(r_lo) <= m.tol * slope) return lo;
  if (r_lo > 0.0)
    throw domain_error("phi1_inverse: x is below phi1 at the minimum t");
  // t - x is close to (1-c) x / slope; bracket with headroom, then grow
  const double gap_est = (1.0 - m.c) * x / slope;
  double hi = lo + 1.5 * gap_est;
  int grow = 0;
  while (hl(hi, m) < target) {
    if (++grow > 8)
      throw convergence_error("phi1_inverse bracket cap exceeded");
    hi += gap_est;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = hl(mid, m) - target;
    if (std::abs(r) <= m.tol * slope) return mid;
    if (r < 0.0) lo = mid; else hi = mid;
    if (hi - lo <= 4.0 * std::abs(mid) *
                       std::numeric_limits<double>::epsilon())
      return mid;  // interval at ulp scale; residual is quadrature noise
  }
  throw convergence_error("phi1_inverse bisection did not converge");
}

double phi1_iter(double t, int j, const LadderModel& m) {
  if (j < 0) throw parameter_error("iteration count must be nonnegative");
  double val = t;
  for (int i = 0; i < j; ++i) val = phi1(val, m);
  return val;
}

SegmentChain reverse_chain(long L, double U, int k, const LadderModel& m) {
  m.validate();
  if (!(U > 0.0 && U < kPi)) throw parameter_error("U must be in (0, pi)");
  if (k < 1) throw parameter_error("k must be at least 1");
  const double base_lo = kTwoPi * static_cast<double>(L);
  if (base_lo < m.pipeline_min) {
    std::ostringstream os;
    os << "2*pi*L = " << base_lo << " is below the pipeline minimum "
       << m.pipeline_min;
    throw parameter_error(os.str());
  }
  if (base_lo < 1.0e4)
    std::cerr << "warning: 2*pi*L = " << base_lo
              << " is below 1e4; asymptotic contracts are loose here\n";
  SegmentChain chain;
  chain.base = {base_lo, base_lo + U};
  chain.L = L;
  chain.U = U;
  chain.k = k;
  double lo = chain.base.lo, hi = chain.base.hi;
  for (int r = 1; r <= k; ++r) {
    lo = phi1_inverse(lo, m);
    hi = phi1_inverse(hi, m);
    chain.levels.push_back({lo, hi});
  }
  for (int r = 1; r <= k; ++r) {
    const Segment& s = chain.seg(r);
    const Segment& prev = chain.seg(r - 1);
    if (!(s.lo < s.hi) || !(s.lo > prev.hi))
      throw numeric_error("segment chain lost its ordering");
    if (std::abs(phi1(s.lo, m) - prev.lo) > 10.0 * m.tol ||
        std::abs(phi1(s.hi, m) - prev.hi) > 10.0 * m.tol)
      throw numeric_error("segment chain failed the roundtrip check");
  }
  return chain;
}

}  // namespace zladder::ladder
