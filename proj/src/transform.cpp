#include "zladder/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zladder/quadrature.hpp"

namespace zladder::transform {

namespace sf = special_functions;

std::pair<double, double> chained_f(double t, const ladder::SegmentChain& chain,
                                    const euler_kernel::EulerKernel& kr,
                                    const ladder::LadderModel& m) {
  if (m.backend != moment::Backend::quadrature)
    throw backend_error("the transform pipeline requires the quadrature backend");
  double w = 1.0;
  double x = t;
  for (int j = 0; j < chain.k; ++j) {
    const double z = sf::z_eval(x, m.zcfg);
    const double p = ladder::phi1(x, m);
    w *= z * z / ladder::moment_main_slope(p, m);
    x = p;
  }
  return {euler_kernel::kernel_eval(kr, x) * w, w};
}

double chain_integral(const ladder::SegmentChain& chain,
                      const euler_kernel::EulerKernel& kr,
                      const ladder::LadderModel& m, double tol) {
  kr.validate();
  if (!(tol > 0.0)) throw parameter_error("tolerance must be positive");
  const ladder::Segment& deep = chain.seg(chain.k);
  return quadrature::integrate(
      [&](double t) { return chained_f(t, chain, kr, m).first; }, deep.lo,
      deep.hi, tol);
}

int default_scan_n(const ladder::Segment& seg) {
  const double spacing = kTwoPi / std::log(std::max(seg.hi, 20.0) / kTwoPi);
  const double n = 64.0 * seg.length() / spacing;
  return std::max(64, static_cast<int>(std::ceil(n)));
}

double find_mvt_point(const std::function<double(double)>& g,
                      const ladder::Segment& seg, double target, int scan_n) {
  if (!(seg.lo < seg.hi)) throw parameter_error("segment must have lo < hi");
  if (scan_n < 2) throw parameter_error("scan_n must be at least 2");
  const double width_tol = std::max(
      1e-12, 8.0 * std::abs(seg.hi) * std::numeric_limits<double>::epsilon());
  for (int refine = 1; refine <= 16; refine *= 2) {
    const long n = static_cast<long>(scan_n) * refine;
    double prev_t = seg.lo;
    double prev_s = g(prev_t) - target;
    if (prev_s == 0.0) return prev_t;
    for (long i = 1; i <= n; ++i) {
      const double ti = seg.lo + seg.length() * static_cast<double>(i) / n;
      const double si = g(ti) - target;
      if (si == 0.0) return ti;
      if (prev_s * si < 0.0) {
        double a = prev_t, b = ti, sa = prev_s;
        while (b - a > width_tol) {
          const double mid = 0.5 * (a + b);
          const double sm = g(mid) - target;
          if (sm == 0.0) return mid;
          if (sa * sm < 0.0) {
            b = mid;
          } else {
            a = mid;
            sa = sm;
          }
        }
        return 0.5 * (a + b);
      }
      prev_t = ti;
      prev_s = si;
    }
  }
  throw no_crossing_error("target value not crossed on the segment");
}

namespace {

void check_extraction(const ExtractionResult& res,
                      const ladder::SegmentChain& chain,
                      const ladder::LadderModel& m) {
  const double slack = 10.0 * m.tol;
  auto inside = [slack](double x, const ladder::Segment& s) {
    return x > s.lo - slack && x < s.hi + slack;
  };
  if (!inside(res.alphas[0], chain.base))
    throw numeric_error("alpha_0 left the base segment");
  for (int r = 1; r <= res.k; ++r) {
    if (!inside(res.alphas[r], chain.seg(r)) ||
        !inside(res.betas[r - 1], chain.seg(r)))
      throw numeric_error("a control point left its segment");
  }
  for (int r = 0; r < res.k; ++r)
    if (!(res.alphas[r] < res.alphas[r + 1]))
      throw numeric_error("alpha ordering violated");
  if (!(res.alphas[0] > chain.base.lo) || !(res.betas[0] > chain.base.lo))
    throw numeric_error("control points must sit right of the base start");
  for (int r = 1; r < res.k; ++r)
    if (!(res.betas[r - 1] < res.betas[r]))
      throw numeric_error("beta ordering violated");
}

}  // namespace

ExtractionResult extract_points(const ladder::SegmentChain& chain,
                                const euler_kernel::EulerKernel& kr,
                                const ladder::LadderModel& m) {
  kr.validate();
  m.validate();
  if (chain.k < 1 || static_cast<int>(chain.levels.size()) != chain.k)
    throw parameter_error("segment chain is incomplete");
  const double J = euler_kernel::closed_integral(kr, chain.L, chain.U);
  const ladder::Segment& deep = chain.seg(chain.k);
  const double len = deep.length();
  auto fk = [&](double t) { return chained_f(t, chain, kr, m).first; };
  auto wk = [&](double t) { return chained_f(t, chain, kr, m).second; };
  const int n = default_scan_n(deep);

  ExtractionResult res;
  res.d = find_mvt_point(fk, deep, J / len, n);
  res.e = find_mvt_point(wk, deep, chain.U / len, n);
  res.tol = std::max(1e-12, 8.0 * deep.hi * std::numeric_limits<double>::epsilon());
  res.base_lo = chain.base.lo;
  res.L = chain.L;
  res.U = chain.U;
  res.k = chain.k;

  res.alphas.resize(chain.k + 1);
  res.betas.resize(chain.k);
  double x = res.d;
  res.alphas[chain.k] = x;
  for (int r = chain.k - 1; r >= 0; --r) {
    x = ladder::phi1(x, m);
    res.alphas[r] = x;
  }
  x = res.e;
  res.betas[chain.k - 1] = x;
  for (int r = chain.k - 1; r >= 1; --r) {
    x = ladder::phi1(x, m);
    res.betas[r - 1] = x;
  }
  check_extraction(res, chain, m);
  return res;
}

FactorizationReport factorization_report(const ExtractionResult& res,
                                         const ladder::SegmentChain& chain,
                                         const euler_kernel::EulerKernel& kr,
                                         const ladder::LadderModel& m) {
  kr.validate();
  if (res.L != chain.L || res.k != chain.k || res.U != chain.U)
    throw parameter_error("extraction does not belong to this chain");
  double lhs = 1.0;
  for (int r = 1; r <= res.k; ++r) {
    const double za = sf::z_eval(res.alphas[r], m.zcfg);
    const double zb = sf::z_eval(res.betas[r - 1], m.zcfg);
    if (std::abs(zb) < 1e-12)
      throw degenerate_error("Z vanished at a beta control point");
    lhs *= (za * za) / (zb * zb);
  }
  const double af = euler_kernel::arctan_factor(kr, res.U);
  const double alpha0 = res.alphas[0];
  double omega_ratio = 1.0;
  for (int r = 1; r <= res.k; ++r)
    omega_ratio *=
        ladder::omega(res.alphas[r], m) / ladder::omega(res.betas[r - 1], m);

  FactorizationReport rep;
  rep.lhs = lhs;
  rep.rhs_asym = af * (kr.a + kr.b * std::cos(alpha0)) / (kr.a + kr.b);
  rep.rhs_exact = rep.rhs_asym * omega_ratio;
  rep.signal = euler_kernel::signal_factor(kr, res.U);
  rep.noise = kr.b / (kr.a + kr.b) * af * std::cos(alpha0);
  rep.error_residual = lhs - rep.signal - rep.noise;
  rep.spacing_ratios = spacing_check(res, m);
  rep.alphas = res.alphas;
  rep.betas = res.betas;
  rep.d = res.d;
  rep.e = res.e;
  rep.L = res.L;
  rep.U = res.U;
  rep.k = res.k;
  rep.a = kr.a;
  rep.b = kr.b;
  return rep;
}

QSystemEvaluation qsystem_lhs(const ExtractionResult& res,
                              const sf::RSEvalConfig& cfg) {
  cfg.validate();
  QSystemEvaluation q;
  const double V = 1e-3;  // point evaluation; window kept minimal
  auto sum_at = [V](double t) {
    const auto w = sf::SpectralWindow::make(t, V);
    return sf::spectral_z(t, w);
  };
  for (int r = 1; r <= res.k; ++r) {
    const double ta = res.alphas[r];
    const double tb = res.betas[r - 1];
    if (ta < cfg.t_switch || tb < cfg.t_switch)
      throw domain_error("Q-system points must lie above t_switch");
    const double num = sum_at(ta);
    const double den = sum_at(tb);
    q.alpha_sums.push_back(num);
    q.beta_sums.push_back(den);
    q.alpha_remainders.push_back(sf::rs_remainder_estimate(ta, 0));
    q.beta_remainders.push_back(sf::rs_remainder_estimate(tb, 0));
    if (std::abs(den) < 1e-12)
      throw degenerate_error("spectral denominator vanished");
    if (q.beta_remainders.back() > 0.1 * std::abs(den))
      q.precision_warning = true;
    q.product *= std::abs(num / den);
  }
  return q;
}

std::vector<double> spacing_check(const ExtractionResult& res,
                                  const ladder::LadderModel& m) {
  const double denom =
      (1.0 - m.c) * sf::prime_pi(res.base_lo, sf::PiMode::exact_sieve);
  std::vector<double> out;
  for (int r = 0; r < res.k; ++r)
    out.push_back((res.alphas[r + 1] - res.alphas[r]) / denom);
  for (int r = 1; r < res.k; ++r)
    out.push_back((res.betas[r] - res.betas[r - 1]) / denom);
  return out;
}

}  // namespace zladder::transform
