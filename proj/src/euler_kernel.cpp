#include "zladder/euler_kernel.hpp"

#include <cmath>
#include <limits>

#include "zladder/constants.hpp"
#include "zladder/quadrature.hpp"

namespace zladder::euler_kernel {

void EulerKernel::validate() const {
  if (!(a > std::abs(b)))
    throw parameter_error("kernel requires a > |b|");
}

namespace {

void check_range(double U) {
  if (!(U > 0.0 && U < kPi)) throw domain_error("U must be in (0, pi)");
}

}  // namespace

double kernel_eval(const EulerKernel& kr, double phi) {
  return 1.0 / (kr.a + kr.b * std::cos(phi));
}

double arctan_factor(const EulerKernel& kr, double U) {
  kr.validate();
  check_range(U);
  if (kr.b == 0.0) return 1.0;
  const double kappa = std::sqrt((kr.a - kr.b) / (kr.a + kr.b));
  return std::atan(kappa * std::tan(0.5 * U)) / (kappa * 0.5 * U);
}

double closed_integral(const EulerKernel& kr, long L, double U) {
  (void)L;  // periodic integrand; kept for interface symmetry
  kr.validate();
  check_range(U);
  return U / (kr.a + kr.b) * arctan_factor(kr, U);
}

double quad_integral(const EulerKernel& kr, long L, double U, double tol) {
  kr.validate();
  check_range(U);
  const double lo = kTwoPi * static_cast<double>(L);
  return quadrature::integrate(
      [&kr](double phi) { return kernel_eval(kr, phi); }, lo, lo + U, tol);
}

double signal_factor(const EulerKernel& kr, double U) {
  kr.validate();
  check_range(U);
  return kr.a / (kr.a + kr.b) * arctan_factor(kr, U);
}

double base_mvt_point(const EulerKernel& kr, long L, double U) {
  kr.validate();
  check_range(U);
  const double lo = kTwoPi * static_cast<double>(L);
  if (kr.b == 0.0) return lo + 0.5 * U;
  const double target = closed_integral(kr, L, U) / U;  // mean kernel value
  // cos is injective over the window, so kernel - target changes sign once
  double a = lo, b = lo + U;
  const double width_tol =
      std::max(1e-12, 4.0 * (lo + U) * std::numeric_limits<double>::epsilon());
  while (b - a > width_tol) {
    const double mid = 0.5 * (a + b);
    const double s = kernel_eval(kr, mid) - target;
    const bool rising = kr.b > 0.0;  // kernel increases over the window
    if ((s < 0.0) == rising) a = mid; else b = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace zladder::euler_kernel
