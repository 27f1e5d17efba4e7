#pragma once

#include "zladder/errors.hpp"

namespace zladder::euler_kernel {

// The kernel f(phi) = 1/(a + b cos phi); requires a > |b| so the
// denominator stays positive.
struct EulerKernel {
  double a = 2.0;
  double b = 1.0;
  void validate() const;
};

double kernel_eval(const EulerKernel& kr, double phi);

// arctan(kappa tan(U/2)) / (kappa U/2) with kappa = sqrt((a-b)/(a+b));
// exactly 1 when b = 0. The U-dependent factor shared by the closed
// integral and the signal factor. U in (0, pi).
double arctan_factor(const EulerKernel& kr, double U);

// J = integral of the kernel over [2piL, 2piL+U], closed form; the value
// is independent of L by periodicity.
double closed_integral(const EulerKernel& kr, long L, double U);

// Adaptive-quadrature oracle for closed_integral.
double quad_integral(const EulerKernel& kr, long L, double U, double tol);

// g(U) = a/(a+b) * arctan_factor; stationary in L by construction.
double signal_factor(const EulerKernel& kr, double U);

// The unique alpha in (2piL, 2piL+U) with kernel_eval(alpha) * U = J,
// by bisection; midpoint when b = 0 makes the kernel constant.
double base_mvt_point(const EulerKernel& kr, long L, double U);

}  // namespace zladder::euler_kernel
