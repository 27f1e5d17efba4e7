#pragma once

#include <vector>

#include "zladder/moment.hpp"

namespace zladder::ladder {

// Inversion model for phi1, the increasing reparametrization defined by
// moment_main(phi1(T)) = hl_integral(T). Immutable after construction; the
// checkpoint table must outlive the model under the quadrature backend.
struct LadderModel {
  moment::Backend backend = moment::Backend::quadrature;
  double c = kEulerGamma;
  double c0 = 0.0;  // additive second-moment constant, default 0
  const moment::MomentCheckpointTable* table = nullptr;
  special_functions::RSEvalConfig zcfg{};
  double tol = 1e-9;             // inversion tolerance, t units
  double t_min = 100.0;          // smallest t the inversion accepts
  double pipeline_min = 1000.0;  // smallest admissible base point 2*pi*L
  void validate() const;
};

struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// base = [2piL, 2piL+U] and its k reversely iterated preimage segments,
// level r being the r-fold phi1_inverse image of the base endpoints.
struct SegmentChain {
  Segment base;
  std::vector<Segment> levels;  // seg^1 .. seg^k
  long L = 0;
  double U = 0.0;
  int k = 0;
  const Segment& seg(int r) const { return r == 0 ? base : levels[r - 1]; }
};

// Main term of the second moment as a function of its own argument:
// F(y) = y ln y + (c - ln 2pi) y + c0, and its derivative.
double moment_main(double y, const LadderModel& m);
double moment_main_slope(double y, const LadderModel& m);

// The model's I(T) under its configured backend.
double hl(double T, const LadderModel& m);

// Solves moment_main(y) = hl(T) for y (safeguarded Newton).
double phi1(double T, const LadderModel& m);

// omega(t) = moment_main_slope(phi1(t)) = ln phi1(t) + 1 + c - ln 2pi.
double omega(double t, const LadderModel& m);

// z_eval(t)^2 / omega(t); equals d phi1/dt under the quadrature backend,
// which is the only backend this function accepts.
double tilde_z_sq(double t, const LadderModel& m);

// The unique t with phi1(t) = x, by monotone bisection on hl(t).
double phi1_inverse(double x, const LadderModel& m);

// j-fold composition of phi1; j = 0 is the identity.
double phi1_iter(double t, int j, const LadderModel& m);

SegmentChain reverse_chain(long L, double U, int k, const LadderModel& m);

}  // namespace zladder::ladder
