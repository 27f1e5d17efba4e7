#pragma once

#include <complex>
#include <vector>

#include "zladder/errors.hpp"

namespace zladder::special_functions {

struct RSEvalConfig {
  double t_switch = 200.0;  // Euler-Maclaurin below, Riemann-Siegel above
  int n_corrections = 1;    // 0..2 Riemann-Siegel correction terms
  int em_order = 8;         // Euler-Maclaurin tail truncation order
  void validate() const;
};

struct ZResult {
  double value = 0.0;
  double err_estimate = 0.0;     // estimated truncation error, absolute
  bool precision_warning = false;  // err_estimate > 1e-3
};

// log Gamma(z) on the principal branch, Re z > 0 (Stirling + upward shift).
std::complex<double> log_gamma(std::complex<double> z);

// Riemann-Siegel theta by asymptotic series, t >= 1.
double theta(double t);

// theta via Im log Gamma(1/4 + it/2) - (t/2) ln pi; valid for any t >= 0.
// Used as the small-t path and kept as an independent cross-check.
double theta_lgamma(double t);

// zeta(1/2 + it) by Euler-Maclaurin summation.
std::complex<double> zeta_half_em(double t, int em_order = 8);

// Z(t) via the two backends and the hybrid dispatcher.
double z_euler_maclaurin(double t, int em_order = 8);
double z_riemann_siegel(double t, int n_corrections = 1);
ZResult z_eval_ex(double t, const RSEvalConfig& cfg = {});
double z_eval(double t, const RSEvalConfig& cfg = {});

// First Riemann-Siegel correction shape Psi and its third derivative.
double rs_psi(double p);
double rs_psi3(double p);

// Magnitude estimate of the Riemann-Siegel truncation error at t with
// n_corrections terms applied (empirically calibrated, not a proven bound).
double rs_remainder_estimate(double t, int n_corrections);

struct SpectralWindow {
  double x_ref = 0.0;  // anchor
  double V = 0.0;      // window length, valid t range [x_ref, x_ref + V]
  double tau = 0.0;    // sqrt(x_ref / 2 pi)
  double psi = 0.0;    // -x_ref/2 - pi/8
  std::vector<double> frequencies;  // ln(tau / n), n = 1..floor(tau)
  static SpectralWindow make(double x_ref, double V);
};

// Local oscillator sum: sum over n <= tau of (2/sqrt n) cos(t w_n + psi).
double spectral_z(double t, const SpectralWindow& w);

// |chi(1/2 + it)| from the functional equation, via complex log Gamma.
double chi_mod(double t);

enum class PiMode { exact_sieve, logarithmic };

// Prime counting: exact sieve (x <= 1e8) or the x/ln x approximation.
double prime_pi(double x, PiMode mode);

}  // namespace zladder::special_functions
