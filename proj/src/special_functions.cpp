#include "zladder/special_functions.hpp"

#include <cmath>
#include <cstdint>
#include <mutex>

#include "zladder/constants.hpp"

namespace zladder::special_functions {

namespace {

// B_{2k} for k = 1..15
constexpr double kBernoulli[15] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

// B_{2k} / (2k (2k-1)) for the Stirling series, k = 1..8
constexpr double kStirling[8] = {
    1.0 / 12.0,     -1.0 / 360.0,      1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,   -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0,
};

// Taylor coefficients of Psi(p) about p = 1/4. Psi has a removable
// singularity there; the expansion is exact to double precision within
// radius 0.1 and the direct quotient form is used outside it.
constexpr double kPsiTaylor[23] = {
    0.5,
    -1.0,
    2.467401100272339655,
    -1.644934066848226436,
    0.2771759149525619266,
    4.685670608398413911,
    -7.979031066936238994,
    8.852130154516511707,
    -4.853256793320734491,
    -2.517892298929452135,
    8.237078914021715738,
    -10.39295079931319401,
    6.961298814348566562,
    -1.281393027196820534,
    -3.679517726060430848,
    5.628065485778375518,
    -4.354687407525117119,
    1.707532936516906628,
    0.6914754868725503906,
    -1.73962318567190363,
    1.543361442964795314,
    -0.7621343844683155044,
    0.02421671683519459867,
};

constexpr double kPsiTaylorRadius = 0.1;

// shared per-thread term tables for the main sums
struct TermTables {
  std::vector<double> ln_n{0.0};        // ln_n[n] = ln n
  std::vector<double> inv_sqrt_n{0.0};  // inv_sqrt_n[n] = 1/sqrt(n)
  void grow(std::size_t n_max) {
    while (ln_n.size() <= n_max) {
      const double n = static_cast<double>(ln_n.size());
      ln_n.push_back(std::log(n));
      inv_sqrt_n.push_back(1.0 / std::sqrt(n));
    }
  }
};

TermTables& tables() {
  thread_local TermTables t;
  return t;
}

double psi_taylor(double d) {
  double acc = 0.0;
  for (int k = 22; k >= 0; --k) acc = acc * d + kPsiTaylor[k];
  return acc;
}

double psi3_taylor(double d) {
  double acc = 0.0;
  for (int k = 22; k >= 3; --k) {
    const double c3 = kPsiTaylor[k] * k * (k - 1) * (k - 2);
    acc = acc * d + c3;
  }
  return acc;
}

double psi_direct(double p) {
  return std::cos(kTwoPi * (p * p - p - 0.0625)) / std::cos(kTwoPi * p);
}

double psi3_direct(double p) {
  const double c = std::cos(kTwoPi * p);
  const double tn = std::sin(kTwoPi * p) / c;
  const double A = p * p - p - 0.0625;
  const double SA = std::sin(kTwoPi * A);
  const double CA = std::cos(kTwoPi * A);
  const double q = 2.0 * p - 1.0;
  const double bracket = kPi * tn * CA * (6.0 * tn * tn + 5.0) -
                         3.0 * tn * (kPi * q * q * CA + SA) -
                         3.0 * kPi * q * SA * (2.0 * tn * tn + 1.0) -
                         q * (-kPi * q * q * SA + 3.0 * CA);
  return 8.0 * kPi * kPi / c * bracket;
}

}  // namespace

void RSEvalConfig::validate() const {
  if (!(t_switch >= 10.0))
    throw parameter_error("t_switch must be >= 10");
  if (n_corrections < 0 || n_corrections > 2)
    throw parameter_error("n_corrections must be in 0..2");
  if (em_order < 2 || em_order > 15)
    throw parameter_error("em_order must be in 2..15");
}

std::complex<double> log_gamma(std::complex<double> z) {
  if (!(z.real() > 0.0))
    throw domain_error("log_gamma requires Re z > 0");
  std::complex<double> shift = 0.0;
  while (std::abs(z) < 12.0) {
    shift -= std::log(z);
    z += 1.0;
  }
  const std::complex<double> lz = std::log(z);
  std::complex<double> acc =
      (z - 0.5) * lz - z + 0.5 * kLnTwoPi;
  const std::complex<double> inv2 = 1.0 / (z * z);
  std::complex<double> zpow = 1.0 / z;
  for (int k = 0; k < 8; ++k) {
    acc += kStirling[k] * zpow;
    zpow *= inv2;
  }
  return acc + shift;
}

double theta(double t) {
  if (!(t >= 1.0)) throw domain_error("theta requires t >= 1");
  const double it = 1.0 / t;
  const double it2 = it * it;
  return 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0 +
         it * (1.0 / 48.0 + it2 * (7.0 / 5760.0 + it2 * (31.0 / 80640.0)));
}

double theta_lgamma(double t) {
  if (!(t >= 0.0)) throw domain_error("theta_lgamma requires t >= 0");
  const std::complex<double> lg = log_gamma({0.25, 0.5 * t});
  return lg.imag() - 0.5 * t * std::log(kPi);
}

namespace {

// Anchored main-sum phases. Evaluating theta(t) - t ln n directly rounds two
// ~1e5 rad quantities, so the argument handed to cos() moves in |theta|*eps
// steps as t varies; that staircase noise in Z^2 never shrinks relative to a
// width-proportional tolerance and stalls adaptive quadrature. Expanding
// about the integer anchor A = nearbyint(t) keeps per-call arguments O(1):
// the anchor constants are reduced mod 2pi once (IEEE remainder is exact)
// and the t-dependent offset is a short Taylor series in t - A, smooth to
// ~1e-14. Two slots cover intervals straddling a half-integer boundary.
struct AnchorPhases {
  double A = -1.0;
  long N = -1;
  double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;  // theta^(k)(A) / k!
  std::vector<double> c{0.0};  // remainder(theta(A) - A ln n, 2pi)
};

const AnchorPhases& anchor_phases(double A, long N) {
  thread_local AnchorPhases slots[2];
  thread_local int next = 0;
  for (const auto& s : slots)
    if (s.A == A && s.N >= N) return s;
  AnchorPhases& s = slots[next];
  next = 1 - next;
  const long nb = N + 1;  // headroom so a crossing nearby reuses the slot
  tables().grow(static_cast<std::size_t>(nb));
  const auto& tb = tables();
  const double thA = theta(A);
  const double A2 = A * A;
  s.A = A;
  s.N = nb;
  s.d1 = 0.5 * std::log(A / kTwoPi) - 1.0 / (48.0 * A2);
  s.d2 = 0.25 / A;
  s.d3 = -1.0 / (12.0 * A2);
  s.d4 = 1.0 / (24.0 * A2 * A);
  s.c.resize(nb + 1);
  for (long n = 1; n <= nb; ++n)
    s.c[n] = std::remainder(thA - A * tb.ln_n[n], kTwoPi);
  return s;
}

std::complex<double> zeta_em_impl(double t, int em_order,
                                  double* last_term_mag) {
  const std::complex<double> s{0.5, t};
  const long N = std::max(16L, static_cast<long>(std::ceil(t))) + 8;
  tables().grow(static_cast<std::size_t>(N));
  const auto& tb = tables();

  std::complex<double> sum = 0.0;
  for (long n = 1; n < N; ++n) {
    const double amp = tb.inv_sqrt_n[n];
    const double ph = t * tb.ln_n[n];
    sum += std::complex<double>(amp * std::cos(ph), -amp * std::sin(ph));
  }

  const double lnN = tb.ln_n[N];
  const std::complex<double> Nms = std::exp(-s * lnN);  // N^{-s}
  sum += Nms * static_cast<double>(N) / (s - 1.0);      // N^{1-s} / (s-1)
  sum += 0.5 * Nms;

  // tail: sum_k B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}
  std::complex<double> poch = s;                       // (s)_1
  std::complex<double> npow = Nms / static_cast<double>(N);  // N^{-s-1}
  const double invN2 = 1.0 / (static_cast<double>(N) * N);
  double fact = 2.0;  // (2k)!
  double tmag = 0.0;
  for (int k = 1; k <= em_order; ++k) {
    const std::complex<double> term = (kBernoulli[k - 1] / fact) * poch * npow;
    sum += term;
    tmag = std::abs(term);
    poch *= (s + (2.0 * k - 1.0)) * (s + (2.0 * k));
    npow *= invN2;
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  if (last_term_mag) *last_term_mag = tmag;
  return sum;
}

}  // namespace

std::complex<double> zeta_half_em(double t, int em_order) {
  if (!(t >= 0.0)) throw domain_error("zeta_half_em requires t >= 0");
  if (em_order < 2 || em_order > 15)
    throw parameter_error("em_order must be in 2..15");
  return zeta_em_impl(t, em_order, nullptr);
}

double z_euler_maclaurin(double t, int em_order) {
  const std::complex<double> zeta = zeta_half_em(t, em_order);
  const double th = theta_lgamma(t);
  return (std::polar(1.0, th) * zeta).real();
}

double rs_psi(double p) {
  if (std::abs(p - 0.25) <= kPsiTaylorRadius) return psi_taylor(p - 0.25);
  if (std::abs(p - 0.75) <= kPsiTaylorRadius) return psi_taylor(0.75 - p);
  return psi_direct(p);
}

double rs_psi3(double p) {
  if (std::abs(p - 0.25) <= kPsiTaylorRadius) return psi3_taylor(p - 0.25);
  if (std::abs(p - 0.75) <= kPsiTaylorRadius) return -psi3_taylor(0.75 - p);
  return psi3_direct(p);
}

double z_riemann_siegel(double t, int n_corrections) {
  if (!(t >= 10.0)) throw domain_error("z_riemann_siegel requires t >= 10");
  if (n_corrections < 0 || n_corrections > 2)
    throw parameter_error("n_corrections must be in 0..2");
  const double tau = std::sqrt(t / kTwoPi);
  const long N = static_cast<long>(tau);
  const double p = tau - static_cast<double>(N);
  tables().grow(static_cast<std::size_t>(N));
  const auto& tb = tables();

  const double A = std::nearbyint(t);
  const double delta = t - A;
  const auto& ap = anchor_phases(A, N);
  const double drift =
      delta * (ap.d1 + delta * (ap.d2 + delta * (ap.d3 + delta * ap.d4)));
  double sum = 0.0;
  for (long n = 1; n <= N; ++n)
    sum += tb.inv_sqrt_n[n] * std::cos(ap.c[n] + (drift - delta * tb.ln_n[n]));
  double z = 2.0 * sum;

  if (n_corrections >= 1) {
    const double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
    const double tq = 1.0 / std::sqrt(tau);         // (t/2pi)^{-1/4}
    z += sign * tq * rs_psi(p);
    if (n_corrections >= 2)
      z += sign * tq * tq * tq * (-rs_psi3(p) / (96.0 * kPi * kPi));
  }
  return z;
}

double rs_remainder_estimate(double t, int n_corrections) {
  const double tau = std::sqrt(t / kTwoPi);
  const double p = tau - std::floor(tau);
  switch (n_corrections) {
    case 0:
      return (std::abs(rs_psi(p)) + 0.02) / std::sqrt(tau);
    case 1:
      return (std::abs(rs_psi3(p)) / (96.0 * kPi * kPi) + 0.002) /
             std::pow(tau, 1.5);
    default:
      return 0.01 / std::pow(tau, 2.5);
  }
}

ZResult z_eval_ex(double t, const RSEvalConfig& cfg) {
  cfg.validate();
  if (!(t >= 0.0)) throw domain_error("z_eval requires t >= 0");
  ZResult r;
  if (t < cfg.t_switch) {
    double tail = 0.0;
    const std::complex<double> zeta = zeta_em_impl(t, cfg.em_order, &tail);
    r.value = (std::polar(1.0, theta_lgamma(t)) * zeta).real();
    r.err_estimate = 4.0 * tail + 1e-15;
  } else {
    r.value = z_riemann_siegel(t, cfg.n_corrections);
    r.err_estimate = rs_remainder_estimate(t, cfg.n_corrections);
  }
  r.precision_warning = r.err_estimate > 1e-3;
  return r;
}

double z_eval(double t, const RSEvalConfig& cfg) {
  return z_eval_ex(t, cfg).value;
}

SpectralWindow SpectralWindow::make(double x_ref, double V) {
  if (!(x_ref >= kTwoPi))
    throw parameter_error("spectral window anchor must be >= 2*pi");
  const double v_max = std::pow(x_ref, 0.25);
  if (!(V > 0.0) || !(V < v_max))
    throw parameter_error("window length must be in (0, x_ref^{1/4})");
  SpectralWindow w;
  w.x_ref = x_ref;
  w.V = V;
  w.tau = std::sqrt(x_ref / kTwoPi);
  w.psi = -0.5 * x_ref - kPi / 8.0;
  const long N = static_cast<long>(w.tau);
  const double ln_tau = std::log(w.tau);
  tables().grow(static_cast<std::size_t>(N));
  w.frequencies.reserve(static_cast<std::size_t>(N));
  for (long n = 1; n <= N; ++n)
    w.frequencies.push_back(ln_tau - tables().ln_n[n]);
  return w;
}

double spectral_z(double t, const SpectralWindow& w) {
  if (!(t >= w.x_ref) || !(t <= w.x_ref + w.V))
    throw window_error("t outside the spectral window [x_ref, x_ref + V]");
  tables().grow(w.frequencies.size());
  const auto& tb = tables();
  double sum = 0.0;
  for (std::size_t n = 1; n <= w.frequencies.size(); ++n)
    sum += 2.0 * tb.inv_sqrt_n[n] * std::cos(t * w.frequencies[n - 1] + w.psi);
  return sum;
}

double chi_mod(double t) {
  if (!(t >= 0.0)) throw domain_error("chi_mod requires t >= 0");
  const std::complex<double> lg_m = log_gamma({0.25, -0.5 * t});
  const std::complex<double> lg_p = log_gamma({0.25, 0.5 * t});
  // log chi(s) = (s - 1/2) ln pi + log Gamma((1-s)/2) - log Gamma(s/2),
  // s = 1/2 + it; everything stays in log space so no overflow for any t.
  const double re_logchi = lg_m.real() - lg_p.real();
  return std::exp(re_logchi);
}

double prime_pi(double x, PiMode mode) {
  if (!(x >= 2.0)) throw domain_error("prime_pi requires x >= 2");
  if (mode == PiMode::logarithmic) return x / std::log(x);
  if (x > 1e8)
    throw resource_error("exact sieve limited to x <= 1e8; use logarithmic mode");
  const std::uint64_t n = static_cast<std::uint64_t>(x);
  std::vector<bool> composite(n + 1, false);
  std::uint64_t count = 0;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    ++count;
    if (p * p <= n)
      for (std::uint64_t q = p * p; q <= n; q += p) composite[q] = true;
  }
  return static_cast<double>(count);
}

}  // namespace zladder::special_functions
