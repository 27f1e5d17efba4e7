#include "zladder/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "zladder/report.hpp"

namespace zladder::cli {

namespace fs = std::filesystem;
namespace sf = special_functions;

namespace {

struct Common {
  std::string format = "table";
  std::string cache_dir;
  std::string output;
  std::string backend = "quadrature";
  double c0 = 0.0;
  double tol = 1e-9;
  int corrections = 1;
};

void add_format(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "json, csv, or table");
  sub->add_option("--output", c.output, "write the result to a file");
}

void add_cache(CLI::App* sub, Common& c) {
  sub->add_option("--cache-dir", c.cache_dir,
                  "checkpoint cache directory (ZLADDER_CACHE_DIR overrides)");
}

void add_model(CLI::App* sub, Common& c) {
  sub->add_option("--backend", c.backend, "quadrature or asymptotic");
  sub->add_option("--c0", c.c0, "additive second-moment constant");
  sub->add_option("--tol", c.tol, "inversion tolerance, t units");
  sub->add_option("--corrections", c.corrections,
                  "Riemann-Siegel correction terms, 0..2");
}

fs::path resolve_cache_dir(const Common& c) {
  if (const char* env = std::getenv("ZLADDER_CACHE_DIR"))
    if (*env) return env;
  if (!c.cache_dir.empty()) return c.cache_dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
    if (*xdg) return fs::path(xdg) / "zladder";
  if (const char* home = std::getenv("HOME"))
    if (*home) return fs::path(home) / ".cache" / "zladder";
  return fs::temp_directory_path() / "zladder-cache";
}

fs::path cache_file(const Common& c) {
  const std::string name =
      c.corrections == 1
          ? "moment-ckpt.txt"
          : "moment-ckpt-c" + std::to_string(c.corrections) + ".txt";
  return resolve_cache_dir(c) / name;
}

moment::MomentCheckpointTable ensure_table(const Common& c, double T_need,
                                           const sf::RSEvalConfig& zcfg,
                                           std::ostream& err) {
  const fs::path file = cache_file(c);
  std::error_code ec;
  fs::create_directories(file.parent_path(), ec);
  moment::MomentCheckpointTable table;
  if (fs::exists(file)) {
    table = moment::load_table(file);
    if (table.t_max() >= T_need) return table;
    err << "note: extending moment checkpoints to T = " << T_need << "\n";
    moment::extend_checkpoints(table, T_need, zcfg);
  } else {
    err << "note: building moment checkpoints to T = " << T_need
        << " (one-time per cache)\n";
    table = moment::build_checkpoints(T_need, 1e-10, zcfg);
  }
  moment::save_table(table, file);
  return table;
}

// table coverage for a k-level chain at base 2*pi*L, with bracket headroom
double chain_table_need(long L, double U, int k, double c) {
  double t = kTwoPi * static_cast<double>(L) + U;
  double need = t;
  for (int r = 1; r <= k; ++r) {
    const double g = (1.0 - c) * t / (std::log(t) + 1.0 + c - kLnTwoPi);
    need = std::max(need, t + 2.6 * g);
    t += 1.3 * g;
  }
  return std::ceil((need + 10.0) / 500.0) * 500.0;
}

double round_need(double T) {
  return std::ceil((T + 10.0) / 500.0) * 500.0;
}

sf::RSEvalConfig make_zcfg(const Common& c) {
  sf::RSEvalConfig zcfg;
  zcfg.n_corrections = c.corrections;
  zcfg.validate();
  return zcfg;
}

struct ModelHolder {
  moment::MomentCheckpointTable table;
  ladder::LadderModel m;
};

ModelHolder make_model(const Common& c, double T_need, std::ostream& err) {
  ModelHolder h;
  h.m.backend = moment::parse_backend(c.backend);
  h.m.c0 = c.c0;
  h.m.tol = c.tol;
  h.m.zcfg = make_zcfg(c);
  if (h.m.backend == moment::Backend::quadrature) {
    h.table = ensure_table(c, T_need, h.m.zcfg, err);
    h.m.table = &h.table;
  }
  return h;
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw io_error("cannot open output file: " + c.output);
  f << text;
}

void check_u(double U) {
  if (!(U > 0.0 && U < kPi)) throw parameter_error("U must be in (0, pi)");
}

void check_kernel(double a, double b) {
  euler_kernel::EulerKernel{a, b}.validate();
}

void check_k(int k) {
  if (k < 1 || k > 3) throw parameter_error("k must be in [1, 3]");
}

std::string one_number(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v << "\n";
  return os.str();
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"factorization laboratory for |zeta(1/2+it)| ratio products"};
  app.require_subcommand(1);

  Common c;
  double t = 0.0, x = 0.0, T = 0.0, T_max = 0.0;
  long L = 1592;
  double U = 1.0, a = 2.0, b = 1.0;
  int k = 1;
  double U0 = 1.0, delta = 0.2;
  int n_grid = 8;
  std::string pi_mode = "exact";
  std::vector<double> T_list;
  double build_tol = 1e-10;

  auto* cmd_z = app.add_subcommand("z", "evaluate Z(t)");
  cmd_z->add_option("--t", t, "evaluation point")->required();
  add_model(cmd_z, c);
  add_format(cmd_z, c);
  cmd_z->callback([&] {
    if (!(t >= 0.0)) throw domain_error("t must be nonnegative");
    const auto r = sf::z_eval_ex(t, make_zcfg(c));
    if (r.precision_warning)
      err << "warning: truncation estimate " << r.err_estimate << "\n";
    emit(c, out, one_number(r.value));
  });

  auto* cmd_theta = app.add_subcommand("theta", "Riemann-Siegel theta(t)");
  cmd_theta->add_option("--t", t, "evaluation point")->required();
  add_format(cmd_theta, c);
  cmd_theta->callback([&] { emit(c, out, one_number(sf::theta(t))); });

  auto* cmd_chi =
      app.add_subcommand("chi-check", "|chi(1/2+it)| from the functional equation");
  cmd_chi->add_option("--t", t, "evaluation point")->required();
  add_format(cmd_chi, c);
  cmd_chi->callback([&] {
    std::ostringstream os;
    os << std::fixed << std::setprecision(9) << sf::chi_mod(t) << "\n";
    emit(c, out, os.str());
  });

  auto* cmd_pi = app.add_subcommand("pi", "prime counting function");
  cmd_pi->add_option("--x", x, "argument")->required();
  cmd_pi->add_option("--mode", pi_mode, "exact or logarithmic");
  add_format(cmd_pi, c);
  cmd_pi->callback([&] {
    if (pi_mode == "exact") {
      const double v = sf::prime_pi(x, sf::PiMode::exact_sieve);
      std::ostringstream os;
      os << static_cast<long long>(v) << "\n";
      emit(c, out, os.str());
    } else if (pi_mode == "logarithmic") {
      emit(c, out, one_number(sf::prime_pi(x, sf::PiMode::logarithmic)));
    } else {
      throw parameter_error("mode must be exact or logarithmic");
    }
  });

  auto* cmd_moment =
      app.add_subcommand("moment", "second-moment integral up to T");
  cmd_moment->add_option("--T", T, "upper limit")->required();
  add_model(cmd_moment, c);
  add_cache(cmd_moment, c);
  add_format(cmd_moment, c);
  cmd_moment->callback([&] {
    if (!(T >= 0.0)) throw domain_error("T must be nonnegative");
    const auto be = moment::parse_backend(c.backend);
    if (be == moment::Backend::asymptotic) {
      emit(c, out, one_number(moment::hl_asymptotic(T, kEulerGamma, c.c0)));
      return;
    }
    const auto zcfg = make_zcfg(c);
    const auto table = ensure_table(c, round_need(T), zcfg, err);
    emit(c, out,
         one_number(moment::hl_integral(T, be, table, zcfg, kEulerGamma, c.c0)));
  });

  auto* cmd_ladder =
      app.add_subcommand("ladder", "phi1, omega and the derivative weight at T");
  cmd_ladder->add_option("--T", T, "evaluation point")->required();
  add_model(cmd_ladder, c);
  add_cache(cmd_ladder, c);
  add_format(cmd_ladder, c);
  cmd_ladder->callback([&] {
    auto h = make_model(c, round_need(T), err);
    const double p = ladder::phi1(T, h.m);
    const double w = ladder::moment_main_slope(p, h.m);
    const bool quad = h.m.backend == moment::Backend::quadrature;
    const double tz = quad ? ladder::tilde_z_sq(T, h.m) : 0.0;
    if (c.format == "json") {
      std::ostringstream os;
      os << std::setprecision(17) << "{\n  \"T\": " << T
         << ",\n  \"phi1\": " << p << ",\n  \"omega\": " << w;
      if (quad) os << ",\n  \"tilde_z_sq\": " << tz;
      os << "\n}\n";
      emit(c, out, os.str());
    } else {
      std::ostringstream os;
      os << std::setprecision(15) << "phi1        " << p << "\n"
         << "omega       " << w << "\n";
      if (quad) os << "tilde_z_sq  " << tz << "\n";
      emit(c, out, os.str());
    }
  });

  auto* cmd_chain =
      app.add_subcommand("chain", "reversely iterated segment chain");
  cmd_chain->add_option("--L", L, "base index, base starts at 2*pi*L")->required();
  cmd_chain->add_option("--U", U, "base length, in (0, pi)")->required();
  cmd_chain->add_option("--k", k, "chain depth, 1..3");
  add_model(cmd_chain, c);
  add_cache(cmd_chain, c);
  add_format(cmd_chain, c);
  cmd_chain->callback([&] {
    check_u(U);
    check_k(k);
    auto h = make_model(c, chain_table_need(L, U, k, kEulerGamma), err);
    emit(c, out, report::render_chain(ladder::reverse_chain(L, U, k, h.m),
                                      c.format));
  });

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--L", L, "base index, base starts at 2*pi*L")->required();
    sub->add_option("--U", U, "base length, in (0, pi)")->required();
    sub->add_option("--k", k, "chain depth, 1..3");
    sub->add_option("--a", a, "kernel constant term");
    sub->add_option("--b", b, "kernel cosine coefficient");
    add_model(sub, c);
    add_cache(sub, c);
    add_format(sub, c);
  };

  auto make_run = [&]() -> experiments::TheoremRun {
    check_u(U);
    check_k(k);
    check_kernel(a, b);
    auto h = make_model(c, chain_table_need(L, U, k, kEulerGamma), err);
    return experiments::run_theorem(L, U, k, euler_kernel::EulerKernel{a, b},
                                    h.m);
  };

  auto* cmd_theorem =
      app.add_subcommand("theorem", "full factorization pipeline run");
  add_run_flags(cmd_theorem);
  cmd_theorem->callback(
      [&] { emit(c, out, report::render_theorem(make_run(), c.format)); });

  auto* cmd_decompose =
      app.add_subcommand("decompose", "signal, noise and error of a run");
  add_run_flags(cmd_decompose);
  cmd_decompose->callback([&] {
    emit(c, out,
         report::render_decomposition(experiments::decompose(make_run()),
                                      c.format));
  });

  auto* cmd_scan =
      app.add_subcommand("distinct-scan", "control-point tuples over a U grid");
  cmd_scan->add_option("--L", L, "base index")->required();
  cmd_scan->add_option("--k", k, "chain depth, 1..3");
  cmd_scan->add_option("--a", a, "kernel constant term");
  cmd_scan->add_option("--b", b, "kernel cosine coefficient");
  cmd_scan->add_option("--U0", U0, "grid center");
  cmd_scan->add_option("--delta", delta, "grid half width");
  cmd_scan->add_option("--n", n_grid, "grid size");
  add_model(cmd_scan, c);
  add_cache(cmd_scan, c);
  add_format(cmd_scan, c);
  cmd_scan->callback([&] {
    check_k(k);
    check_kernel(a, b);
    experiments::scan_grid(U0, delta, n_grid);  // validate before cache work
    auto h = make_model(c, chain_table_need(L, U0 + delta, k, kEulerGamma), err);
    emit(c, out,
         report::render_scan(
             experiments::distinct_scan(L, k, euler_kernel::EulerKernel{a, b},
                                        h.m, U0, delta, n_grid),
             c.format));
  });

  auto* cmd_complement =
      app.add_subcommand("complement", "T - phi1(T) against (1-c) pi(T)");
  cmd_complement->add_option("--T", T_list, "evaluation points")->required();
  add_model(cmd_complement, c);
  add_cache(cmd_complement, c);
  add_format(cmd_complement, c);
  cmd_complement->callback([&] {
    double top = 0.0;
    for (double v : T_list) top = std::max(top, v);
    auto h = make_model(c, round_need(top), err);
    emit(c, out,
         report::render_complement(experiments::complement_report(T_list, h.m),
                                   c.format));
  });

  auto* cmd_cache =
      app.add_subcommand("cache-build", "build or extend the checkpoint cache");
  cmd_cache->add_option("--T-max", T_max, "table coverage")->required();
  cmd_cache->add_option("--tol", build_tol, "cell tolerance");
  cmd_cache->add_option("--corrections", c.corrections,
                        "Riemann-Siegel correction terms, 0..2");
  add_cache(cmd_cache, c);
  cmd_cache->callback([&] {
    if (!(T_max > 0.0)) throw parameter_error("T-max must be positive");
    const fs::path file = cache_file(c);
    std::error_code ec;
    fs::create_directories(file.parent_path(), ec);
    const auto zcfg = make_zcfg(c);
    moment::MomentCheckpointTable table;
    if (fs::exists(file)) {
      table = moment::load_table(file);
      if (table.t_max() < T_max) moment::extend_checkpoints(table, T_max, zcfg);
    } else {
      table = moment::build_checkpoints(T_max, build_tol, zcfg);
    }
    moment::save_table(table, file);
    out << "cache " << file.string() << " covers T <= " << table.t_max()
        << "\n";
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const zladder::error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace zladder::cli
