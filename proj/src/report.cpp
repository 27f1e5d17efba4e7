#include "zladder/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace zladder::report {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void check_format(const std::string& format) {
  if (format != "json" && format != "csv" && format != "table")
    throw parameter_error("format must be json, csv, or table");
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json to_json_obj(const experiments::TheoremRun& run) {
  ordered_json j;
  j["method"] = "mvt-chain-reconstruction";
  j["inputs"] = {{"L", run.L},       {"U", run.U}, {"k", run.k},
                 {"a", run.a},       {"b", run.b}, {"backend", run.backend},
                 {"tol", run.tol}};
  j["lhs"] = run.report.lhs;
  j["rhs_asym"] = run.report.rhs_asym;
  j["rhs_exact"] = run.report.rhs_exact;
  j["signal"] = run.report.signal;
  j["noise"] = run.report.noise;
  j["error_residual"] = run.report.error_residual;
  j["alphas"] = run.report.alphas;
  j["betas"] = run.report.betas;
  j["d"] = run.report.d;
  j["e"] = run.report.e;
  j["spacing_ratios"] = run.report.spacing_ratios;
  ordered_json chain;
  chain["base"] = {run.chain.base.lo, run.chain.base.hi};
  ordered_json levels = ordered_json::array();
  for (const auto& s : run.chain.levels) levels.push_back({s.lo, s.hi});
  chain["levels"] = levels;
  j["chain"] = chain;
  ordered_json q;
  q["alpha_sums"] = run.qsystem.alpha_sums;
  q["beta_sums"] = run.qsystem.beta_sums;
  q["alpha_remainders"] = run.qsystem.alpha_remainders;
  q["beta_remainders"] = run.qsystem.beta_remainders;
  q["product"] = run.qsystem.product;
  q["precision_warning"] = run.qsystem.precision_warning;
  j["qsystem"] = q;
  j["elapsed_s"] = run.elapsed_s;
  return j;
}

std::string theorem_csv(const experiments::TheoremRun& run) {
  std::ostringstream head, row;
  head << "L,U,k,a,b,backend,"
          "lhs,rhs_asym,rhs_exact,signal,noise,error_residual,d,e";
  row << run.L << ',' << num(run.U) << ',' << run.k << ',' << num(run.a)
      << ',' << num(run.b) << ',' << run.backend << ',' << num(run.report.lhs)
      << ',' << num(run.report.rhs_asym) << ',' << num(run.report.rhs_exact)
      << ',' << num(run.report.signal) << ',' << num(run.report.noise) << ','
      << num(run.report.error_residual) << ',' << num(run.report.d) << ','
      << num(run.report.e);
  for (std::size_t r = 0; r < run.report.alphas.size(); ++r) {
    head << ",alpha_" << r;
    row << ',' << num(run.report.alphas[r]);
  }
  for (std::size_t r = 0; r < run.report.betas.size(); ++r) {
    head << ",beta_" << (r + 1);
    row << ',' << num(run.report.betas[r]);
  }
  for (std::size_t r = 0; r < run.report.spacing_ratios.size(); ++r) {
    head << ",spacing_" << r;
    row << ',' << num(run.report.spacing_ratios[r]);
  }
  return head.str() + "\n" + row.str() + "\n";
}

std::string theorem_table(const experiments::TheoremRun& run) {
  std::ostringstream os;
  char line[128];
  auto put = [&](const char* name, double v) {
    std::snprintf(line, sizeof line, "%-16s %.12g\n", name, v);
    os << line;
  };
  os << "run: L=" << run.L << " U=" << num(run.U) << " k=" << run.k
     << " a=" << num(run.a) << " b=" << num(run.b)
     << " backend=" << run.backend << "\n";
  put("lhs", run.report.lhs);
  put("rhs_asym", run.report.rhs_asym);
  put("rhs_exact", run.report.rhs_exact);
  put("signal", run.report.signal);
  put("noise", run.report.noise);
  put("error_residual", run.report.error_residual);
  put("d", run.report.d);
  put("e", run.report.e);
  for (std::size_t r = 0; r < run.report.alphas.size(); ++r) {
    std::snprintf(line, sizeof line, "alpha_%-10zu %.12f\n", r,
                  run.report.alphas[r]);
    os << line;
  }
  for (std::size_t r = 0; r < run.report.betas.size(); ++r) {
    std::snprintf(line, sizeof line, "beta_%-11zu %.12f\n", r + 1,
                  run.report.betas[r]);
    os << line;
  }
  for (std::size_t r = 0; r < run.report.spacing_ratios.size(); ++r) {
    std::snprintf(line, sizeof line, "spacing_%-8zu %.12g\n", r,
                  run.report.spacing_ratios[r]);
    os << line;
  }
  std::snprintf(line, sizeof line, "%-16s %.12g\n", "qsystem_product",
                run.qsystem.product);
  os << line;
  std::snprintf(line, sizeof line, "%-16s %.3f\n", "elapsed_s",
                run.elapsed_s);
  os << line;
  return os.str();
}

}  // namespace

std::string theorem_to_json(const experiments::TheoremRun& run) {
  return to_json_obj(run).dump(2) + "\n";
}

experiments::TheoremRun theorem_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw io_error(std::string("report parse failed: ") + e.what());
  }
  try {
    experiments::TheoremRun run;
    const auto& in = j.at("inputs");
    run.L = in.at("L").get<long>();
    run.U = in.at("U").get<double>();
    run.k = in.at("k").get<int>();
    run.a = in.at("a").get<double>();
    run.b = in.at("b").get<double>();
    run.backend = in.at("backend").get<std::string>();
    run.tol = in.at("tol").get<double>();
    auto& rep = run.report;
    rep.lhs = j.at("lhs").get<double>();
    rep.rhs_asym = j.at("rhs_asym").get<double>();
    rep.rhs_exact = j.at("rhs_exact").get<double>();
    rep.signal = j.at("signal").get<double>();
    rep.noise = j.at("noise").get<double>();
    rep.error_residual = j.at("error_residual").get<double>();
    rep.alphas = j.at("alphas").get<std::vector<double>>();
    rep.betas = j.at("betas").get<std::vector<double>>();
    rep.d = j.at("d").get<double>();
    rep.e = j.at("e").get<double>();
    rep.spacing_ratios = j.at("spacing_ratios").get<std::vector<double>>();
    rep.L = run.L;
    rep.U = run.U;
    rep.k = run.k;
    rep.a = run.a;
    rep.b = run.b;
    const auto& ch = j.at("chain");
    run.chain.base = {ch.at("base").at(0).get<double>(),
                      ch.at("base").at(1).get<double>()};
    for (const auto& lv : ch.at("levels"))
      run.chain.levels.push_back(
          {lv.at(0).get<double>(), lv.at(1).get<double>()});
    run.chain.L = run.L;
    run.chain.U = run.U;
    run.chain.k = run.k;
    const auto& q = j.at("qsystem");
    run.qsystem.alpha_sums = q.at("alpha_sums").get<std::vector<double>>();
    run.qsystem.beta_sums = q.at("beta_sums").get<std::vector<double>>();
    run.qsystem.alpha_remainders =
        q.at("alpha_remainders").get<std::vector<double>>();
    run.qsystem.beta_remainders =
        q.at("beta_remainders").get<std::vector<double>>();
    run.qsystem.product = q.at("product").get<double>();
    run.qsystem.precision_warning = q.at("precision_warning").get<bool>();
    run.extraction.d = rep.d;
    run.extraction.e = rep.e;
    run.extraction.alphas = rep.alphas;
    run.extraction.betas = rep.betas;
    run.extraction.base_lo = run.chain.base.lo;
    run.extraction.L = run.L;
    run.extraction.U = run.U;
    run.extraction.k = run.k;
    run.elapsed_s = j.at("elapsed_s").get<double>();
    return run;
  } catch (const json::exception& e) {
    throw io_error(std::string("report schema mismatch: ") + e.what());
  }
}

std::string render_theorem(const experiments::TheoremRun& run,
                           const std::string& format) {
  check_format(format);
  if (format == "json") return theorem_to_json(run);
  if (format == "csv") return theorem_csv(run);
  return theorem_table(run);
}

std::string render_decomposition(const experiments::Decomposition& dec,
                                 const std::string& format) {
  check_format(format);
  if (format == "json") {
    ordered_json j;
    j["signal"] = dec.signal;
    j["noise"] = dec.noise;
    j["error_residual"] = dec.error_residual;
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    return "signal,noise,error_residual\n" + num(dec.signal) + "," +
           num(dec.noise) + "," + num(dec.error_residual) + "\n";
  }
  std::ostringstream os;
  char line[96];
  std::snprintf(line, sizeof line, "%-16s %.12g\n", "signal", dec.signal);
  os << line;
  std::snprintf(line, sizeof line, "%-16s %.12g\n", "noise", dec.noise);
  os << line;
  std::snprintf(line, sizeof line, "%-16s %.12g\n", "error_residual",
                dec.error_residual);
  os << line;
  return os.str();
}

std::string render_chain(const ladder::SegmentChain& chain,
                         const std::string& format) {
  check_format(format);
  if (format == "json") {
    ordered_json j;
    j["L"] = chain.L;
    j["U"] = chain.U;
    j["k"] = chain.k;
    j["base"] = {chain.base.lo, chain.base.hi};
    ordered_json levels = ordered_json::array();
    for (const auto& s : chain.levels) levels.push_back({s.lo, s.hi});
    j["levels"] = levels;
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream os;
    os << "level,lo,hi\n";
    os << "0," << num(chain.base.lo) << ',' << num(chain.base.hi) << "\n";
    for (std::size_t r = 0; r < chain.levels.size(); ++r)
      os << (r + 1) << ',' << num(chain.levels[r].lo) << ','
         << num(chain.levels[r].hi) << "\n";
    return os.str();
  }
  std::ostringstream os;
  char line[96];
  std::snprintf(line, sizeof line, "base   [%.9f, %.9f]\n", chain.base.lo,
                chain.base.hi);
  os << line;
  for (std::size_t r = 0; r < chain.levels.size(); ++r) {
    std::snprintf(line, sizeof line, "seg^%-2zu [%.9f, %.9f]\n", r + 1,
                  chain.levels[r].lo, chain.levels[r].hi);
    os << line;
  }
  return os.str();
}

std::string render_scan(const experiments::DistinctScan& scan,
                        const std::string& format) {
  check_format(format);
  if (format == "json") {
    ordered_json j;
    j["U0"] = scan.U0;
    j["delta"] = scan.delta;
    j["grid"] = scan.grid;
    j["tuples"] = scan.tuples;
    j["min_pairwise_gap"] = scan.min_pairwise_gap;
    j["min_component_gap"] = scan.min_component_gap;
    return j.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream os;
    os << "U";
    const std::size_t width = scan.tuples.empty() ? 0 : scan.tuples[0].size();
    for (std::size_t c = 0; c < width; ++c) os << ",x_" << c;
    os << "\n";
    for (std::size_t i = 0; i < scan.grid.size(); ++i) {
      os << num(scan.grid[i]);
      for (double v : scan.tuples[i]) os << ',' << num(v);
      os << "\n";
    }
    return os.str();
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < scan.grid.size(); ++i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "U=%.9f:", scan.grid[i]);
    os << buf;
    for (double v : scan.tuples[i]) {
      std::snprintf(buf, sizeof buf, " %.9f", v);
      os << buf;
    }
    os << "\n";
  }
  char line[96];
  std::snprintf(line, sizeof line, "min_pairwise_gap  %.12g\n",
                scan.min_pairwise_gap);
  os << line;
  std::snprintf(line, sizeof line, "min_component_gap %.12g\n",
                scan.min_component_gap);
  os << line;
  return os.str();
}

std::string render_complement(
    const std::vector<experiments::ComplementRow>& rows,
    const std::string& format) {
  check_format(format);
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j;
      j["T"] = r.T;
      j["phi1"] = r.phi1;
      j["gap"] = r.gap;
      j["pi_exact"] = r.pi_exact;
      j["ratio"] = r.ratio;
      j["closure"] = r.closure;
      arr.push_back(j);
    }
    return arr.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream os;
    os << "T,phi1,gap,pi_exact,ratio,closure\n";
    for (const auto& r : rows)
      os << num(r.T) << ',' << num(r.phi1) << ',' << num(r.gap) << ','
         << num(r.pi_exact) << ',' << num(r.ratio) << ',' << num(r.closure)
         << "\n";
    return os.str();
  }
  std::ostringstream os;
  os << "T             phi1          gap         pi(T)    ratio     closure\n";
  for (const auto& r : rows) {
    char line[128];
    std::snprintf(line, sizeof line, "%-13.6g %-13.8g %-11.6g %-8.0f %-9.6f %.6f\n",
                  r.T, r.phi1, r.gap, r.pi_exact, r.ratio, r.closure);
    os << line;
  }
  return os.str();
}

}  // namespace zladder::report
