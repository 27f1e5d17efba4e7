#include "zladder/moment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "zladder/quadrature.hpp"

namespace zladder::moment {

namespace sf = special_functions;

Backend parse_backend(const std::string& name) {
  if (name == "quadrature") return Backend::quadrature;
  if (name == "asymptotic") return Backend::asymptotic;
  throw parameter_error("unknown backend '" + name +
                        "' (expected quadrature or asymptotic)");
}

std::string backend_name(Backend b) {
  return b == Backend::quadrature ? "quadrature" : "asymptotic";
}

void MomentCheckpointTable::validate() const {
  if (version != "ZLADDER-CKPT v1")
    throw io_error("unsupported checkpoint version '" + version + "'");
  if (grid.empty() || grid.front().first != 0.0 || grid.front().second != 0.0)
    throw io_error("checkpoint grid must start at (0, 0)");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i].first > grid[i - 1].first) ||
        !(grid[i].second > grid[i - 1].second))
      throw io_error("checkpoint grid must be strictly increasing in T and I");
  }
}

namespace {

double local_panel_width(double t_hi, const QuadratureRule& rule) {
  const double lg = std::log(std::max(t_hi, 20.0) / kTwoPi);
  const double zero_spacing = kTwoPi / std::max(lg, 1.0);
  return rule.panel_fraction * zero_spacing;
}

double zsq_piece(double a, double b, const sf::RSEvalConfig& zcfg,
                 const QuadratureRule& rule) {
  if (b <= a) return 0.0;
  auto f = [&zcfg](double t) {
    const double z = sf::z_eval(t, zcfg);
    return z * z;
  };
  const double pw = local_panel_width(b, rule);
  const int n_panels = std::max(1, static_cast<int>(std::ceil((b - a) / pw)));
  double acc = 0.0;
  for (int i = 0; i < n_panels; ++i) {
    const double pa = a + (b - a) * i / n_panels;
    const double pb = a + (b - a) * (i + 1) / n_panels;
    const double share = rule.cell_tol * (pb - pa) / (b - a);
    auto r = quadrature::integrate_adaptive(f, pa, pb, share, rule.gl_order, 32);
    if (!r.converged)
      throw tolerance_error("moment quadrature stalled before tolerance");
    acc += r.value;
  }
  return acc;
}

}  // namespace

double zsq_integral_cell(double a, double b, const sf::RSEvalConfig& zcfg,
                         const QuadratureRule& rule) {
  if (!(a >= 0.0) || !(b >= a)) throw domain_error("bad integration cell");
  const double ts = zcfg.t_switch;
  if (a < ts && ts < b)
    return zsq_piece(a, ts, zcfg, rule) + zsq_piece(ts, b, zcfg, rule);
  return zsq_piece(a, b, zcfg, rule);
}

namespace {

std::string describe_rule(const QuadratureRule& rule) {
  std::ostringstream os;
  os << "panels <= " << rule.panel_fraction
     << " of local zero spacing 2pi/ln(T/2pi), Gauss-Legendre "
     << rule.gl_order << " per panel, adaptive halving";
  return os.str();
}

}  // namespace

MomentCheckpointTable build_checkpoints(double T_max, double tol,
                                        const sf::RSEvalConfig& zcfg) {
  if (!(T_max > 0.0)) throw parameter_error("T_max must be positive");
  if (!(tol > 0.0)) throw parameter_error("tol must be positive");
  MomentCheckpointTable table;
  table.tol = tol;
  QuadratureRule rule;
  rule.cell_tol = tol;
  table.panel_width_rule = describe_rule(rule);
  table.grid.emplace_back(0.0, 0.0);
  extend_checkpoints(table, T_max, zcfg);
  return table;
}

void extend_checkpoints(MomentCheckpointTable& table, double T_max,
                        const sf::RSEvalConfig& zcfg) {
  table.validate();
  if (!(T_max > 0.0)) throw parameter_error("T_max must be positive");
  QuadratureRule rule;
  rule.cell_tol = table.tol;
  // drop a fractional tail node so extension proceeds on the unit grid
  if (table.grid.back().first != std::floor(table.grid.back().first))
    table.grid.pop_back();
  double T = table.grid.back().first;
  double I = table.grid.back().second;
  double comp = 0.0;  // Kahan compensation across cells
  while (T < T_max) {
    const double next = std::min(T + 1.0, T_max);
    const double cell = zsq_integral_cell(T, next, zcfg, rule);
    const double y = cell - comp;
    const double sum = I + y;
    comp = (sum - I) - y;
    I = sum;
    T = next;
    table.grid.emplace_back(T, I);
  }
}

void save_table(const MomentCheckpointTable& table,
                const std::filesystem::path& file) {
  table.validate();
  std::ofstream os(file);
  if (!os) throw io_error("cannot open checkpoint file for writing: " + file.string());
  os << table.version << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", table.tol);
  os << "# tol " << buf << "\n";
  os << "# panel_rule " << table.panel_width_rule << "\n";
  for (const auto& [T, I] : table.grid) {
    char tb[64], ib[64];
    std::snprintf(tb, sizeof tb, "%.17g", T);
    std::snprintf(ib, sizeof ib, "%.17g", I);
    os << tb << "," << ib << "\n";
  }
  if (!os) throw io_error("write failure on checkpoint file: " + file.string());
}

MomentCheckpointTable load_table(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw io_error("cannot open checkpoint file: " + file.string());
  MomentCheckpointTable table;
  std::string line;
  if (!std::getline(is, line)) throw io_error("empty checkpoint file");
  if (line != "ZLADDER-CKPT v1")
    throw io_error("bad checkpoint header '" + line + "'");
  table.version = line;
  table.grid.clear();
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string key;
      ls >> key;
      if (key == "tol") ls >> table.tol;
      if (key == "panel_rule") {
        std::string rest;
        std::getline(ls, rest);
        if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
        table.panel_width_rule = rest;
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw io_error("malformed checkpoint row: " + line);
    try {
      const double T = std::stod(line.substr(0, comma));
      const double I = std::stod(line.substr(comma + 1));
      table.grid.emplace_back(T, I);
    } catch (const std::exception&) {
      throw io_error("malformed checkpoint row: " + line);
    }
  }
  table.validate();
  return table;
}

double hl_asymptotic(double T, double c, double c0) {
  if (!(T >= 0.0)) throw domain_error("hl_integral requires T >= 0");
  if (T == 0.0) return c0;
  return T * std::log(T) + (2.0 * c - 1.0 - kLnTwoPi) * T + c0;
}

double hl_integral(double T, Backend backend,
                   const MomentCheckpointTable& table,
                   const sf::RSEvalConfig& zcfg, double c, double c0) {
  if (!(T >= 0.0)) throw domain_error("hl_integral requires T >= 0");
  if (backend == Backend::asymptotic) return hl_asymptotic(T, c, c0);
  if (T == 0.0) return 0.0;
  if (T > table.t_max())
    throw resource_error(
        "T beyond the checkpoint table (T_max = " +
        std::to_string(table.t_max()) + "); rebuild the cache with a larger T_max");
  auto it = std::upper_bound(
      table.grid.begin(), table.grid.end(), T,
      [](double v, const std::pair<double, double>& n) { return v < n.first; });
  --it;  // last node with node.T <= T
  if (it->first == T) return it->second;
  QuadratureRule rule;
  rule.cell_tol = table.tol;
  return it->second + zsq_integral_cell(it->first, T, zcfg, rule);
}

}  // namespace zladder::moment
