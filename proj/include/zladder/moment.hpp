#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "zladder/constants.hpp"
#include "zladder/special_functions.hpp"

namespace zladder::moment {

enum class Backend { quadrature, asymptotic };

Backend parse_backend(const std::string& name);
std::string backend_name(Backend b);

// Panel policy shared by the table builder and the query top-up: panels no
// wider than panel_fraction of the local zero spacing 2*pi/ln(T/2pi), with a
// fixed-order Gauss-Legendre rule per panel refined adaptively to cell_tol.
struct QuadratureRule {
  double panel_fraction = 0.25;
  int gl_order = 16;
  double cell_tol = 1e-10;
};

struct MomentCheckpointTable {
  std::string version = "ZLADDER-CKPT v1";
  std::vector<std::pair<double, double>> grid;  // (T, I(T))
  std::string panel_width_rule;
  double tol = 1e-10;

  double t_max() const { return grid.empty() ? 0.0 : grid.back().first; }
  void validate() const;  // strict monotonicity in both coordinates, (0,0) first
};

// Integral of z_eval(t)^2 over [a, b] under the panel policy; splits at the
// evaluator's t_switch when it falls inside (a, b).
double zsq_integral_cell(double a, double b,
                         const special_functions::RSEvalConfig& zcfg,
                         const QuadratureRule& rule);

MomentCheckpointTable build_checkpoints(
    double T_max, double tol,
    const special_functions::RSEvalConfig& zcfg = {});

// Continues an existing table up to T_max (no-op if already covered).
void extend_checkpoints(MomentCheckpointTable& table, double T_max,
                        const special_functions::RSEvalConfig& zcfg = {});

void save_table(const MomentCheckpointTable& table,
                const std::filesystem::path& file);
MomentCheckpointTable load_table(const std::filesystem::path& file);

// T ln T + (2c - 1 - ln 2pi) T + c0
double hl_asymptotic(double T, double c = kEulerGamma, double c0 = 0.0);

// Second-moment integral of z_eval^2 from 0 to T. The quadrature backend
// resolves T against the checkpoint table plus a local top-up; the
// asymptotic backend is closed-form.
double hl_integral(double T, Backend backend,
                   const MomentCheckpointTable& table,
                   const special_functions::RSEvalConfig& zcfg = {},
                   double c = kEulerGamma, double c0 = 0.0);

}  // namespace zladder::moment
