#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "helpers.hpp"
#include "zladder/experiments.hpp"
#include "zladder/report.hpp"

using namespace zladder;

namespace {

const experiments::TheoremRun& sample_run() {
  static const experiments::TheoremRun run = [] {
    euler_kernel::EulerKernel kr{2.0, 1.0};
    return experiments::run_theorem(1592, 1.0, 1, kr, zlt::quad_model());
  }();
  return run;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::string line;
  std::istringstream is(text);
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("theorem json roundtrips every field exactly") {
  const auto& run = sample_run();
  const std::string text = report::theorem_to_json(run);
  const auto back = report::theorem_from_json(text);

  CHECK(back.L == run.L);
  CHECK(back.U == run.U);
  CHECK(back.k == run.k);
  CHECK(back.a == run.a);
  CHECK(back.b == run.b);
  CHECK(back.backend == run.backend);
  CHECK(back.tol == run.tol);
  CHECK(back.report.lhs == run.report.lhs);
  CHECK(back.report.rhs_asym == run.report.rhs_asym);
  CHECK(back.report.rhs_exact == run.report.rhs_exact);
  CHECK(back.report.signal == run.report.signal);
  CHECK(back.report.noise == run.report.noise);
  CHECK(back.report.error_residual == run.report.error_residual);
  CHECK(back.report.d == run.report.d);
  CHECK(back.report.e == run.report.e);
  REQUIRE(back.report.alphas == run.report.alphas);
  REQUIRE(back.report.betas == run.report.betas);
  REQUIRE(back.report.spacing_ratios == run.report.spacing_ratios);
  CHECK(back.chain.base.lo == run.chain.base.lo);
  CHECK(back.chain.base.hi == run.chain.base.hi);
  REQUIRE(back.chain.levels.size() == run.chain.levels.size());
  for (std::size_t r = 0; r < run.chain.levels.size(); ++r) {
    CHECK(back.chain.levels[r].lo == run.chain.levels[r].lo);
    CHECK(back.chain.levels[r].hi == run.chain.levels[r].hi);
  }
  REQUIRE(back.qsystem.alpha_sums == run.qsystem.alpha_sums);
  REQUIRE(back.qsystem.beta_sums == run.qsystem.beta_sums);
  REQUIRE(back.qsystem.alpha_remainders == run.qsystem.alpha_remainders);
  REQUIRE(back.qsystem.beta_remainders == run.qsystem.beta_remainders);
  CHECK(back.qsystem.product == run.qsystem.product);
  CHECK(back.qsystem.precision_warning == run.qsystem.precision_warning);
  CHECK(back.elapsed_s == run.elapsed_s);
  CHECK(back.extraction.d == run.extraction.d);
  CHECK(back.extraction.e == run.extraction.e);
  REQUIRE(back.extraction.alphas == run.extraction.alphas);
  REQUIRE(back.extraction.betas == run.extraction.betas);
}

TEST_CASE("theorem json carries the documented keys") {
  const auto j = nlohmann::json::parse(report::theorem_to_json(sample_run()));
  CHECK(j.at("method").get<std::string>() == "mvt-chain-reconstruction");
  for (const char* key :
       {"inputs", "lhs", "rhs_asym", "rhs_exact", "signal", "noise",
        "error_residual", "alphas", "betas", "d", "e", "spacing_ratios",
        "chain", "qsystem", "elapsed_s"})
    CHECK_MESSAGE(j.contains(key), key);
  const auto& in = j.at("inputs");
  for (const char* key : {"L", "U", "k", "a", "b", "backend", "tol"})
    CHECK_MESSAGE(in.contains(key), key);
  CHECK(j.at("qsystem").contains("product"));
  CHECK(j.at("chain").at("levels").is_array());
}

TEST_CASE("theorem csv header matches the row and values roundtrip") {
  const auto& run = sample_run();
  const auto lines = lines_of(report::render_theorem(run, "csv"));
  REQUIRE(lines.size() == 2);
  const auto head = split_csv(lines[0]);
  const auto row = split_csv(lines[1]);
  REQUIRE(head.size() == row.size());

  const std::vector<std::string> prefix = {
      "L",   "U",        "k",         "a",      "b",     "backend",
      "lhs", "rhs_asym", "rhs_exact", "signal", "noise", "error_residual",
      "d",   "e"};
  REQUIRE(head.size() >= prefix.size());
  for (std::size_t i = 0; i < prefix.size(); ++i) CHECK(head[i] == prefix[i]);

  // k = 1: two alphas, one beta, one spacing ratio.
  REQUIRE(head.size() == prefix.size() + 4);
  CHECK(head[14] == "alpha_0");
  CHECK(head[15] == "alpha_1");
  CHECK(head[16] == "beta_1");
  CHECK(head[17] == "spacing_0");

  CHECK(row[0] == "1592");
  CHECK(row[5] == run.backend);
  CHECK(std::strtod(row[6].c_str(), nullptr) == run.report.lhs);
  CHECK(std::strtod(row[8].c_str(), nullptr) == run.report.rhs_exact);
  CHECK(std::strtod(row[14].c_str(), nullptr) == run.report.alphas[0]);
  CHECK(std::strtod(row[16].c_str(), nullptr) == run.report.betas[0]);
}

TEST_CASE("theorem table render lists the headline fields") {
  const std::string text = report::render_theorem(sample_run(), "table");
  CHECK(text.find("run: L=1592") != std::string::npos);
  for (const char* name : {"lhs", "rhs_asym", "rhs_exact", "signal", "noise",
                           "error_residual", "alpha_0", "beta_1",
                           "qsystem_product", "elapsed_s"})
    CHECK_MESSAGE(text.find(name) != std::string::npos, name);
}

TEST_CASE("render rejects unknown formats") {
  CHECK_THROWS_WITH_AS(report::render_theorem(sample_run(), "xml"),
                       "format must be json, csv, or table", parameter_error);
  CHECK_THROWS_AS(report::render_chain(sample_run().chain, "yaml"),
                  parameter_error);
}

TEST_CASE("malformed theorem json is rejected") {
  CHECK_THROWS_AS(report::theorem_from_json("not json {"), io_error);
  CHECK_THROWS_AS(report::theorem_from_json("{}"), io_error);
  try {
    report::theorem_from_json("{\"inputs\": {}}");
    FAIL("expected io_error");
  } catch (const io_error& e) {
    CHECK(std::string(e.what()).find("schema mismatch") != std::string::npos);
  }
}

TEST_CASE("decomposition renders in all three formats") {
  experiments::Decomposition dec{0.75, -0.0625, 3.25e-7};
  const auto j = nlohmann::json::parse(report::render_decomposition(dec, "json"));
  CHECK(j.at("signal").get<double>() == dec.signal);
  CHECK(j.at("noise").get<double>() == dec.noise);
  CHECK(j.at("error_residual").get<double>() == dec.error_residual);

  const auto lines = lines_of(report::render_decomposition(dec, "csv"));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "signal,noise,error_residual");
  const auto row = split_csv(lines[1]);
  REQUIRE(row.size() == 3);
  CHECK(std::strtod(row[0].c_str(), nullptr) == dec.signal);
  CHECK(std::strtod(row[1].c_str(), nullptr) == dec.noise);
  CHECK(std::strtod(row[2].c_str(), nullptr) == dec.error_residual);

  const std::string table = report::render_decomposition(dec, "table");
  CHECK(table.find("signal") != std::string::npos);
  CHECK(table.find("error_residual") != std::string::npos);
}

TEST_CASE("chain render shows the base and every level") {
  const auto& chain = sample_run().chain;
  const auto lines = lines_of(report::render_chain(chain, "csv"));
  REQUIRE(lines.size() == 2 + chain.levels.size());
  CHECK(lines[0] == "level,lo,hi");
  const auto base_row = split_csv(lines[1]);
  REQUIRE(base_row.size() == 3);
  CHECK(base_row[0] == "0");
  CHECK(std::strtod(base_row[1].c_str(), nullptr) == chain.base.lo);

  const auto j = nlohmann::json::parse(report::render_chain(chain, "json"));
  CHECK(j.at("L").get<long>() == 1592);
  CHECK(j.at("levels").size() == chain.levels.size());

  const std::string table = report::render_chain(chain, "table");
  CHECK(table.find("base") != std::string::npos);
  CHECK(table.find("seg^1") != std::string::npos);
}

TEST_CASE("scan render carries the grid and tuple matrix") {
  experiments::DistinctScan scan;
  scan.U0 = 1.0;
  scan.delta = 0.2;
  scan.grid = {0.9, 1.1};
  scan.tuples = {{10001.0, 10501.0, 11002.0}, {10002.5, 10503.5, 11004.5}};
  scan.min_pairwise_gap = 1.5;
  scan.min_component_gap = 1.5;

  const auto lines = lines_of(report::render_scan(scan, "csv"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "U,x_0,x_1,x_2");
  CHECK(split_csv(lines[1]).size() == 4);
  CHECK(std::strtod(split_csv(lines[2])[3].c_str(), nullptr) == 11004.5);

  const auto j = nlohmann::json::parse(report::render_scan(scan, "json"));
  CHECK(j.at("tuples").size() == 2);
  CHECK(j.at("min_pairwise_gap").get<double>() == 1.5);

  const std::string table = report::render_scan(scan, "table");
  CHECK(table.find("U=0.900000000:") != std::string::npos);
  CHECK(table.find("min_component_gap") != std::string::npos);
}

TEST_CASE("complement render lists one row per height") {
  std::vector<experiments::ComplementRow> rows(2);
  rows[0] = {1.0e4, 9475.8, 524.2, 1229.0, 0.91, 0.9995};
  rows[1] = {1.0e6, 966830.0, 33170.0, 78498.0, 0.94, 0.9998};

  const auto lines = lines_of(report::render_complement(rows, "csv"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "T,phi1,gap,pi_exact,ratio,closure");
  CHECK(std::strtod(split_csv(lines[1])[3].c_str(), nullptr) == 1229.0);

  const auto j = nlohmann::json::parse(report::render_complement(rows, "json"));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[1].at("pi_exact").get<double>() == 78498.0);

  const std::string table = report::render_complement(rows, "table");
  CHECK(table.find("ratio") != std::string::npos);
  CHECK(lines_of(table).size() == 3);
}
