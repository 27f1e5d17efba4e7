#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "zladder/constants.hpp"
#include "zladder/errors.hpp"
#include "zladder/moment.hpp"
#include "zladder/quadrature.hpp"

namespace moment = zladder::moment;
namespace sf = zladder::special_functions;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* stem) {
  return fs::temp_directory_path() /
         (std::string(stem) + "-" + std::to_string(::getpid()) + ".txt");
}

}  // namespace

TEST_CASE("backend names parse and print") {
  CHECK(moment::parse_backend("quadrature") == moment::Backend::quadrature);
  CHECK(moment::parse_backend("asymptotic") == moment::Backend::asymptotic);
  CHECK(moment::backend_name(moment::Backend::quadrature) == "quadrature");
  CHECK(moment::backend_name(moment::Backend::asymptotic) == "asymptotic");
  CHECK_THROWS_AS(moment::parse_backend("qu"), zladder::parameter_error);
}

TEST_CASE("checkpoint table reproduces the second moment at 10") {
  // mpmath (30 digits, unit cells split at midpoints): 9.9827346379189925
  const auto table = moment::build_checkpoints(12.0, 1e-10);
  REQUIRE(table.grid.size() == 13);
  CHECK(table.grid.front().first == 0.0);
  CHECK(table.grid.front().second == 0.0);
  const double v = moment::hl_integral(10.0, moment::Backend::quadrature, table);
  CHECK(std::abs(v - 9.9827346379189925) < 2e-9);
}

TEST_CASE("checkpoint table reproduces the second moment at 100") {
  // mpmath: 295.63509905471913
  const auto table = moment::build_checkpoints(110.0, 1e-10);
  const double v = moment::hl_integral(100.0, moment::Backend::quadrature, table);
  CHECK(std::abs(v - 295.63509905471913) < 2e-8);
}

TEST_CASE("queries between checkpoints top up from the lower node") {
  const auto table = moment::build_checkpoints(15.0, 1e-10);
  const double i10 = moment::hl_integral(10.0, moment::Backend::quadrature, table);
  const double i105 = moment::hl_integral(10.5, moment::Backend::quadrature, table);
  const double direct = zladder::quadrature::integrate(
      [](double t) {
        const double z = sf::z_eval(t);
        return z * z;
      },
      10.0, 10.5, 1e-11);
  CHECK(std::abs((i105 - i10) - direct) < 1e-9);
  CHECK(i105 > i10);  // the integrand is nonnegative
}

TEST_CASE("cell integrals are additive and straddle the evaluator switch") {
  const auto whole = moment::zsq_integral_cell(100.0, 101.0, {}, {});
  const auto a = moment::zsq_integral_cell(100.0, 100.5, {}, {});
  const auto b = moment::zsq_integral_cell(100.5, 101.0, {}, {});
  CHECK(std::abs(whole - (a + b)) < 1e-10);
  const auto sw = moment::zsq_integral_cell(199.5, 200.5, {}, {});
  const auto direct = zladder::quadrature::integrate(
      [](double t) {
        const double z = sf::z_eval(t);
        return z * z;
      },
      199.5, 200.5, 1e-10);
  CHECK(std::abs(sw - direct) < 1e-8);
}

TEST_CASE("extending a table matches building it in one pass") {
  auto grown = moment::build_checkpoints(30.0, 1e-10);
  moment::extend_checkpoints(grown, 60.0);
  const auto fresh = moment::build_checkpoints(60.0, 1e-10);
  REQUIRE(grown.grid.size() == fresh.grid.size());
  for (std::size_t i = 0; i < fresh.grid.size(); ++i) {
    CHECK(grown.grid[i].first == fresh.grid[i].first);
    // extension restarts the compensated accumulator at the stored value,
    // so the tails may differ in the final ulp
    const double f = fresh.grid[i].second;
    CHECK(std::abs(grown.grid[i].second - f) <= 1e-14 * std::max(1.0, std::abs(f)));
  }
  // no-op when already covered
  const auto before = grown.grid.size();
  moment::extend_checkpoints(grown, 50.0);
  CHECK(grown.grid.size() == before);
}

TEST_CASE("tables round-trip through their file format exactly") {
  const auto table = moment::build_checkpoints(25.0, 1e-10);
  const auto file = temp_file("zladder-table-roundtrip");
  moment::save_table(table, file);
  const auto back = moment::load_table(file);
  CHECK(back.version == table.version);
  CHECK(back.tol == table.tol);
  CHECK(back.panel_width_rule == table.panel_width_rule);
  REQUIRE(back.grid.size() == table.grid.size());
  for (std::size_t i = 0; i < table.grid.size(); ++i) {
    CHECK(back.grid[i].first == table.grid[i].first);
    CHECK(back.grid[i].second == table.grid[i].second);
  }
  fs::remove(file);
}

TEST_CASE("malformed table files are rejected") {
  const auto file = temp_file("zladder-table-bad");
  {
    std::ofstream f(file);
    f << "not a checkpoint file\n0,0\n";
  }
  CHECK_THROWS_AS(moment::load_table(file), zladder::io_error);
  {
    std::ofstream f(file);
    f << "ZLADDER-CKPT v1\n# tol 1e-10\n1,3.5\n2,4.5\n";  // missing (0,0)
  }
  CHECK_THROWS_AS(moment::load_table(file), zladder::io_error);
  fs::remove(file);
  CHECK_THROWS_AS(moment::load_table(file), zladder::io_error);  // absent
}

TEST_CASE("table validation enforces monotone growth from the origin") {
  moment::MomentCheckpointTable t;
  t.grid = {{0.0, 0.0}, {1.0, 2.0}, {1.0, 3.0}};
  CHECK_THROWS_AS(t.validate(), zladder::io_error);
  t.grid = {{1.0, 2.0}};
  CHECK_THROWS_AS(t.validate(), zladder::io_error);
  t.grid = {{0.0, 0.0}, {1.0, 4.5}, {2.0, 5.0}};
  CHECK_NOTHROW(t.validate());
}

TEST_CASE("asymptotic backend is the closed-form main term") {
  const double g = zladder::kEulerGamma;
  const double T = 1000.0;
  const double expected =
      T * std::log(T) + (2.0 * g - 1.0 - zladder::kLnTwoPi) * T;
  CHECK(moment::hl_asymptotic(T) == expected);
  CHECK(moment::hl_asymptotic(0.0, g, 3.5) == 3.5);
  const double v = moment::hl_integral(T, moment::Backend::asymptotic, {});
  CHECK(v == expected);
}

TEST_CASE("quadrature queries outside table coverage fail with guidance") {
  const auto table = moment::build_checkpoints(20.0, 1e-10);
  try {
    moment::hl_integral(200.0, moment::Backend::quadrature, table);
    FAIL("expected resource_error");
  } catch (const zladder::resource_error& e) {
    CHECK(std::string(e.what()).find("rebuild the cache") != std::string::npos);
  }
  CHECK_THROWS_AS(
      moment::hl_integral(-1.0, moment::Backend::quadrature, table),
      zladder::domain_error);
}
