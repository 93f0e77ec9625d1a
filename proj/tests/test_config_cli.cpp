#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "slowlight/config.hpp"

using namespace slowlight;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  const auto dir = fs::temp_directory_path() / "slowlight_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto path = work_dir() / name;
  std::ofstream out(path);
  out << text;
  return path;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SLOWLIGHT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

struct Csv {
  std::vector<std::string> header_lines;
  std::vector<std::vector<double>> rows;
};

Csv read_csv(const fs::path& path) {
  Csv csv;
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') { csv.header_lines.push_back(line); continue; }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      row.push_back(std::strtod(cell.c_str(), nullptr));  // subnormals must not throw
    csv.rows.push_back(row);
  }
  return csv;
}

// keeps the fast small-grid setup in one place
const std::string kSmallGrid =
    "grid.start_hz = -20e9\n"
    "grid.step_hz = 9765625\n"
    "grid.count = 4096\n";

}  // namespace

TEST_CASE("settings land on the addressed fields") {
  RunConfig cfg;
  apply_setting(cfg, "vapor.temperature_k", "353.15");
  apply_setting(cfg, "vapor.b_field_t", "-0.008");
  apply_setting(cfg, "grid.count", "8192");
  apply_setting(cfg, "ensemble.samples", "77");
  apply_setting(cfg, "geometry", "linear_pbs");
  apply_setting(cfg, "sweep.ensemble_check", "true");
  apply_setting(cfg, "vapor.density_override_m3", "1e19");
  CHECK(cfg.vapor.temperature == 353.15);
  CHECK(cfg.vapor.b_field == -0.008);
  CHECK(cfg.grid.count == 8192);
  CHECK(cfg.ensemble.samples == 77);
  CHECK(cfg.geometry == Geometry::linear_pbs);
  CHECK(cfg.sweep.ensemble_check);
  REQUIRE(cfg.vapor.density_override.has_value());
  CHECK(*cfg.vapor.density_override == 1e19);
  apply_setting(cfg, "vapor.density_override_m3", "none");
  CHECK(!cfg.vapor.density_override.has_value());
}

TEST_CASE("bad settings report the offending key") {
  RunConfig cfg;
  try {
    apply_setting(cfg, "vapor.temperature_k", "warm");
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(e.path == "vapor.temperature_k");
  }
  try {
    apply_setting(cfg, "no.such.key", "1");
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(e.path == "no.such.key");
  }
  CHECK_THROWS_AS(apply_setting(cfg, "ensemble.samples", "-3"), config_error);
  CHECK_THROWS_AS(apply_setting(cfg, "tcspc.enabled", "maybe"), config_error);
  CHECK_THROWS_AS(apply_setting(cfg, "geometry", "circular"), config_error);
  CHECK_THROWS_AS(apply_override(cfg, "missing_equals"), config_error);
}

TEST_CASE("validation pins each failure to its field") {
  RunConfig cfg;
  cfg.vapor.temperature = -1.0;
  try {
    validate_config(cfg);
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(e.path == "vapor.temperature_k");
  }
  cfg = RunConfig{};
  cfg.grid.count = 1000;
  try {
    validate_config(cfg);
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(e.path == "grid.count");
  }
  cfg = RunConfig{};
  cfg.vapor.density_override = -1.0;
  CHECK_THROWS_AS(validate_config(cfg), config_error);
  cfg.vapor.density_override = 0.0;  // empty cell is a legal limit
  validate_config(cfg);
  cfg = RunConfig{};
  cfg.lines_file = "/nonexistent/lines.txt";
  CHECK_THROWS_AS(validate_config(cfg), config_error);
}

TEST_CASE("config files support comments and blank lines") {
  const auto path = write_file("basic.cfg",
                               "# heating run\n"
                               "vapor.temperature_k = 353.15\n"
                               "\n"
                               "ensemble.seed = 42   # trailing comment\n");
  RunConfig cfg;
  load_config_file(cfg, path.string());
  CHECK(cfg.vapor.temperature == 353.15);
  CHECK(cfg.ensemble.seed == 42);
  const auto bad = write_file("bad.cfg", "vapor.temperature_k 353\n");
  RunConfig cfg2;
  CHECK_THROWS_AS(load_config_file(cfg2, bad.string()), config_error);
  RunConfig cfg3;
  CHECK_THROWS_AS(load_config_file(cfg3, "/nonexistent.cfg"), config_error);
}

TEST_CASE("the configuration echo is a fixed point") {
  RunConfig cfg;
  apply_setting(cfg, "vapor.temperature_k", "353.15");
  apply_setting(cfg, "vapor.density_override_m3", "8.5e18");
  apply_setting(cfg, "ensemble.jitter_fwhm_hz", "2.7e9");
  apply_setting(cfg, "runner", "sweep");
  const auto echo = config_echo(cfg);
  RunConfig cfg2;
  for (const auto& [k, v] : echo) apply_setting(cfg2, k, v);
  CHECK(config_echo(cfg2) == echo);
}

TEST_CASE("cli validates configurations and reports config failures as exit 2") {
  const auto good = write_file("good.cfg", kSmallGrid);
  CHECK(run_cli("validate --config " + good.string()) == 0);
  CHECK(run_cli("validate --config " + good.string() +
                " --set vapor.temperature_k=-5") == 2);
  CHECK(run_cli("validate --config " + good.string() + " --set no.such.key=1") == 2);
  CHECK(run_cli("validate --config /nonexistent.cfg") == 2);
}

TEST_CASE("cli scan writes complementary ports at zero field") {
  const auto cfgfile = write_file("scan.cfg", kSmallGrid);
  const auto out = work_dir() / "scan_out";
  fs::remove_all(out);
  REQUIRE(run_cli("scan --config " + cfgfile.string() + " --out " + out.string()) == 0);
  const auto csv = read_csv(out / "scan_ports.csv");
  REQUIRE(csv.rows.size() == 4096);
  for (const auto& row : csv.rows) {
    REQUIRE(row.size() == 4);
    CHECK(std::abs(row[1] - row[2]) < 1e-12);             // B = 0: ports identical
    CHECK(std::abs(row[1] + row[2] - row[3]) < 1e-9);     // ports sum to the envelope
  }
  CHECK(fs::exists(out / "index_sigma_plus.csv"));
  CHECK(fs::exists(out / "index_sigma_minus.csv"));
  // header echoes the resolved configuration for reproducibility
  bool has_temp = false;
  for (const auto& h : csv.header_lines)
    if (h.find("vapor.temperature_k") != std::string::npos) has_temp = true;
  CHECK(has_temp);
}

TEST_CASE("cli scan of an empty cell transmits everything") {
  const auto cfgfile = write_file("scan_empty.cfg", kSmallGrid);
  const auto out = work_dir() / "scan_empty_out";
  fs::remove_all(out);
  REQUIRE(run_cli("scan --config " + cfgfile.string() +
                  " --set vapor.density_override_m3=0 --out " + out.string()) == 0);
  const auto csv = read_csv(out / "scan_ports.csv");
  for (const auto& row : csv.rows) {
    CHECK(row[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row[1] + row[2] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("cli pulse reports the slow-light delay") {
  const auto cfgfile = write_file("pulse.cfg", kSmallGrid + "ensemble.samples = 4\n");
  const auto out = work_dir() / "pulse_out";
  fs::remove_all(out);
  REQUIRE(run_cli("pulse --config " + cfgfile.string() + " --out " + out.string()) == 0);
  CHECK(fs::exists(out / "pulse_ports.csv"));
  std::ifstream summary(out / "pulse_summary.txt");
  REQUIRE(summary.good());
  double delay = 0.0;
  bool found = false;
  std::string line;
  while (std::getline(summary, line)) {
    const std::string key = "centroid_delay_h_s = ";
    if (line.rfind(key, 0) == 0) {
      delay = std::stod(line.substr(key.size()));
      found = true;
    }
  }
  REQUIRE(found);
  CHECK(delay > 15e-9);
  CHECK(delay < 35e-9);
}

TEST_CASE("cli pulse synthesizes detector histograms on request") {
  const auto cfgfile = write_file("pulse_tcspc.cfg", kSmallGrid +
                                  "ensemble.samples = 2\n"
                                  "tcspc.enabled = true\n"
                                  "tcspc.total_counts = 100000\n");
  const auto out = work_dir() / "pulse_tcspc_out";
  fs::remove_all(out);
  REQUIRE(run_cli("pulse --config " + cfgfile.string() + " --out " + out.string()) == 0);
  const auto csv = read_csv(out / "tcspc_ports.csv");
  REQUIRE(!csv.rows.empty());
  double total = 0.0;
  for (const auto& row : csv.rows) total += row[1];
  CHECK(total > 90000);
  CHECK(total < 110000);
}

TEST_CASE("cli sweep emits an antisymmetric delay curve") {
  const auto cfgfile = write_file("sweep.cfg", kSmallGrid + "sweep.steps = 5\n");
  const auto out = work_dir() / "sweep_out";
  fs::remove_all(out);
  REQUIRE(run_cli("sweep --config " + cfgfile.string() + " --out " + out.string()) == 0);
  const auto csv = read_csv(out / "sweep_delays.csv");
  REQUIRE(csv.rows.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& a = csv.rows[i];
    const auto& b = csv.rows[4 - i];
    CHECK(a[0] == doctest::Approx(-b[0]));
    CHECK(a[1] == doctest::Approx(b[2]).epsilon(1e-9));  // sigma+(B) = sigma-(-B)
  }
}

TEST_CASE("cli reports numerical preconditions as exit 3") {
  const auto cfgfile = write_file("coarse.cfg",
                                  "grid.start_hz = -40e9\n"
                                  "grid.step_hz = 156250000\n"
                                  "grid.count = 512\n"
                                  "ensemble.samples = 2\n");
  CHECK(run_cli("pulse --config " + cfgfile.string() + " --out " +
                (work_dir() / "coarse_out").string()) == 3);
}
