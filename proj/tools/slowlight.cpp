// Command line front end: spectrum scan, pulse simulation and magnetic
// field sweep runners over a key-value configuration file.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slowlight/slowlight.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "configuration file (key = value lines)");
  cmd->add_option("--set", args.overrides, "override a config field by dotted path, key=value")
      ->take_all();
  cmd->add_option("--out", args.out_dir, "output directory");
}

slowlight::RunConfig resolve(const CommonArgs& args, slowlight::Runner runner) {
  slowlight::RunConfig cfg;
  if (!args.config_path.empty()) slowlight::load_config_file(cfg, args.config_path);
  for (const auto& ov : args.overrides) slowlight::apply_override(cfg, ov);
  cfg.runner = runner;
  if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
  slowlight::validate_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slow-light vapor cell simulator"};
  app.require_subcommand(1);

  CommonArgs scan_args, pulse_args, sweep_args, validate_args;
  auto* scan = app.add_subcommand("scan", "continuous-wave port transmission spectra");
  auto* pulse = app.add_subcommand("pulse", "ensemble-averaged photon time traces per port");
  auto* sweep = app.add_subcommand("sweep", "delay of both circular components vs magnetic field");
  auto* validate = app.add_subcommand("validate", "check the resolved configuration and exit");
  add_common(scan, scan_args);
  add_common(pulse, pulse_args);
  add_common(sweep, sweep_args);
  add_common(validate, validate_args);

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<std::filesystem::path> written;
    if (scan->parsed()) {
      written = slowlight::run_scan(resolve(scan_args, slowlight::Runner::scan));
    } else if (pulse->parsed()) {
      written = slowlight::run_pulse(resolve(pulse_args, slowlight::Runner::pulse));
    } else if (sweep->parsed()) {
      written = slowlight::run_sweep(resolve(sweep_args, slowlight::Runner::sweep));
    } else if (validate->parsed()) {
      resolve(validate_args, slowlight::Runner::pulse);
      std::printf("configuration ok\n");
      return kExitOk;
    }
    for (const auto& p : written) std::printf("wrote %s\n", p.string().c_str());
    return kExitOk;
  } catch (const slowlight::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const slowlight::resolution_error& e) {
    std::fprintf(stderr, "numerical precondition failed: %s\n", e.what());
    return kExitNumerical;
  } catch (const slowlight::window_error& e) {
    std::fprintf(stderr, "numerical precondition failed: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
