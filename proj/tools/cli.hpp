// Batch front end for the cascade library: presets, sweeps, CSV/JSON emission.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cascade/dynamics.hpp"

namespace cascade::cli {

struct RunConfig {
  SystemParams params;
  double t_max = 20.0;
  double dt = 1e-3;
  int sample_every = 10;
  int n_bins = 400;
  long mc_samples = 0;
  std::uint64_t seed = 42;
  std::string out = "-";
  std::string format = "csv";
  bool verify = false;
};

struct SweepSpec {
  std::string param; // one of omega1 omega2 delta1 delta2 gamma2 gamma3
  double from = 0.0;
  double to = 1.0;
  int steps = 20;
};

// Throws std::invalid_argument on bad controls or parameters.
void validate_config(const RunConfig& cfg);

// Each command writes its complete output to the stream. std::invalid_argument
// marks validation failures (exit 1), std::runtime_error numerical failures
// (exit 2).
void cmd_evolve(const RunConfig& cfg, std::ostream& os);
void cmd_steady(const RunConfig& cfg, std::ostream& os);
void cmd_tomography(const RunConfig& cfg, std::ostream& os);
void cmd_pdf(const RunConfig& cfg, std::ostream& os);
void cmd_sweep(const RunConfig& cfg, const SweepSpec& sweep, std::ostream& os);

// Full argv entry point used by main(); returns the process exit code.
int run_cli(int argc, const char* const* argv);

} // namespace cascade::cli
