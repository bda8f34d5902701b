#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qpc/cocycle.hpp"

namespace qpc::cli {

/// Exit codes of the front-end.
enum Exit : int { kOk = 0, kConfigError = 2, kNumericalError = 3, kWrongStratum = 4 };

struct RunConfig {
  std::string command;
  std::string potential = "amo:2";  ///< amo:<lambda>, zero, cos:<k>:<amp>, or a mode file
  std::string map = "schrodinger";  ///< schrodinger, rotation:<k>, identity, diagonal:<x>
  std::string alpha = "golden";     ///< golden, a decimal, or p/q

  double E = 0.0;
  double E_min = -6.0;
  double E_max = 6.0;
  int E_count = 25;
  bool E_in_spectrum = false;  ///< move E to the nearest confirmed truncation eigenvalue

  double eps_min = 0.0;
  double eps_max = 0.3;
  int n_pts = 13;

  int grid = 4096;  ///< M, quadrature points
  int N = 4096;     ///< truncation size for spectral lookups
  long q_max = 1000;
  int convergents = 3;
  bool refine = false;

  double h0 = 0.02;
  double agree_tol = 0.02;
  double L_threshold = 1e-3;
  double stratum_delta = 0.1;

  int j = 1;
  double eps = 0.1;
  int K = 2;
  int split_grid = 256;

  std::string output = "-";  ///< CSV path, "-" for standard output
  std::string svg;           ///< profile plot path
  int threads = 0;           ///< 0 keeps the OpenMP default
};

/// Parses `command [--config file] [--key value ...]`. Throws CLI::Error.
RunConfig parse_config(const std::vector<std::string>& args);

TorusFunction make_potential(const std::string& spec);
Frequency make_frequency(const std::string& spec);

std::string cmd_profile(const RunConfig& cfg, std::string* svg);
std::string cmd_classify(const RunConfig& cfg);
std::string cmd_gradient(const RunConfig& cfg);

/// Whole front-end: parses, dispatches, writes files, maps failures to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpc::cli
