#pragma once

#include "g2cert/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace g2cert {

struct CliOptions {
  std::string command;             // list | verify | table2 | classify | symmetries | theta
  std::string entry;               // registry entry (verify / symmetries / theta)
  std::vector<std::string> checks; // verify subset; empty = all applicable
  std::string case_id = "5";       // classify: 4 | 5 | 6 | 6rot
  std::string group = "g2";        // symmetries: g2 | o7
  double tol = 1e-9;
  double rank_tol = 1e-7;
  int seeds = -1;                  // -1 = per-command default (classify 200, symmetries 32)
  std::uint64_t rng_seed = 1;
  bool json = false;
  bool timing = false;
  std::map<std::string, double> params;
  std::string registry;            // registry directory override
};

/* "r=1,t=-2" -> {{"r",1},{"t",-2}}; throws std::invalid_argument on bad syntax. */
std::map<std::string, double> parse_params(const std::string& s);

const std::vector<std::string>& verify_check_ids();

/* Exit code: 0 = all executed checks passed, 1 = a check failed,
 * 2 = usage or data error (message on err). */
int run_command(const CliOptions& opt, std::ostream& out, std::ostream& err);

} // namespace g2cert
