#include "g2cert/commands.hpp"
#include "g2cert/version.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"verification and classification toolkit for left-invariant "
               "extremally Ricci-pinched G2-structures"};
  app.set_version_flag("--version", std::string(g2cert::kVersion));
  app.require_subcommand(1);

  g2cert::CliOptions opt;
  std::string params_spec;
  std::string checks_spec;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", opt.tol, "residual tolerance")->capture_default_str();
    cmd->add_option("--rank-tol", opt.rank_tol, "SVD rank threshold")->capture_default_str();
    cmd->add_option("--params", params_spec, "parameter values, e.g. \"r=1,t=-2\"");
    cmd->add_option("--registry", opt.registry,
                    "registry directory (default: $G2CERT_REGISTRY or built-in)");
    cmd->add_flag("--json", opt.json, "structured output");
    cmd->add_flag("--timing", opt.timing, "print wall time to stderr");
  };
  auto add_seeds = [&](CLI::App* cmd) {
    cmd->add_option("--seeds", opt.seeds, "number of random starts");
    cmd->add_option("--rng-seed", opt.rng_seed, "RNG seed")->capture_default_str();
  };

  CLI::App* list = app.add_subcommand("list", "list registry entries");
  add_common(list);

  CLI::App* verify = app.add_subcommand("verify", "run checks on a registry entry");
  verify->add_option("entry", opt.entry, "registry entry name")->required();
  verify->add_option("--checks", checks_spec,
                     "comma-separated subset of check ids (default: all)");
  add_common(verify);

  CLI::App* table2 = app.add_subcommand(
      "table2", "computed vs declared classification table (Betti, nilradical, symmetries)");
  add_common(table2);
  add_seeds(table2);

  CLI::App* classify = app.add_subcommand(
      "classify", "solve a case constraint system from random seeds and bucket solutions");
  classify->add_option("--case", opt.case_id, "nilradical case: 4, 5, 6 or 6rot")
      ->capture_default_str();
  add_common(classify);
  add_seeds(classify);

  CLI::App* symmetries =
      app.add_subcommand("symmetries", "enumerate the finite symmetry group of an entry");
  symmetries->add_option("entry", opt.entry, "registry entry name")->required();
  symmetries->add_option("--group", opt.group, "g2 or o7")->capture_default_str();
  add_common(symmetries);
  add_seeds(symmetries);

  CLI::App* theta = app.add_subcommand("theta", "print the theta matrices of an entry");
  theta->add_option("entry", opt.entry, "registry entry name")->required();
  add_common(theta);

  CLI11_PARSE(app, argc, argv);

  for (CLI::App* cmd : {list, verify, table2, classify, symmetries, theta})
    if (cmd->parsed()) opt.command = cmd->get_name();

  try {
    opt.params = g2cert::parse_params(params_spec);
  } catch (const std::exception& ex) {
    std::cerr << ex.what() << '\n';
    return 2;
  }
  if (!checks_spec.empty()) {
    std::string cur;
    for (char ch : checks_spec + ",") {
      if (ch == ',') {
        if (!cur.empty()) opt.checks.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
  }

  return g2cert::run_command(opt, std::cout, std::cerr);
}
