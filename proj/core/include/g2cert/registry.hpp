#pragma once

#include "g2cert/lie_algebra.hpp"
#include "g2cert/quadruple.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace g2cert {

struct GeneratorSpec {
  std::string name;   // f0 .. f6
  Matrix7d matrix;    // standard basis
  bool in_g2;         // declared G2 membership
};

/* Expected classification-table row shipped alongside the structure data. */
struct TableRow {
  std::array<int, 6> betti;          // b_1 .. b_6
  int nilradical_dim;
  int nilpotency_degree;             // of the nilradical; 1 = abelian
  std::optional<int> aut_g2_order;   // nullopt = positive-dimensional group
  std::optional<int> aut_o7_order;
};

struct RegistryEntry {
  std::string name;
  std::vector<std::string> params;         // e.g. {"r", "t"}
  std::map<std::string, double> param_values;
  LieAlgebra algebra;                      // from the d-table
  Quadruple quadruple;                     // from the quadruple block
  TableRow table;
  bool unimodular;
  bool completely_solvable;
  std::optional<double> tr_a1_inv;         // exactness coefficient; nullopt = non-exact
  int skew_derivations;
  bool su3_coupled;
  std::vector<double> su3_symplectic_normal; // empty unless a tilted normal is declared
  std::vector<GeneratorSpec> generators;
  std::vector<std::vector<std::string>> relations; // words equal to identity; "name'" = inverse
  double cross_check_residual;             // |d-table bracket - quadruple bracket|_max
};

/* Resolution order: explicit argument, $G2CERT_REGISTRY, compiled-in source
 * location. Throws with the searched path when the directory has no entries. */
std::string registry_dir(const std::string& override_dir = "");

std::vector<std::string> registry_names(const std::string& dir = "");

/* Loads one entry, substituting parameter values (unspecified parameters
 * default to 0). Throws std::out_of_range for unknown names,
 * std::invalid_argument for unknown parameter keys or malformed files. */
RegistryEntry registry_load(const std::string& name,
                            const std::map<std::string, double>& params = {},
                            const std::string& dir = "");

} // namespace g2cert
