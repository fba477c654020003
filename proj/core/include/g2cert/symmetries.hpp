#pragma once

#include "g2cert/lie_algebra.hpp"
#include "g2cert/quadruple.hpp"
#include "g2cert/registry.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace g2cert {

enum class SymmetryGroup { G2, O7 };
std::string symmetry_group_name(SymmetryGroup g);

struct SymmetryEnumeration {
  SymmetryGroup group;
  std::vector<Matrix7d> elements; // closed under multiplication, contains I
  std::vector<int> orders;        // parallel to elements; 0 if order > 48
  std::map<int, int> order_histogram;
  int seeds_converged = 0;
  double max_defect = 0.0; // worst automorphism/orthogonality/invariance residual
};

/* Finds orthogonal (resp. phi-preserving) automorphisms of l by damped
 * Gauss-Newton from random orthogonal starts, then closes the set under
 * multiplication. Only meaningful when the symmetry group is finite: throws
 * std::runtime_error("positive-dimensional symmetry group") when l has
 * nonzero skew-symmetric derivations, and "closure diverged" past 1000
 * elements. Deterministic in (n_seeds, rng_seed). */
SymmetryEnumeration enumerate_symmetries(const LieAlgebra& l, SymmetryGroup group,
                                         int n_seeds, std::uint64_t rng_seed);

struct GeneratorCheck {
  std::string name;
  double automorphism_residual = 0.0;
  double orthogonality_residual = 0.0;
  double g2_residual = 0.0;
  bool in_g2_declared = false;
  bool in_g2_computed = false;
  int order = 0;
  bool pass = false;
};

struct RelationCheck {
  std::string word; // e.g. "f3 f5 f3 f5"; a trailing ' marks an inverse
  double residual = 0.0;
  bool pass = false;
};

struct GeneratorVerification {
  std::vector<GeneratorCheck> generators;
  std::vector<RelationCheck> relations;
  bool all_pass = true;
};

/* Checks each tabulated generator of entry against the entry's algebra:
 * automorphism defect, orthogonality, phi-invariance versus the declared
 * flag, and the listed relation words (products that must equal I). */
GeneratorVerification verify_generators(const RegistryEntry& entry, double tol = 1e-9);

} // namespace g2cert
