#pragma once

#include "g2cert/gauss_newton.hpp"
#include "g2cert/quadruple.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace g2cert {

/* The three nilradical cases; case 6 splits into the two canonical A1 shapes
 * (diagonal with a <= d, or rotation block with a > 0, b != 0). */
enum class CaseId { N4, N5, N6Sym, N6Rot };
std::string case_name(CaseId id);
std::optional<CaseId> case_from_name(const std::string& name);

struct ConstraintSystem {
  CaseId id;
  int unknowns;
  /* Stacked residual: [tr A, tr B, tr C], torsion conditions
   * theta(A) tau - (1/3) w7 (and B, C analogs), the trace identity, the
   * theta-space Jacobi blocks R, S, T, then case shape constraints. */
  ResidualFn residual;
  std::function<Quadruple(const Eigen::VectorXd&)> unpack;
  std::function<Eigen::VectorXd(const Quadruple&)> pack;
  /* Strict-inequality side conditions (d > 0 etc.), applied as a post-filter. */
  std::function<bool(const Quadruple&)> admissible;
};
ConstraintSystem build_system(CaseId id);

/* Equivalence-invariant signature of a quadruple. Spectra are canonicalized
 * under the global sign flip of the g-action; the B/C mixing of U0 is absorbed
 * by |tr(B + iC)^3| and |B|^2 + |C|^2. Raw tr B^3, tr C^3 are reported for
 * inspection but are gauge-dependent, so they stay out of the key. */
struct Fingerprint {
  int nilradical_dim = 0;
  double tr_a1_abs = 0.0;
  std::vector<std::complex<double>> spec_a1;
  std::vector<std::complex<double>> spec_a;
  double norm2_a = 0.0;
  double norm2_bc = 0.0;
  double tr_bc_cubed_abs = 0.0;
  double tr_b3 = 0.0;
  double tr_c3 = 0.0;
  Eigen::VectorXd key() const;
};
Fingerprint fingerprint(const Quadruple& q);
double fingerprint_distance(const Fingerprint& a, const Fingerprint& b);

struct RegistryCandidate {
  std::string name;
  Quadruple q;
};

struct SolutionClass {
  Fingerprint fp;
  Quadruple representative;
  int hits = 0;
  double best_residual = 0.0;
  int rank_deficiency = 0;
  std::string matched; // registry name, or empty
  std::optional<std::pair<double, double>> rt_estimate;
};

struct ClassifyOutcome {
  std::vector<SolutionClass> classes; // sorted by fingerprint key
  int seeds_run = 0;
  int seeds_converged = 0;
};

/* Damped Gauss-Newton from uniform random starts in [-1,1]^unknowns; each
 * seed's start depends only on (rng_seed, seed index), so any execution order
 * produces the same outcome. Solutions below residual 1e-11 are kept,
 * deduplicated by fingerprint distance < dedup_tol, and matched against the
 * candidates. rt_builder (when given) resolves case-6 rotation solutions to
 * (r, t) parameter estimates. */
ClassifyOutcome solve_from_seeds(
    const ConstraintSystem& sys, int n_seeds, std::uint64_t rng_seed,
    const std::vector<RegistryCandidate>& candidates = {},
    const std::function<Quadruple(double, double)>& rt_builder = {},
    double dedup_tol = 1e-6, double match_tol = 1e-5);

} // namespace g2cert
