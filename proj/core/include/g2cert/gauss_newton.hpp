#pragma once

#include <Eigen/Dense>
#include <functional>

namespace g2cert {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct GNOptions {
  int max_iterations = 300;
  double residual_tol = 1e-11; // converged when |r| drops below this
  double step_tol = 3e-14;     // stalled when the accepted step is below this
  double lambda_init = 1e-3;   // Levenberg-Marquardt damping
  double fd_step = 1e-7;       // forward-difference Jacobian step
  double rank_tol = 1e-7;      // used for the deficiency count at the solution
};

struct GNResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  /* unknowns - rank of the Jacobian at the final point; > 0 flags a solution
   * manifold (continuous family or gauge direction). */
  int rank_deficiency = 0;
};

Eigen::MatrixXd fd_jacobian(const ResidualFn& f, const Eigen::VectorXd& x,
                            double fd_step);

/* Damped Gauss-Newton (Levenberg-Marquardt) minimizing |f(x)|^2. Deterministic:
 * the trajectory depends only on x0 and the options. */
GNResult gauss_newton(const ResidualFn& f, Eigen::VectorXd x0,
                      const GNOptions& options = {});

} // namespace g2cert
