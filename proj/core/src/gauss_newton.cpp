#include "g2cert/gauss_newton.hpp"

#include "g2cert/linalg.hpp"

namespace g2cert {

Eigen::MatrixXd fd_jacobian(const ResidualFn& f, const Eigen::VectorXd& x,
                            double fd_step) {
  Eigen::VectorXd r0 = f(x);
  Eigen::MatrixXd j(r0.size(), x.size());
  Eigen::VectorXd xs = x;
  for (int c = 0; c < x.size(); ++c) {
    double h = fd_step * std::max(1.0, std::abs(x(c)));
    xs(c) = x(c) + h;
    j.col(c) = (f(xs) - r0) / h;
    xs(c) = x(c);
  }
  return j;
}

GNResult gauss_newton(const ResidualFn& f, Eigen::VectorXd x0,
                      const GNOptions& options) {
  GNResult result;
  Eigen::VectorXd x = std::move(x0);
  Eigen::VectorXd r = f(x);
  double lambda = options.lambda_init;
  int iter = 0;

  for (; iter < options.max_iterations; ++iter) {
    if (r.norm() < options.residual_tol) break;
    Eigen::MatrixXd j = fd_jacobian(f, x, options.fd_step);
    Eigen::MatrixXd jtj = j.transpose() * j;
    Eigen::VectorXd g = j.transpose() * r;

    bool accepted = false;
    double step_norm = 0.0;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += lambda;
      Eigen::VectorXd delta = damped.ldlt().solve(-g);
      Eigen::VectorXd x_new = x + delta;
      Eigen::VectorXd r_new = f(x_new);
      if (r_new.norm() < r.norm()) {
        x = std::move(x_new);
        r = std::move(r_new);
        step_norm = delta.norm();
        lambda = std::max(lambda / 3.0, 1e-14);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) break;
    if (step_norm < options.step_tol * std::max(1.0, x.norm()) &&
        r.norm() >= options.residual_tol)
      break;
  }

  result.x = x;
  result.residual_norm = r.norm();
  result.converged = result.residual_norm < options.residual_tol;
  result.iterations = iter;
  if (result.converged) {
    Eigen::MatrixXd j = fd_jacobian(f, x, options.fd_step);
    /* FD Jacobians carry O(fd_step) noise, so the gap detection uses a rank
     * threshold matched to that noise floor rather than options.rank_tol. */
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
    double cutoff = 1e-4 * std::max(svd.singularValues()(0), 1.0);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > cutoff) ++rank;
    result.rank_deficiency = static_cast<int>(x.size()) - rank;
  }
  return result;
}

} // namespace g2cert
