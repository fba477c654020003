#pragma once

#include <Eigen/Dense>
#include <memory>

namespace g2cert {

/* Orthogonal frame of a small real vector space. The metric is SPD; almost
 * every computation in this library runs in an orthonormal frame (identity
 * metric), but the Hodge star supports a general SPD Gram matrix. */
class Frame {
public:
  explicit Frame(int dim);
  Frame(int dim, Eigen::MatrixXd metric);

  int dim() const { return dim_; }
  const Eigen::MatrixXd& metric() const { return metric_; }
  bool identity_metric() const { return identity_; }

  bool same_as(const Frame& other, double tol = 1e-12) const;

  static std::shared_ptr<const Frame> standard(int dim);

private:
  int dim_;
  Eigen::MatrixXd metric_;
  bool identity_;
};

using FramePtr = std::shared_ptr<const Frame>;

} // namespace g2cert
