#include "g2cert/frame.hpp"

#include <array>
#include <stdexcept>

namespace g2cert {

namespace {

bool is_identity(const Eigen::MatrixXd& m, double tol) {
  return (m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

} // namespace

Frame::Frame(int dim) : dim_(dim), metric_(Eigen::MatrixXd::Identity(dim, dim)), identity_(true) {
  if (dim < 1 || dim > 31) throw std::invalid_argument("frame dimension out of range");
}

Frame::Frame(int dim, Eigen::MatrixXd metric) : dim_(dim), metric_(std::move(metric)) {
  if (dim < 1 || dim > 31) throw std::invalid_argument("frame dimension out of range");
  if (metric_.rows() != dim || metric_.cols() != dim)
    throw std::invalid_argument("metric shape mismatch");
  if ((metric_ - metric_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("metric not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(metric_);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("metric not positive definite");
  identity_ = is_identity(metric_, 0.0);
}

bool Frame::same_as(const Frame& other, double tol) const {
  return dim_ == other.dim_ && (metric_ - other.metric_).cwiseAbs().maxCoeff() <= tol;
}

FramePtr Frame::standard(int dim) {
  static std::array<std::shared_ptr<const Frame>, 8> cache;
  if (dim >= 1 && dim <= 7) {
    if (!cache[dim]) cache[dim] = std::make_shared<Frame>(dim);
    return cache[dim];
  }
  return std::make_shared<Frame>(dim);
}

} // namespace g2cert
