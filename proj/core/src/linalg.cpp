#include "g2cert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace g2cert {

RankDecision svd_rank(const Eigen::MatrixXd& m, double rank_tol) {
  RankDecision d;
  if (m.rows() == 0 || m.cols() == 0) return d;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  d.sigma_max = sv.size() ? sv(0) : 0.0;
  // Floor at 1: inputs live at structure-constant scale, and a matrix of pure
  // rounding noise (sigma_max ~ 1e-17) must rank as zero, not full.
  d.threshold = rank_tol * std::max(d.sigma_max, 1.0);
  if (d.sigma_max == 0.0) return d;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > d.threshold) ++d.rank;
    if (sv(i) >= 0.1 * d.threshold && sv(i) <= 10.0 * d.threshold) d.stable = false;
  }
  return d;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rank_tol, RankDecision* decision) {
  if (m.rows() == 0 || m.cols() == 0) {
    if (decision) *decision = RankDecision{};
    return Eigen::MatrixXd::Identity(m.cols(), m.cols());
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  RankDecision d;
  d.sigma_max = sv.size() ? sv(0) : 0.0;
  d.threshold = rank_tol * std::max(d.sigma_max, 1.0);
  if (d.sigma_max > 0.0) {
    for (int i = 0; i < sv.size(); ++i) {
      if (sv(i) > d.threshold) ++d.rank;
      if (sv(i) >= 0.1 * d.threshold && sv(i) <= 10.0 * d.threshold) d.stable = false;
    }
  }
  if (decision) *decision = d;
  return svd.matrixV().rightCols(m.cols() - d.rank);
}

Eigen::MatrixXd column_span(const Eigen::MatrixXd& m, double rank_tol, RankDecision* decision) {
  if (m.rows() == 0 || m.cols() == 0) {
    if (decision) *decision = RankDecision{};
    return Eigen::MatrixXd(m.rows(), 0);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  RankDecision d;
  d.sigma_max = sv.size() ? sv(0) : 0.0;
  d.threshold = rank_tol * std::max(d.sigma_max, 1.0);
  if (d.sigma_max > 0.0) {
    for (int i = 0; i < sv.size(); ++i) {
      if (sv(i) > d.threshold) ++d.rank;
      if (sv(i) >= 0.1 * d.threshold && sv(i) <= 10.0 * d.threshold) d.stable = false;
    }
  }
  if (decision) *decision = d;
  return svd.matrixU().leftCols(d.rank);
}

Eigen::VectorXd lstsq(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("lstsq: shape mismatch");
  return a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
}

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<std::complex<double>> out(m.rows());
  for (int i = 0; i < m.rows(); ++i) out[i] = es.eigenvalues()(i);
  return out;
}

namespace {

bool complex_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/* Lexicographic comparison of sorted multisets with tolerance; returns
 * -1, 0, +1. */
int lex_cmp(const std::vector<std::complex<double>>& a,
            const std::vector<std::complex<double>>& b, double tol) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() > b[i].real() + tol) return 1;
    if (a[i].real() < b[i].real() - tol) return -1;
    if (a[i].imag() > b[i].imag() + tol) return 1;
    if (a[i].imag() < b[i].imag() - tol) return -1;
  }
  return 0;
}

} // namespace

std::vector<std::complex<double>> canonical_projective_spectrum(
    std::vector<std::complex<double>> spec, double tol) {
  double maxmod = 0.0;
  for (const auto& z : spec) maxmod = std::max(maxmod, std::abs(z));
  if (maxmod < 1e-13) {
    for (auto& z : spec) z = 0.0;
    std::sort(spec.begin(), spec.end(), complex_less);
    return spec;
  }
  for (auto& z : spec) z /= maxmod;
  auto neg = spec;
  for (auto& z : neg) z = -z;
  std::sort(spec.begin(), spec.end(), complex_less);
  std::sort(neg.begin(), neg.end(), complex_less);
  return lex_cmp(spec, neg, tol) >= 0 ? spec : neg;
}

double spectrum_distance(const std::vector<std::complex<double>>& a,
                         const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

} // namespace g2cert
