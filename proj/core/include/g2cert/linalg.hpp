#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace g2cert {

/* Rank decisions use the SVD with threshold rank_tol * sigma_max. A singular
 * value inside [0.1, 10] x threshold means the integer answer is not numerically
 * safe; such computations are flagged, never silently rounded. */
struct RankDecision {
  int rank = 0;
  bool stable = true;
  double sigma_max = 0.0;
  double threshold = 0.0;
};

RankDecision svd_rank(const Eigen::MatrixXd& m, double rank_tol = 1e-7);

/* Orthonormal basis of the kernel (columns). */
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double rank_tol = 1e-7,
                           RankDecision* decision = nullptr);

/* Orthonormal basis of the column span (columns). */
Eigen::MatrixXd column_span(const Eigen::MatrixXd& m, double rank_tol = 1e-7,
                            RankDecision* decision = nullptr);

/* Minimum-norm least-squares solution. */
Eigen::VectorXd lstsq(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

/* Eigenvalues as a vector (unordered, solver order). */
std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m);

/* Canonical form of a spectrum modulo global real scaling: scale so the max
 * modulus is 1 (zero spectrum stays zero), then pick the lexicographically
 * larger of the multiset and its negation; sorted by (Re, Im) descending. */
std::vector<std::complex<double>> canonical_projective_spectrum(
    std::vector<std::complex<double>> spec, double tol = 1e-9);

/* Max distance under optimal pairing of two sorted canonical spectra. */
double spectrum_distance(const std::vector<std::complex<double>>& a,
                         const std::vector<std::complex<double>>& b);

} // namespace g2cert
