#pragma once

#include "g2cert/kform.hpp"
#include "g2cert/linalg.hpp"

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace g2cert {

/* Subspace of the algebra carrier, stored as orthonormal basis columns. */
struct Subspace {
  Eigen::MatrixXd basis; // ambient_dim x k, orthonormal columns
  int dim() const { return static_cast<int>(basis.cols()); }
  bool contains(const Eigen::VectorXd& v, double tol = 1e-9) const;
  bool contains(const Subspace& other, double tol = 1e-9) const;
};

struct BettiResult {
  std::vector<int> b;  // b_0 .. b_n
  bool stable = true;  // false if any rank decision was in the danger zone
};

/* Real Lie algebra given by structure constants on an orthonormal basis.
 * Conventions: de^k(e_i, e_j) = -e^k([e_i, e_j]); ad(x) y = [x, y]. */
class LieAlgebra {
public:
  LieAlgebra(int dim, std::string name);
  static LieAlgebra abelian(int dim, std::string name = "abelian");

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const FramePtr& frame() const { return frame_; }

  void set_bracket(int i, int j, const Eigen::VectorXd& value); // 1-based, i < j
  Eigen::VectorXd bracket_basis(int i, int j) const;            // 1-based, any order
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd ad_basis(int i) const; // ad(e_i)

  /* Max over basis triples of |[[x,y],z] + [[y,z],x] + [[z,x],y]|_2. */
  double jacobi_residual() const;

  /* Chevalley-Eilenberg differential, extended as an antiderivation. */
  KForm ce_d(const KForm& a) const;
  /* Matrix of d: Lambda^k -> Lambda^{k+1} in the canonical monomial bases. */
  Eigen::MatrixXd d_matrix(int k) const;

  BettiResult betti(double rank_tol = 1e-7) const;

  bool unimodular(double tol = 1e-9, double* witness = nullptr) const;

  std::vector<Subspace> derived_series(double rank_tol = 1e-7) const;
  std::vector<Subspace> lower_central_series(double rank_tol = 1e-7) const;
  bool is_solvable(double rank_tol = 1e-7) const;
  /* k-step nilpotency degree; 1 = abelian; nullopt if not nilpotent.
   * The zero algebra (dim 0 subalgebra) has degree 0. */
  std::optional<int> nilpotency_degree(double rank_tol = 1e-7) const;

  /* Restriction of the bracket to an invariant subspace (must be closed under
   * the bracket within tol, else throws). */
  LieAlgebra subalgebra(const Subspace& s, double tol = 1e-9) const;

  /* Nilradical of a solvable algebra via a complex triangularizing flag; the
   * weights are linear functionals and the nilradical is their joint real
   * kernel. Throws std::runtime_error("not solvable or numerically degenerate")
   * when no flag exists. */
  Subspace nilradical(double rank_tol = 1e-7) const;

  /* All flag weights are real (pre: solvable). */
  bool is_completely_solvable(double tol = 1e-9) const;

  /* Basis of the derivation algebra (matrices D with D[x,y]=[Dx,y]+[x,Dy]). */
  std::vector<Eigen::MatrixXd> derivations(double rank_tol = 1e-7) const;
  int skew_derivations_dim(double rank_tol = 1e-7) const;

  /* Spectrum of ad(x) restricted to an ad(x)-invariant subspace, canonicalized
   * modulo global real scaling. Throws if s is not invariant. */
  std::vector<std::complex<double>> projective_spectrum(const Eigen::VectorXd& x,
                                                        const Subspace& s,
                                                        double tol = 1e-9) const;

  /* Weight matrix of the triangularizing flag: row j = weights of ad(e_i) on
   * the j-th flag quotient. Used by nilradical and is_completely_solvable. */
  Eigen::MatrixXcd flag_weights() const;

private:
  int pair_index(int i, int j) const; // 0-based storage index for i < j (1-based)

  int dim_;
  std::string name_;
  FramePtr frame_;
  std::vector<Eigen::VectorXd> table_; // [e_i, e_j] for i < j
};

} // namespace g2cert
