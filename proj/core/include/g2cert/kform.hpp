#pragma once

#include "g2cert/frame.hpp"

#include <Eigen/Dense>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace g2cert {

/* Sparse exterior form on a frame of dimension <= 31. A multi-index
 * e^{i1} ^ ... ^ e^{ik} with strictly increasing 1-based labels is stored as a
 * bitmask (bit i-1 <=> label i). Coefficients with |c| < kDedupEps are dropped
 * whenever a form is normalized, so every stored term is genuinely present. */
class KForm {
public:
  using Mask = unsigned;
  static constexpr double kDedupEps = 1e-15;

  KForm(FramePtr frame, int degree);

  static KForm zero(FramePtr frame, int degree) { return KForm(std::move(frame), degree); }
  static KForm monomial(FramePtr frame, std::initializer_list<int> idx, double c = 1.0);
  static KForm monomial(FramePtr frame, const std::vector<int>& idx, double c = 1.0);
  static KForm from_mask_terms(FramePtr frame, int degree,
                               const std::map<Mask, double>& terms);

  int degree() const { return degree_; }
  const FramePtr& frame() const { return frame_; }
  const std::map<Mask, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double coeff(Mask m) const;
  double coeff(std::initializer_list<int> idx) const;

  KForm operator+(const KForm& o) const;
  KForm operator-(const KForm& o) const;
  KForm operator*(double s) const;
  KForm operator-() const;

  /* alpha(v1, ..., vk) by minor expansion. */
  double evaluate(const std::vector<Eigen::VectorXd>& vectors) const;

  /* Coefficients in the canonical basis (masks ascending); length C(dim, k). */
  Eigen::VectorXd coefficient_vector() const;

  static std::vector<Mask> basis_masks(int dim, int degree);
  static std::vector<int> mask_indices(Mask m);
  static Mask indices_mask(const std::vector<int>& idx);

  std::string to_string() const;

  /* Internal accumulate; callers must normalize() when done. */
  void accumulate(Mask m, double c);
  void normalize();

private:
  FramePtr frame_;
  int degree_;
  std::map<Mask, double> terms_;
};

/* Sign of sorting the concatenation (A ascending, B ascending) into ascending
 * order; A and B disjoint. */
int merge_sign(KForm::Mask a, KForm::Mask b);

KForm wedge(const KForm& a, const KForm& b);
KForm contract(const Eigen::VectorXd& v, const KForm& a);

/* Hodge star for the frame metric, with the convention alpha ^ *beta =
 * <alpha,beta> vol and orientation e^1 ^ ... ^ e^n = +vol. For the identity
 * metric the basis k-forms e^I are orthonormal. */
KForm hodge(const KForm& a);

/* Sum of squared coefficients (orthonormal-e^I convention). */
double form_norm2(const KForm& a);
double form_norm(const KForm& a);
double form_inner(const KForm& a, const KForm& b);

/* (h^* a)(v1,...,vk) = a(h v1, ..., h vk). */
KForm pullback(const Eigen::MatrixXd& h, const KForm& a);

/* Derivation extension of the covector action xi -> -xi(D .):
 * (D . a)(v1,...,vk) = -sum_i a(v1, ..., D vi, ..., vk). */
KForm derivation_action(const Eigen::MatrixXd& D, const KForm& a);

bool approx_equal(const KForm& a, const KForm& b, double tol);

} // namespace g2cert
