#include "g2cert/quadruple.hpp"

#include <cmath>
#include <stdexcept>

namespace g2cert {

namespace {

/* quadruple order (e7, e3, e4, e1, e2, e5, e6) as standard 1-based labels */
constexpr int kQuadOrder[7] = {7, 3, 4, 1, 2, 5, 6};

Matrix7d permutation_matrix() {
  Matrix7d p = Matrix7d::Zero();
  for (int qj = 0; qj < 7; ++qj) p(kQuadOrder[qj] - 1, qj) = 1.0;
  return p;
}

const Matrix7d& perm() {
  static const Matrix7d p = permutation_matrix();
  return p;
}

/* g1 basis (e1, e2, e5, e6) as standard 0-based indices */
constexpr int kG1[4] = {0, 1, 4, 5};
constexpr int kH1[2] = {2, 3};

} // namespace

KForm phi_reference() {
  FramePtr fr = Frame::standard(7);
  KForm phi = KForm::monomial(fr, {1, 2, 7}) + KForm::monomial(fr, {3, 4, 7}) +
              KForm::monomial(fr, {5, 6, 7}) + KForm::monomial(fr, {1, 3, 5}) -
              KForm::monomial(fr, {1, 4, 6}) - KForm::monomial(fr, {2, 3, 6}) -
              KForm::monomial(fr, {2, 4, 5});
  return phi;
}

KForm tau_reference() {
  FramePtr fr = Frame::standard(7);
  return KForm::monomial(fr, {1, 2}) - KForm::monomial(fr, {5, 6});
}

KForm omega_reference() {
  FramePtr fr = Frame::standard(7);
  return KForm::monomial(fr, {1, 2}) + KForm::monomial(fr, {3, 4}) +
         KForm::monomial(fr, {5, 6});
}

KForm rho_plus_reference() {
  FramePtr fr = Frame::standard(7);
  return KForm::monomial(fr, {1, 3, 5}) - KForm::monomial(fr, {1, 4, 6}) -
         KForm::monomial(fr, {2, 3, 6}) - KForm::monomial(fr, {2, 4, 5});
}

FramePtr model4_frame() { return Frame::standard(4); }

std::array<KForm, 6> beta_basis() {
  FramePtr fr = model4_frame();
  auto m = [&](int i, int j, double c) { return KForm::monomial(fr, {i, j}, c); };
  return {
      m(1, 2, 1) - m(3, 4, 1), // tau
      m(2, 4, 1) + m(1, 3, 1), // bar omega3
      m(1, 4, 1) - m(2, 3, 1), // bar omega4
      m(1, 2, 1) + m(3, 4, 1), // omega7
      m(2, 4, 1) - m(1, 3, 1), // omega3
      m(1, 4, 1) + m(2, 3, 1), // omega4
  };
}

Matrix7d quadruple_to_standard(const Matrix7d& m) { return perm() * m * perm().transpose(); }
Matrix7d standard_to_quadruple(const Matrix7d& m) { return perm().transpose() * m * perm(); }

LieAlgebra assemble_bracket(const Quadruple& q, const std::string& name) {
  LieAlgebra L(7, name);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(7);
  // [e3, e7] = -(a e3 + c e4), [e4, e7] = -(b e3 + d e4)
  for (int col = 0; col < 2; ++col) {
    v.setZero();
    v(kH1[0]) = -q.A1(0, col);
    v(kH1[1]) = -q.A1(1, col);
    L.set_bracket(kH1[col] + 1, 7, v);
  }
  // [g1_j, e7] = -A col j; [e3, g1_j] = B col j; [e4, g1_j] = C col j
  for (int col = 0; col < 4; ++col) {
    v.setZero();
    for (int row = 0; row < 4; ++row) v(kG1[row]) = -q.A(row, col);
    L.set_bracket(kG1[col] + 1, 7, v);
  }
  for (int col = 0; col < 4; ++col) {
    int gj = kG1[col] + 1; // 1-based label in {1,2,5,6}
    v.setZero();
    for (int row = 0; row < 4; ++row) v(kG1[row]) = q.B(row, col);
    if (gj < 3)
      L.set_bracket(gj, 3, -v); // [e1, e3] = -[e3, e1]
    else
      L.set_bracket(3, gj, v);
    v.setZero();
    for (int row = 0; row < 4; ++row) v(kG1[row]) = q.C(row, col);
    if (gj < 4)
      L.set_bracket(gj, 4, -v);
    else
      L.set_bracket(4, gj, v);
  }
  return L;
}

Quadruple extract_quadruple(const LieAlgebra& l, double tol) {
  if (l.dim() != 7) throw std::invalid_argument("extract_quadruple: dim != 7");
  Quadruple q;
  auto check_component = [&](const Eigen::VectorXd& w, const int* allowed, int n) {
    Eigen::VectorXd copy = w;
    for (int i = 0; i < n; ++i) copy(allowed[i]) = 0.0;
    if (copy.cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("extract_quadruple: bracket leaves its block");
  };
  for (int col = 0; col < 2; ++col) {
    Eigen::VectorXd w = l.bracket_basis(7, kH1[col] + 1);
    check_component(w, kH1, 2);
    q.A1(0, col) = w(kH1[0]);
    q.A1(1, col) = w(kH1[1]);
  }
  for (int col = 0; col < 4; ++col) {
    Eigen::VectorXd w = l.bracket_basis(7, kG1[col] + 1);
    check_component(w, kG1, 4);
    for (int row = 0; row < 4; ++row) q.A(row, col) = w(kG1[row]);
    w = l.bracket_basis(3, kG1[col] + 1);
    check_component(w, kG1, 4);
    for (int row = 0; row < 4; ++row) q.B(row, col) = w(kG1[row]);
    w = l.bracket_basis(4, kG1[col] + 1);
    check_component(w, kG1, 4);
    for (int row = 0; row < 4; ++row) q.C(row, col) = w(kG1[row]);
  }
  if (l.bracket_basis(3, 4).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("extract_quadruple: [e3, e4] != 0");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (l.bracket_basis(kG1[i] + 1, kG1[j] + 1).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("extract_quadruple: g1 not abelian");
  if (std::abs(q.A.trace()) > tol || std::abs(q.B.trace()) > tol || std::abs(q.C.trace()) > tol)
    throw std::invalid_argument("extract_quadruple: A, B, C must be traceless");
  return q;
}

namespace {

/* theta is linear in E; precompute the 16 images of the matrix units. */
struct ThetaTable {
  Matrix6d unit[4][4];
  ThetaTable() {
    auto beta = beta_basis();
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        Matrix4d e = Matrix4d::Zero();
        e(r, c) = 1.0;
        Matrix6d m;
        for (int j = 0; j < 6; ++j) {
          KForm img = derivation_action(e, beta[j]);
          for (int i = 0; i < 6; ++i) m(i, j) = form_inner(img, beta[i]) / 2.0;
        }
        unit[r][c] = m;
      }
  }
};

const ThetaTable& theta_table() {
  static const ThetaTable t;
  return t;
}

} // namespace

Matrix6d theta(const Matrix4d& e) {
  const ThetaTable& t = theta_table();
  Matrix6d m = Matrix6d::Zero();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (e(r, c) != 0.0) m += e(r, c) * t.unit[r][c];
  return m;
}

KForm theta_apply(const Matrix4d& e, const KForm& alpha) {
  return derivation_action(e, alpha);
}

const Matrix4d& t7_matrix() {
  static const Matrix4d t = (Matrix4d() << -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1)
                                .finished() / 6.0;
  return t;
}

const Matrix4d& t3_matrix() {
  static const Matrix4d t = (Matrix4d() << 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0)
                                .finished() / 6.0;
  return t;
}

const Matrix4d& t4_matrix() {
  static const Matrix4d t = (Matrix4d() << 0, 0, 1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, -1, 0, 0)
                                .finished() / 6.0;
  return t;
}

double MainTheoremResiduals::max() const {
  return std::max(structural, std::max(torsion_action, trace_identity));
}

MainTheoremResiduals check_main_theorem(const Quadruple& q) {
  MainTheoremResiduals r{};
  const double a = q.A1(0, 0), b = q.A1(0, 1), c = q.A1(1, 0), d = q.A1(1, 1);
  double structural = std::abs(q.A.trace());
  structural = std::max(structural, std::abs(q.B.trace()));
  structural = std::max(structural, std::abs(q.C.trace()));
  Matrix4d jab = q.A * q.B - q.B * q.A - a * q.B - c * q.C;
  Matrix4d jac = q.A * q.C - q.C * q.A - b * q.B - d * q.C;
  Matrix4d jbc = q.B * q.C - q.C * q.B;
  structural = std::max({structural, jab.cwiseAbs().maxCoeff(), jac.cwiseAbs().maxCoeff(),
                         jbc.cwiseAbs().maxCoeff()});
  r.structural = structural;

  // beta coordinates: tau = e1, omega7 = e4, omega3 = e5, omega4 = e6.
  using Vector6d = Eigen::Matrix<double, 6, 1>;
  const Vector6d tau = Vector6d::Unit(0);
  const Vector6d w7 = Vector6d::Unit(3), w3 = Vector6d::Unit(4), w4 = Vector6d::Unit(5);
  Matrix6d ta = theta(q.A), tb = theta(q.B), tc = theta(q.C);
  double act = (ta * tau - w7 / 3.0).cwiseAbs().maxCoeff();
  act = std::max(act, (tb * tau - w3 / 3.0).cwiseAbs().maxCoeff());
  act = std::max(act, (tc * tau - w4 / 3.0).cwiseAbs().maxCoeff());
  r.torsion_action = act;

  Vector6d lhs = ta * w7 + tb * w3 + tc * w4;
  Vector6d rhs = tau + q.A1.trace() * w7;
  r.trace_identity = (lhs - rhs).cwiseAbs().maxCoeff();
  return r;
}

Quadruple act_u0(const Quadruple& q, double x, double y, const Matrix2d& h2,
                 const Matrix2d& h3) {
  if (std::abs(x * x + y * y - 1.0) > 1e-12)
    throw std::invalid_argument("act_u0: x^2 + y^2 != 1");
  Matrix2d h1;
  h1 << x, y, -y, x;
  auto orthogonal = [](const Matrix2d& h) {
    return (h.transpose() * h - Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-12 &&
           h.determinant() > 0.0;
  };
  if (!orthogonal(h2) || !orthogonal(h3))
    throw std::invalid_argument("act_u0: h2, h3 must be in SO(2)");
  if (((h1 * h2 * h3) - Matrix2d::Identity()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("act_u0: h1 h2 h3 != I");
  Matrix4d h4 = Matrix4d::Zero();
  h4.topLeftCorner<2, 2>() = h2;
  h4.bottomRightCorner<2, 2>() = h3;
  Quadruple out;
  out.A1 = h1 * q.A1 * h1.transpose();
  out.A = h4 * q.A * h4.transpose();
  out.B = h4 * (x * q.B - y * q.C) * h4.transpose();
  out.C = h4 * (y * q.B + x * q.C) * h4.transpose();
  return out;
}

Quadruple act_u0_angles(const Quadruple& q, double t, double s) {
  Matrix2d h2, h3;
  double x = std::cos(t), y = std::sin(t);
  Matrix2d h1;
  h1 << x, y, -y, x;
  h2 << std::cos(s), std::sin(s), -std::sin(s), std::cos(s);
  h3 = (h1 * h2).transpose(); // inverse of h1 h2
  return act_u0(q, x, y, h2, h3);
}

Quadruple act_g(const Quadruple& q) {
  static const Matrix2d g1 = (Matrix2d() << 1, 0, 0, -1).finished();
  static const Matrix4d g2 =
      (Matrix4d() << 0, 0, 1, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, 1, 0, 0).finished();
  Quadruple out;
  out.A1 = -g1 * q.A1 * g1.inverse();
  out.A = -g2 * q.A * g2.inverse();
  out.B = g2 * q.B * g2.inverse();
  out.C = -g2 * q.C * g2.inverse();
  return out;
}

Matrix7d u0_matrix(const Matrix2d& h1, const Matrix2d& h2, const Matrix2d& h3) {
  Matrix7d m = Matrix7d::Identity();
  m.block<2, 2>(kH1[0], kH1[0]) = h1;
  m.block<2, 2>(0, 0) = h2;
  m.block<2, 2>(4, 4) = h3;
  return m;
}

Sym0Parts sym0_decompose(const Matrix4d& m, double tol) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("sym0_decompose: matrix not symmetric");
  if (std::abs(m.trace()) > tol)
    throw std::invalid_argument("sym0_decompose: matrix not traceless");
  Sym0Parts out;
  const Matrix4d* t[3] = {&t7_matrix(), &t3_matrix(), &t4_matrix()};
  for (int i = 0; i < 3; ++i)
    out.p2(i) = (m.cwiseProduct(*t[i])).sum() * 9.0; // <M, T_i> / |T_i|^2
  out.p1 = m;
  for (int i = 0; i < 3; ++i) out.p1 -= out.p2(i) * (*t[i]);
  return out;
}

bool g2_membership(const Matrix7d& h, double tol, double* residual) {
  KForm phi = phi_reference();
  double r = form_norm(pullback(h, phi) - phi);
  if (residual) *residual = r;
  return r < tol;
}

} // namespace g2cert
