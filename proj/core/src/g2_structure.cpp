#include "g2cert/g2_structure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace g2cert {

namespace {

constexpr KForm::Mask kFullMask7 = (1u << 7) - 1;

double top_coeff(const KForm& a) { return a.coeff(kFullMask7); }

Eigen::MatrixXd metric_sqrt(const Eigen::MatrixXd& g, double exponent) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  Eigen::VectorXd lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) {
    if (lam(i) <= 0.0) throw std::invalid_argument("metric is not positive definite");
    lam(i) = std::pow(lam(i), exponent);
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

} // namespace

MetricVolume metric_from_phi(const KForm& phi) {
  if (phi.frame()->dim() != 7 || phi.degree() != 3)
    throw std::invalid_argument("metric_from_phi expects a 3-form in dimension 7");
  Eigen::MatrixXd b(7, 7);
  std::vector<KForm> contractions;
  contractions.reserve(7);
  for (int i = 0; i < 7; ++i)
    contractions.push_back(contract(Eigen::VectorXd::Unit(7, i), phi));
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      double v = top_coeff(wedge(wedge(contractions[i], contractions[j]), phi)) / 6.0;
      b(i, j) = v;
      b(j, i) = v;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  double det = 1.0;
  for (int i = 0; i < 7; ++i) det *= es.eigenvalues()(i);
  if (det <= 0.0 || es.eigenvalues()(0) <= 0.0)
    throw std::invalid_argument("not a positive 3-form");
  MetricVolume mv;
  mv.metric = std::pow(det, -1.0 / 9.0) * b;
  mv.volume_coeff = std::pow(det, 1.0 / 9.0);
  return mv;
}

LieAlgebra orthonormalize(const LieAlgebra& l, const Eigen::MatrixXd& metric) {
  int n = l.dim();
  if (metric.rows() != n || metric.cols() != n)
    throw std::invalid_argument("orthonormalize: metric size mismatch");
  if ((metric - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-13) {
    LieAlgebra copy = l;
    return copy;
  }
  Eigen::MatrixXd p = metric_sqrt(metric, -0.5);
  Eigen::MatrixXd pinv = metric_sqrt(metric, 0.5);
  LieAlgebra out(n, l.name() + "#orthonormal");
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      out.set_bracket(i, j, pinv * l.bracket(p.col(i - 1), p.col(j - 1)));
  return out;
}

CurvatureData ricci(const LieAlgebra& l, const Eigen::MatrixXd& metric) {
  LieAlgebra lon = orthonormalize(l, metric);
  int n = lon.dim();
  std::vector<Eigen::MatrixXd> ad(n);
  for (int i = 0; i < n; ++i) ad[i] = lon.ad_basis(i + 1);

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd killing = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m(i, j) = -0.5 * (ad[i].transpose() * ad[j]).trace();
      killing(i, j) = (ad[i] * ad[j]).trace();
    }
  for (int a = 0; a < n; ++a) m += 0.25 * ad[a] * ad[a].transpose();

  Eigen::VectorXd h(n);
  for (int k = 0; k < n; ++k) h(k) = ad[k].trace();
  Eigen::MatrixXd ad_h = lon.ad(h);

  CurvatureData data;
  data.ricci = m - 0.5 * killing - 0.5 * (ad_h + ad_h.transpose());
  data.scalar = data.ricci.trace();
  data.mean_curvature = h;
  return data;
}

G2Structure::G2Structure(LieAlgebra algebra, const KForm& phi, double closed_tol)
    : algebra_(std::move(algebra)),
      metric_frame_(),
      phi_(phi),
      metric_(),
      volume_coeff_(1.0),
      torsion_(phi.frame(), 2),
      torsion_norm2_(0.0),
      torsion_identity_residual_(0.0),
      closedness_residual_(0.0) {
  MetricVolume mv = metric_from_phi(phi);
  metric_ = mv.metric;
  volume_coeff_ = mv.volume_coeff;
  bool identity =
      (metric_ - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-13;
  metric_frame_ =
      identity ? Frame::standard(7) : std::make_shared<Frame>(7, metric_);
  phi_ = KForm::from_mask_terms(metric_frame_, 3, phi.terms());

  closedness_residual_ = form_norm(algebra_.ce_d(phi_));
  if (closedness_residual_ > closed_tol)
    throw std::invalid_argument("phi is not closed");

  KForm star_phi = hodge(phi_);
  KForm d_star_phi = algebra_.ce_d(star_phi);
  torsion_ = -hodge(d_star_phi);
  torsion_norm2_ = top_coeff(wedge(torsion_, hodge(torsion_))) / volume_coeff_;
  torsion_identity_residual_ = form_norm(d_star_phi - wedge(torsion_, phi_));
}

G2Structure::G2Structure(LieAlgebra algebra, double closed_tol)
    : G2Structure(std::move(algebra), phi_reference(), closed_tol) {}

KForm G2Structure::star(const KForm& a) const {
  if (a.frame().get() == metric_frame_.get()) return hodge(a);
  return hodge(KForm::from_mask_terms(metric_frame_, a.degree(), a.terms()));
}

double erp_residual(const G2Structure& s) {
  const KForm& tau = s.torsion();
  KForm lhs = s.d(tau);
  KForm rhs = s.phi() * (s.torsion_norm2() / 6.0) + s.star(wedge(tau, tau)) * (1.0 / 6.0);
  return form_norm(lhs - rhs);
}

double pinching_gap(const CurvatureData& c) {
  return c.scalar * c.scalar - 3.0 * c.ricci.squaredNorm();
}

SolitonResult ricci_soliton_solve(const LieAlgebra& l, const Eigen::MatrixXd& metric) {
  LieAlgebra lon = orthonormalize(l, metric);
  int n = lon.dim();
  CurvatureData curv = ricci(lon, Eigen::MatrixXd::Identity(n, n));
  std::vector<Eigen::MatrixXd> ders = lon.derivations();

  Eigen::MatrixXd a(n * n, 1 + static_cast<int>(ders.size()));
  a.col(0) = Eigen::MatrixXd::Identity(n, n).reshaped();
  for (size_t k = 0; k < ders.size(); ++k) a.col(1 + k) = ders[k].reshaped();
  Eigen::VectorXd rhs = curv.ricci.reshaped();
  Eigen::VectorXd x = lstsq(a, rhs);

  SolitonResult res;
  res.coefficient = x(0);
  res.derivation = Eigen::MatrixXd::Zero(n, n);
  for (size_t k = 0; k < ders.size(); ++k) res.derivation += x(1 + k) * ders[k];
  res.residual = (rhs - a * x).norm();
  res.success = res.residual < 1e-8;
  return res;
}

SolitonResult laplacian_soliton_solve(const G2Structure& s) {
  const KForm& phi = s.phi();
  std::vector<Eigen::MatrixXd> ders = s.algebra().derivations();

  Eigen::VectorXd rhs = s.d(s.torsion()).coefficient_vector();
  Eigen::MatrixXd a(rhs.size(), 1 + static_cast<int>(ders.size()));
  a.col(0) = phi.coefficient_vector();
  for (size_t k = 0; k < ders.size(); ++k)
    a.col(1 + k) = derivation_action(ders[k], phi).coefficient_vector();
  Eigen::VectorXd x = lstsq(a, rhs);

  SolitonResult res;
  res.coefficient = x(0);
  res.derivation = Eigen::MatrixXd::Zero(7, 7);
  for (size_t k = 0; k < ders.size(); ++k) res.derivation += x(1 + k) * ders[k];
  res.residual = (rhs - a * x).norm();
  res.success = res.residual < 1e-8;
  return res;
}

double exactness_residual(const G2Structure& s, double coefficient) {
  KForm e34 = KForm::monomial(s.phi().frame(), {3, 4}, coefficient);
  KForm primitive = s.torsion() * 3.0 - e34;
  return form_norm(s.d(primitive) - s.phi());
}

NonExactness non_exactness_certificate(const G2Structure& s) {
  Eigen::MatrixXd d2 = s.algebra().d_matrix(2); // 35 x 21
  Eigen::VectorXd phi_vec = s.phi().coefficient_vector();
  Eigen::VectorXd x = lstsq(d2, phi_vec);

  NonExactness cert;
  cert.projection_gap = (phi_vec - d2 * x).norm();
  cert.not_exact = cert.projection_gap > 1e-6;

  auto masks3 = KForm::basis_masks(7, 3);
  KForm::Mask m347 = KForm::indices_mask({3, 4, 7});
  int row = static_cast<int>(
      std::find(masks3.begin(), masks3.end(), m347) - masks3.begin());
  cert.max_pairing = d2.row(row).cwiseAbs().maxCoeff();
  cert.phi_pairing = s.phi().coeff(m347);
  return cert;
}

SU3Restriction su3_restrict(const G2Structure& s, const Eigen::VectorXd& normal,
                            double tol) {
  const Eigen::MatrixXd& g = s.metric();
  auto ip = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return x.dot(g * y);
  };
  Eigen::VectorXd nu = normal / std::sqrt(ip(normal, normal));

  // Adapted orthonormal basis of the hyperplane: Gram-Schmidt over the
  // projected standard basis, deterministic order.
  std::vector<Eigen::VectorXd> basis;
  for (int i = 0; i < 7 && basis.size() < 6; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(7, i);
    v -= ip(v, nu) * nu;
    for (const auto& u : basis) v -= ip(v, u) * u;
    double norm = std::sqrt(ip(v, v));
    if (norm > 1e-10) basis.push_back(v / norm);
  }
  if (basis.size() != 6)
    throw std::invalid_argument("hyperplane basis construction failed");

  SU3Restriction out{.basis = Eigen::MatrixXd(7, 6),
                     .hyperplane = LieAlgebra(6, s.algebra().name() + "|su3"),
                     .omega = KForm(Frame::standard(6), 2),
                     .rho_plus = KForm(Frame::standard(6), 3),
                     .r_omega2 = 0.0,
                     .r_rho = 0.0,
                     .r_coupled = 0.0,
                     .r_omega = 0.0};
  for (int i = 0; i < 6; ++i) out.basis.col(i) = basis[i];

  for (int a = 1; a <= 6; ++a)
    for (int b = a + 1; b <= 6; ++b) {
      Eigen::VectorXd w = s.algebra().bracket(basis[a - 1], basis[b - 1]);
      if (std::abs(ip(w, nu)) > tol)
        throw std::invalid_argument("hyperplane is not a subalgebra");
      Eigen::VectorXd coords(6);
      for (int c = 0; c < 6; ++c) coords(c) = ip(w, basis[c]);
      out.hyperplane.set_bracket(a, b, coords);
    }

  FramePtr f6 = Frame::standard(6);
  Eigen::VectorXd co_normal = -nu;
  KForm omega(f6, 2), rho(f6, 3);
  for (int a = 1; a <= 6; ++a)
    for (int b = a + 1; b <= 6; ++b) {
      double v = s.phi().evaluate({co_normal, basis[a - 1], basis[b - 1]});
      if (std::abs(v) > KForm::kDedupEps)
        omega.accumulate(KForm::indices_mask({a, b}), v);
      for (int c = b + 1; c <= 6; ++c) {
        double w = s.phi().evaluate({basis[a - 1], basis[b - 1], basis[c - 1]});
        if (std::abs(w) > KForm::kDedupEps)
          rho.accumulate(KForm::indices_mask({a, b, c}), w);
      }
    }
  omega.normalize();
  rho.normalize();
  out.omega = omega;
  out.rho_plus = rho;

  KForm d_omega = out.hyperplane.ce_d(omega);
  out.r_omega2 = form_norm(out.hyperplane.ce_d(wedge(omega, omega)));
  out.r_rho = form_norm(out.hyperplane.ce_d(rho));
  out.r_coupled = form_norm(d_omega - rho * (1.0 / 3.0));
  out.r_omega = form_norm(d_omega);
  return out;
}

} // namespace g2cert
