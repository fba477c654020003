#include "g2cert/lie_algebra.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace g2cert {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

MatrixXcd complex_column_span(const MatrixXcd& m, double rank_tol, int* rank_out = nullptr) {
  if (m.cols() == 0) {
    if (rank_out) *rank_out = 0;
    return MatrixXcd(m.rows(), 0);
  }
  Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * std::max(smax, 1.0)) ++rank;
  if (rank_out) *rank_out = rank;
  return svd.matrixU().leftCols(rank);
}

MatrixXcd complex_null_space(const MatrixXcd& m, double rank_tol) {
  Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * std::max(smax, 1.0)) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

struct FlagError : std::runtime_error {
  FlagError() : std::runtime_error("not solvable or numerically degenerate") {}
};

/* Alternating polish of a joint eigenvector candidate: Rayleigh-quotient
 * weights, then the smallest right singular vector of the stacked shifted
 * family. Defective weights leave the initial candidate accurate only to
 * eps^(1/k) (perturbed Jordan blocks move eigenlines that far); the
 * iteration walks the rest of the way down, linearly but cheaply. */
VectorXcd polish_eigvec(const std::vector<MatrixXcd>& ops, VectorXcd w) {
  const int m = static_cast<int>(w.size());
  double scale = 1.0;
  for (const auto& op : ops) scale = std::max(scale, op.norm());
  MatrixXcd stack(static_cast<int>(ops.size()) * m, m);
  w.normalize();
  for (int it = 0; it < 200; ++it) {
    for (size_t k = 0; k < ops.size(); ++k) {
      std::complex<double> lam = w.adjoint() * ops[k] * w;
      stack.middleRows(static_cast<int>(k) * m, m) =
          ops[k] - lam * MatrixXcd::Identity(m, m);
    }
    Eigen::JacobiSVD<MatrixXcd> svd(stack, Eigen::ComputeFullV);
    w = svd.matrixV().col(m - 1);
    if (svd.singularValues()(m - 1) < 1e-14 * scale) break;
  }
  return w;
}

/* Common eigenvector of the span of a solvable operator algebra, by the
 * constructive Lie-theorem recursion: pick a codimension-one subalgebra S'
 * containing all commutators, find its joint eigenspace W through a common
 * eigenvector, and take an eigenvector of the remaining operator inside W. */
VectorXcd common_eigvec(const std::vector<MatrixXcd>& ops, double tol) {
  const int m = ops.empty() ? 1 : static_cast<int>(ops[0].rows());
  // Orthonormal basis of the operator span.
  MatrixXcd stacked(m * m, static_cast<int>(ops.size()));
  for (size_t i = 0; i < ops.size(); ++i)
    stacked.col(static_cast<int>(i)) = Eigen::Map<const VectorXcd>(ops[i].data(), m * m);
  MatrixXcd span = complex_column_span(stacked, 1e-10);
  const int q = static_cast<int>(span.cols());
  if (q == 0) return VectorXcd::Unit(m, 0);

  std::vector<MatrixXcd> basis(q);
  for (int i = 0; i < q; ++i)
    basis[i] = Eigen::Map<const MatrixXcd>(span.col(i).data(), m, m);

  VectorXcd w;
  bool have = false;

  // Joint kernel first: a weight-zero eigenvector needs no eigenvalue
  // estimate. Eigenpairs of nearly nilpotent operators carry pseudo-
  // eigenvalues of size eps^(1/k) (perturbed Jordan blocks), which would
  // poison the weight-space step of the caller; the kernel SVD does not.
  {
    MatrixXcd kstack(q * m, m);
    for (int i = 0; i < q; ++i) kstack.middleRows(i * m, m) = basis[i];
    MatrixXcd kernel = complex_null_space(kstack, 1e-8);
    if (kernel.cols() > 0) {
      w = kernel.col(0);
      have = true;
    }
  }

  if (!have) {
    // Span of commutators, expressed in coordinates of the operator span.
    // Commutators of a near-Lie family stick slightly out of the span; the
    // coordinate form discards that noise and makes the complement below
    // have dimension exactly q - r instead of rank-thresholding it.
    MatrixXcd comms(m * m, q * (q - 1) / 2);
    int cidx = 0;
    for (int a = 0; a < q; ++a)
      for (int b = a + 1; b < q; ++b) {
        MatrixXcd c = basis[a] * basis[b] - basis[b] * basis[a];
        comms.col(cidx++) = Eigen::Map<const VectorXcd>(c.data(), m * m);
      }
    int r = 0;
    MatrixXcd dspan_c = complex_column_span(span.adjoint() * comms.leftCols(cidx), 1e-10, &r);
    if (r >= q) throw FlagError();
    MatrixXcd proj = MatrixXcd::Identity(q, q) - dspan_c * dspan_c.adjoint();
    // Orthogonal projector: singular values are exactly 0 and 1.
    MatrixXcd compl_c = complex_column_span(proj, 0.5);

    // Codimension-one subalgebra S' and the leftover direction z.
    std::vector<MatrixXcd> sub;
    for (int i = 0; i < r; ++i) {
      VectorXcd v = span * dspan_c.col(i);
      sub.push_back(Eigen::Map<const MatrixXcd>(v.data(), m, m));
    }
    for (int i = 0; i + 1 < q - r; ++i) {
      VectorXcd v = span * compl_c.col(i);
      sub.push_back(Eigen::Map<const MatrixXcd>(v.data(), m, m));
    }
    VectorXcd zvec = span * compl_c.col(q - r - 1);
    MatrixXcd z = Eigen::Map<const MatrixXcd>(zvec.data(), m, m);

    MatrixXcd W;
    if (sub.empty()) {
      W = MatrixXcd::Identity(m, m);
    } else {
      VectorXcd v0 = common_eigvec(sub, tol);
      // Joint eigenspace of S' through v0.
      MatrixXcd stack(static_cast<int>(sub.size()) * m, m);
      for (size_t k = 0; k < sub.size(); ++k) {
        std::complex<double> lam = v0.adjoint() * sub[k] * v0;
        stack.middleRows(static_cast<int>(k) * m, m) =
            sub[k] - lam * MatrixXcd::Identity(m, m);
      }
      W = complex_null_space(stack, 1e-8);
      if (W.cols() == 0) throw FlagError();
      // z maps W into W up to the defect of the computed eigenspace. A
      // coarse gate suffices here: the polish below repairs eps^(1/k)
      // drift and the verification at the end is what actually gates.
      double leak = ((MatrixXcd::Identity(m, m) - W * W.adjoint()) * (z * W)).norm();
      if (leak > 1e-3 * (1.0 + z.norm())) throw FlagError();
    }
    MatrixXcd zw = W.adjoint() * z * W;
    Eigen::ComplexEigenSolver<MatrixXcd> es(zw);
    int pick = 0;
    for (int i = 1; i < es.eigenvalues().size(); ++i) {
      auto a = es.eigenvalues()(i), b = es.eigenvalues()(pick);
      if (a.real() > b.real() + 1e-12 ||
          (std::abs(a.real() - b.real()) <= 1e-12 && a.imag() > b.imag()))
        pick = i;
    }
    w = W * es.eigenvectors().col(pick);
  }

  w = polish_eigvec(ops, w);
  // Verify it is a common eigenvector of the full span.
  for (const auto& op : ops) {
    std::complex<double> lam = w.adjoint() * op * w;
    if ((op * w - lam * w).norm() > tol * (1.0 + op.norm())) throw FlagError();
  }
  return w;
}

} // namespace

bool Subspace::contains(const VectorXd& v, double tol) const {
  return (v - basis * (basis.transpose() * v)).norm() <= tol * (1.0 + v.norm());
}

bool Subspace::contains(const Subspace& other, double tol) const {
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(other.basis.col(i), tol)) return false;
  return true;
}

LieAlgebra::LieAlgebra(int dim, std::string name)
    : dim_(dim), name_(std::move(name)), frame_(Frame::standard(dim)) {
  if (dim < 0) throw std::invalid_argument("negative dimension");
  table_.assign(dim * (dim - 1) / 2, VectorXd::Zero(dim));
}

LieAlgebra LieAlgebra::abelian(int dim, std::string name) {
  return LieAlgebra(dim, std::move(name));
}

int LieAlgebra::pair_index(int i, int j) const {
  // 1-based i < j; pairs ordered (1,2), (1,3), ..., (1,n), (2,3), ...
  return (i - 1) * dim_ - (i * (i + 1)) / 2 + j - 1;
}

void LieAlgebra::set_bracket(int i, int j, const VectorXd& value) {
  if (i < 1 || j <= i || j > dim_) throw std::invalid_argument("set_bracket: need 1 <= i < j <= n");
  if (value.size() != dim_) throw std::invalid_argument("set_bracket: value dim mismatch");
  table_[pair_index(i, j)] = value;
}

VectorXd LieAlgebra::bracket_basis(int i, int j) const {
  if (i == j) return VectorXd::Zero(dim_);
  if (i < j) return table_[pair_index(i, j)];
  return -table_[pair_index(j, i)];
}

VectorXd LieAlgebra::bracket(const VectorXd& x, const VectorXd& y) const {
  VectorXd out = VectorXd::Zero(dim_);
  for (int i = 1; i <= dim_; ++i) {
    if (x(i - 1) == 0.0 && y(i - 1) == 0.0) continue;
    for (int j = i + 1; j <= dim_; ++j) {
      double c = x(i - 1) * y(j - 1) - x(j - 1) * y(i - 1);
      if (c != 0.0) out += c * table_[pair_index(i, j)];
    }
  }
  return out;
}

MatrixXd LieAlgebra::ad(const VectorXd& x) const {
  MatrixXd m(dim_, dim_);
  for (int j = 1; j <= dim_; ++j) m.col(j - 1) = bracket(x, VectorXd::Unit(dim_, j - 1));
  return m;
}

MatrixXd LieAlgebra::ad_basis(int i) const { return ad(VectorXd::Unit(dim_, i - 1)); }

double LieAlgebra::jacobi_residual() const {
  double worst = 0.0;
  for (int i = 1; i <= dim_; ++i)
    for (int j = i + 1; j <= dim_; ++j)
      for (int k = j + 1; k <= dim_; ++k) {
        VectorXd r = bracket(bracket_basis(i, j), VectorXd::Unit(dim_, k - 1)) +
                     bracket(bracket_basis(j, k), VectorXd::Unit(dim_, i - 1)) +
                     bracket(bracket_basis(k, i), VectorXd::Unit(dim_, j - 1));
        worst = std::max(worst, r.norm());
      }
  return worst;
}

KForm LieAlgebra::ce_d(const KForm& a) const {
  if (a.frame()->dim() != dim_)
    throw std::invalid_argument("ce_d: form frame dimension mismatch");
  // de^k = -sum_{i<j} c^k_{ij} e^{ij}
  std::vector<KForm> d1;
  d1.reserve(dim_);
  for (int k = 1; k <= dim_; ++k) {
    KForm f(a.frame(), 2);
    for (int i = 1; i <= dim_; ++i)
      for (int j = i + 1; j <= dim_; ++j) {
        double c = table_[pair_index(i, j)](k - 1);
        if (c != 0.0)
          f.accumulate((KForm::Mask(1) << (i - 1)) | (KForm::Mask(1) << (j - 1)), -c);
      }
    f.normalize();
    d1.push_back(std::move(f));
  }
  KForm out(a.frame(), a.degree() + 1);
  for (const auto& [m, c] : a.terms()) {
    auto idx = KForm::mask_indices(m);
    for (size_t p = 0; p < idx.size(); ++p) {
      double sign = (p % 2 == 0) ? 1.0 : -1.0;
      KForm rest = KForm::monomial(a.frame(), [&] {
        std::vector<int> v;
        for (size_t t = 0; t < idx.size(); ++t)
          if (t != p) v.push_back(idx[t]);
        return v;
      }());
      KForm piece = wedge(d1[idx[p] - 1], rest);
      for (const auto& [pm, pc] : piece.terms()) out.accumulate(pm, c * sign * pc);
    }
  }
  out.normalize();
  return out;
}

MatrixXd LieAlgebra::d_matrix(int k) const {
  auto dom = KForm::basis_masks(dim_, k);
  auto cod = KForm::basis_masks(dim_, k + 1);
  MatrixXd m = MatrixXd::Zero(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
  FramePtr fr = Frame::standard(dim_);
  for (size_t c = 0; c < dom.size(); ++c) {
    KForm base = KForm::from_mask_terms(fr, k, {{dom[c], 1.0}});
    KForm img = ce_d(base);
    for (size_t r = 0; r < cod.size(); ++r) m(static_cast<int>(r), static_cast<int>(c)) = img.coeff(cod[r]);
  }
  return m;
}

BettiResult LieAlgebra::betti(double rank_tol) const {
  BettiResult out;
  std::vector<int> rank(dim_ + 1, 0); // rank of d_k: Lambda^k -> Lambda^{k+1}
  for (int k = 0; k < dim_; ++k) {
    RankDecision dec = svd_rank(d_matrix(k), rank_tol);
    rank[k] = dec.rank;
    if (!dec.stable) out.stable = false;
  }
  auto binom = [&](int k) {
    double v = 1;
    for (int i = 0; i < k; ++i) v = v * (dim_ - i) / (i + 1);
    return static_cast<int>(std::lround(v));
  };
  out.b.resize(dim_ + 1);
  for (int k = 0; k <= dim_; ++k) {
    int ker = binom(k) - (k < dim_ ? rank[k] : 0);
    int im = (k > 0) ? rank[k - 1] : 0;
    out.b[k] = ker - im;
  }
  return out;
}

bool LieAlgebra::unimodular(double tol, double* witness) const {
  double worst = 0.0;
  for (int i = 1; i <= dim_; ++i) worst = std::max(worst, std::abs(ad_basis(i).trace()));
  if (witness) *witness = worst;
  return worst <= tol;
}

namespace {

Subspace full_space(int n) { return Subspace{MatrixXd::Identity(n, n)}; }

Subspace bracket_span(const LieAlgebra& L, const Subspace& a, const Subspace& b,
                      double rank_tol) {
  std::vector<VectorXd> gens;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) gens.push_back(L.bracket(a.basis.col(i), b.basis.col(j)));
  MatrixXd m(L.dim(), static_cast<int>(gens.size()));
  for (size_t i = 0; i < gens.size(); ++i) m.col(static_cast<int>(i)) = gens[i];
  return Subspace{column_span(m, rank_tol)};
}

} // namespace

std::vector<Subspace> LieAlgebra::derived_series(double rank_tol) const {
  std::vector<Subspace> out{full_space(dim_)};
  while (true) {
    const Subspace& cur = out.back();
    Subspace next = bracket_span(*this, cur, cur, rank_tol);
    if (next.dim() == cur.dim() || next.dim() == 0) {
      out.push_back(next);
      break;
    }
    out.push_back(next);
  }
  return out;
}

std::vector<Subspace> LieAlgebra::lower_central_series(double rank_tol) const {
  std::vector<Subspace> out{full_space(dim_)};
  while (true) {
    const Subspace& cur = out.back();
    Subspace next = bracket_span(*this, out.front(), cur, rank_tol);
    if (next.dim() == cur.dim() || next.dim() == 0) {
      out.push_back(next);
      break;
    }
    out.push_back(next);
  }
  return out;
}

bool LieAlgebra::is_solvable(double rank_tol) const {
  auto s = derived_series(rank_tol);
  return s.back().dim() == 0;
}

std::optional<int> LieAlgebra::nilpotency_degree(double rank_tol) const {
  if (dim_ == 0) return 0;
  auto s = lower_central_series(rank_tol);
  if (s.back().dim() != 0) return std::nullopt;
  // s = {C^1 = L, C^2, ..., C^{k+1} = 0}; degree k = number of nonzero terms.
  return static_cast<int>(s.size()) - 1;
}

LieAlgebra LieAlgebra::subalgebra(const Subspace& s, double tol) const {
  const int k = s.dim();
  LieAlgebra sub(k, name_ + "|sub");
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      VectorXd w = bracket(s.basis.col(i - 1), s.basis.col(j - 1));
      VectorXd c = s.basis.transpose() * w;
      if ((w - s.basis * c).norm() > tol * (1.0 + w.norm()))
        throw std::invalid_argument("subalgebra: subspace not closed under bracket");
      sub.set_bracket(i, j, c);
    }
  return sub;
}

Eigen::MatrixXcd LieAlgebra::flag_weights() const {
  const int n = dim_;
  std::vector<MatrixXcd> ops(n);
  for (int i = 1; i <= n; ++i) ops[i - 1] = ad_basis(i).cast<std::complex<double>>();
  MatrixXcd flag(n, 0);
  MatrixXcd weights = MatrixXcd::Zero(n, n);
  for (int step = 0; step < n; ++step) {
    MatrixXcd Q;
    if (flag.cols() == 0) {
      Q = MatrixXcd::Identity(n, n);
    } else {
      Eigen::JacobiSVD<MatrixXcd> svd(flag, Eigen::ComputeFullU);
      Q = svd.matrixU().rightCols(n - static_cast<int>(flag.cols()));
    }
    std::vector<MatrixXcd> comp(n);
    for (int i = 0; i < n; ++i) comp[i] = Q.adjoint() * ops[i] * Q;
    VectorXcd v = common_eigvec(comp, 1e-8);
    for (int i = 0; i < n; ++i) weights(step, i) = (v.adjoint() * comp[i] * v).value();
    MatrixXcd grown(n, flag.cols() + 1);
    grown << flag, Q * v;
    flag = grown;
  }
  return weights;
}

Subspace LieAlgebra::nilradical(double rank_tol) const {
  MatrixXcd w = flag_weights();
  MatrixXd stacked(2 * dim_, dim_);
  stacked << w.real(), w.imag();
  return Subspace{null_space(stacked, rank_tol)};
}

bool LieAlgebra::is_completely_solvable(double tol) const {
  return flag_weights().imag().cwiseAbs().maxCoeff() <= tol;
}

std::vector<MatrixXd> LieAlgebra::derivations(double rank_tol) const {
  const int n = dim_;
  const int npairs = n * (n - 1) / 2;
  MatrixXd sys = MatrixXd::Zero(npairs * n, n * n); // vec(D) column-major: D(r,c) at c*n+r
  int row0 = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j, row0 += n) {
      VectorXd w = bracket_basis(i, j);
      for (int k = 0; k < n; ++k) {
        for (int m0 = 0; m0 < n; ++m0) {
          // D[e_i,e_j] term: + D(k, m) w_m
          sys(row0 + k, m0 * n + k) += w(m0);
          // -[D e_i, e_j]: - D(m, i) c_k(m, j)
          sys(row0 + k, (i - 1) * n + m0) -= bracket_basis(m0 + 1, j)(k);
          // -[e_i, D e_j]: - D(m, j) c_k(i, m)
          sys(row0 + k, (j - 1) * n + m0) -= bracket_basis(i, m0 + 1)(k);
        }
      }
    }
  MatrixXd ns = null_space(sys, rank_tol);
  std::vector<MatrixXd> out;
  for (int c = 0; c < ns.cols(); ++c)
    out.push_back(Eigen::Map<const MatrixXd>(ns.col(c).data(), n, n));
  return out;
}

int LieAlgebra::skew_derivations_dim(double rank_tol) const {
  auto ders = derivations(rank_tol);
  if (ders.empty()) return 0;
  const int n = dim_;
  MatrixXd sym(n * n, static_cast<int>(ders.size()));
  for (size_t a = 0; a < ders.size(); ++a) {
    MatrixXd s = 0.5 * (ders[a] + ders[a].transpose());
    sym.col(static_cast<int>(a)) = Eigen::Map<const VectorXd>(s.data(), n * n);
  }
  return static_cast<int>(null_space(sym, rank_tol).cols());
}

std::vector<std::complex<double>> LieAlgebra::projective_spectrum(const VectorXd& x,
                                                                  const Subspace& s,
                                                                  double tol) const {
  MatrixXd a = ad(x);
  MatrixXd img = a * s.basis;
  MatrixXd compressed = s.basis.transpose() * img;
  if ((img - s.basis * compressed).cwiseAbs().maxCoeff() > tol * (1.0 + a.norm()))
    throw std::invalid_argument("projective_spectrum: subspace not ad(x)-invariant");
  return canonical_projective_spectrum(eigenvalues(compressed));
}

} // namespace g2cert
