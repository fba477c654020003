#include "g2cert/classifier.hpp"

#include "g2cert/linalg.hpp"
#include "g2cert/lie_algebra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace g2cert {

namespace {

using Eigen::Matrix4cd;
using Eigen::VectorXd;
using Vector6d = Eigen::Matrix<double, 6, 1>;

Matrix4d unpack4(const VectorXd& x, int offset) {
  Matrix4d m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = x[offset + 4 * r + c];
  return m;
}

void pack4(const Matrix4d& m, VectorXd& x, int offset) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) x[offset + 4 * r + c] = m(r, c);
}

void push4(std::vector<double>& out, const Matrix4d& m) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out.push_back(m(r, c));
}

void push6(std::vector<double>& out, const Matrix6d& m) {
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) out.push_back(m(r, c));
}

void push_vec6(std::vector<double>& out, const Vector6d& v) {
  for (int i = 0; i < 6; ++i) out.push_back(v[i]);
}

/* X nilpotent (4x4): X^4 = 0 plus the low power traces to steer the solver. */
void push_nilpotent(std::vector<double>& out, const Matrix4d& x) {
  Matrix4d x2 = x * x;
  push4(out, x2 * x2);
  out.push_back(x2.trace());
  out.push_back((x2 * x).trace());
}

void common_residual(const Quadruple& q, std::vector<double>& out) {
  out.push_back(q.A.trace());
  out.push_back(q.B.trace());
  out.push_back(q.C.trace());

  const Vector6d tau = Vector6d::Unit(0);
  const Vector6d w7 = Vector6d::Unit(3), w3 = Vector6d::Unit(4), w4 = Vector6d::Unit(5);
  Matrix6d ta = theta(q.A), tb = theta(q.B), tc = theta(q.C);
  push_vec6(out, ta * tau - w7 / 3.0);
  push_vec6(out, tb * tau - w3 / 3.0);
  push_vec6(out, tc * tau - w4 / 3.0);
  push_vec6(out, ta * w7 + tb * w3 + tc * w4 - tau - q.A1.trace() * w7);

  const double a = q.A1(0, 0), b = q.A1(0, 1), c = q.A1(1, 0), d = q.A1(1, 1);
  Matrix6d r = ta * tb - tb * ta - a * tb - c * tc;
  Matrix6d s = ta * tc - tc * ta - b * tb - d * tc;
  Matrix6d t = tb * tc - tc * tb;
  push6(out, r);
  push6(out, s);
  push6(out, t);
}

Quadruple unpack_case(CaseId id, const VectorXd& x) {
  Quadruple q;
  q.A = unpack4(x, 0);
  q.B = unpack4(x, 16);
  q.C = unpack4(x, 32);
  switch (id) {
    case CaseId::N4:
      q.A1 = Matrix2d::Zero();
      break;
    case CaseId::N5:
      q.A1 << 0, 0, 0, x[48];
      break;
    case CaseId::N6Sym:
      q.A1 << x[48], 0, 0, x[49];
      break;
    case CaseId::N6Rot:
      q.A1 << x[48], x[49], -x[49], x[48];
      break;
  }
  return q;
}

} // namespace

std::string case_name(CaseId id) {
  switch (id) {
    case CaseId::N4: return "4";
    case CaseId::N5: return "5";
    case CaseId::N6Sym: return "6";
    case CaseId::N6Rot: return "6rot";
  }
  return "?";
}

std::optional<CaseId> case_from_name(const std::string& name) {
  if (name == "4") return CaseId::N4;
  if (name == "5") return CaseId::N5;
  if (name == "6" || name == "6sym") return CaseId::N6Sym;
  if (name == "6rot") return CaseId::N6Rot;
  return std::nullopt;
}

ConstraintSystem build_system(CaseId id) {
  ConstraintSystem sys;
  sys.id = id;
  switch (id) {
    case CaseId::N4: sys.unknowns = 48; break;
    case CaseId::N5: sys.unknowns = 49; break;
    case CaseId::N6Sym:
    case CaseId::N6Rot: sys.unknowns = 50; break;
  }

  sys.unpack = [id](const VectorXd& x) { return unpack_case(id, x); };

  sys.pack = [id](const Quadruple& q) {
    int n = id == CaseId::N4 ? 48 : (id == CaseId::N5 ? 49 : 50);
    VectorXd x(n);
    pack4(q.A, x, 0);
    pack4(q.B, x, 16);
    pack4(q.C, x, 32);
    switch (id) {
      case CaseId::N4: break;
      case CaseId::N5: x[48] = q.A1(1, 1); break;
      case CaseId::N6Sym:
        x[48] = q.A1(0, 0);
        x[49] = q.A1(1, 1);
        break;
      case CaseId::N6Rot:
        x[48] = q.A1(0, 0);
        x[49] = q.A1(0, 1);
        break;
    }
    return x;
  };

  sys.residual = [id](const VectorXd& x) -> VectorXd {
    Quadruple q = unpack_case(id, x);
    std::vector<double> out;
    out.reserve(200);
    common_residual(q, out);
    switch (id) {
      case CaseId::N4: {
        push4(out, q.A - q.A.transpose());
        push4(out, q.B - q.B.transpose());
        push4(out, q.C - q.C.transpose());
        out.push_back(3.0 * q.A.squaredNorm() - 1.0);
        out.push_back(3.0 * q.B.squaredNorm() - 1.0);
        out.push_back(3.0 * q.C.squaredNorm() - 1.0);
        out.push_back(3.0 * (q.A.transpose() * q.B).trace());
        out.push_back(3.0 * (q.A.transpose() * q.C).trace());
        out.push_back(3.0 * (q.B.transpose() * q.C).trace());
        break;
      }
      case CaseId::N5: {
        push4(out, q.A - q.A.transpose());
        push4(out, q.B - q.B.transpose());
        push_nilpotent(out, q.C);
        break;
      }
      case CaseId::N6Sym: {
        push4(out, q.A - q.A.transpose());
        push_nilpotent(out, q.B);
        push_nilpotent(out, q.C);
        break;
      }
      case CaseId::N6Rot: {
        push4(out, q.A * q.A.transpose() - q.A.transpose() * q.A);
        push_nilpotent(out, q.B);
        push_nilpotent(out, q.C);
        break;
      }
    }
    return Eigen::Map<VectorXd>(out.data(), static_cast<long>(out.size())).eval();
  };

  switch (id) {
    case CaseId::N4:
      sys.admissible = [](const Quadruple&) { return true; };
      break;
    case CaseId::N5:
      sys.admissible = [](const Quadruple& q) { return q.A1(1, 1) > 1e-8; };
      break;
    case CaseId::N6Sym:
      sys.admissible = [](const Quadruple& q) {
        double a = q.A1(0, 0), d = q.A1(1, 1);
        return a <= d + 1e-9 && a + d > 1e-8;
      };
      break;
    case CaseId::N6Rot:
      sys.admissible = [](const Quadruple& q) {
        return q.A1(0, 0) > 1e-8 && std::abs(q.A1(0, 1)) > 1e-8;
      };
      break;
  }
  return sys;
}

namespace {

std::vector<std::complex<double>> sorted_spectrum(const Eigen::MatrixXd& m, double sign) {
  std::vector<std::complex<double>> ev = eigenvalues(sign * m);
  std::sort(ev.begin(), ev.end(), [](const std::complex<double>& p, const std::complex<double>& q) {
    if (p.real() != q.real()) return p.real() > q.real();
    return p.imag() > q.imag();
  });
  return ev;
}

bool lex_greater(const std::vector<std::complex<double>>& p,
                 const std::vector<std::complex<double>>& q) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i].real() != q[i].real()) return p[i].real() > q[i].real();
    if (p[i].imag() != q[i].imag()) return p[i].imag() > q[i].imag();
  }
  return false;
}

} // namespace

Fingerprint fingerprint(const Quadruple& q) {
  Fingerprint fp;
  fp.tr_a1_abs = std::abs(q.A1.trace());
  fp.norm2_a = q.A.squaredNorm();
  fp.norm2_bc = q.B.squaredNorm() + q.C.squaredNorm();

  Matrix4cd bc = q.B.cast<std::complex<double>>() +
                 std::complex<double>(0, 1) * q.C.cast<std::complex<double>>();
  fp.tr_bc_cubed_abs = std::abs((bc * bc * bc).trace());
  fp.tr_b3 = (q.B * q.B * q.B).trace();
  fp.tr_c3 = (q.C * q.C * q.C).trace();

  /* The orientation-reversing equivalence negates both spectra at once; pick
   * the representative with tr A1 >= 0, falling back to a lexicographic rule
   * on spec(A) when the trace does not decide. */
  double sign = 1.0;
  if (fp.tr_a1_abs > 1e-6) {
    sign = q.A1.trace() >= 0 ? 1.0 : -1.0;
  } else {
    std::vector<std::complex<double>> plus = sorted_spectrum(q.A, 1.0);
    std::vector<std::complex<double>> minus = sorted_spectrum(q.A, -1.0);
    sign = lex_greater(minus, plus) ? -1.0 : 1.0;
  }
  fp.spec_a1 = sorted_spectrum(q.A1, sign);
  fp.spec_a = sorted_spectrum(q.A, sign);

  LieAlgebra l = assemble_bracket(q, "candidate");
  try {
    fp.nilradical_dim = l.nilradical().dim();
  } catch (const std::runtime_error&) {
    fp.nilradical_dim = -1;
  }
  return fp;
}

Eigen::VectorXd Fingerprint::key() const {
  VectorXd k(17);
  k[0] = static_cast<double>(nilradical_dim);
  k[1] = tr_a1_abs;
  int at = 2;
  for (const auto& z : spec_a1) {
    k[at++] = z.real();
    k[at++] = z.imag();
  }
  for (const auto& z : spec_a) {
    k[at++] = z.real();
    k[at++] = z.imag();
  }
  k[at++] = norm2_a;
  k[at++] = norm2_bc;
  k[at++] = tr_bc_cubed_abs;
  return k;
}

double fingerprint_distance(const Fingerprint& a, const Fingerprint& b) {
  return (a.key() - b.key()).cwiseAbs().maxCoeff();
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

bool key_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (long i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

/* In the unimodular case the equivalence group is larger than the gauge
 * actions that fix the other cases: diag(h1, h2) with h1 in O(3) mixing the
 * triple (A, B, C) linearly while h2 in O(4) conjugates. Raw spectra are
 * therefore not class invariants there. For a commuting symmetric triple
 * with A1 = 0 and tr(X^t Y) = delta/3, the four joint weight rows always
 * form a regular tetrahedron (V^t V = I/3 and V^t 1 = 0 force the Gram
 * matrix), so aligning them against a fixed reference tetrahedron decides
 * membership in that single orbit and yields a canonical key. */

bool joint_weight_rows(const Quadruple& q, Eigen::Matrix<double, 4, 3>& V) {
  const Matrix4d* X[3] = {&q.A, &q.B, &q.C};
  static const double dirs[3][3] = {
      {0.455341801261480, 0.643942957058381, 0.614947808529404},
      {0.755688802397887, 0.337974188029511, 0.561104665646526},
      {0.408248290463863, 0.816496580927726, 0.408248290463863}};
  for (const auto& t : dirs) {
    Matrix4d m = t[0] * q.A + t[1] * q.B + t[2] * q.C;
    Eigen::SelfAdjointEigenSolver<Matrix4d> es(0.5 * (m + m.transpose()));
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < 4; ++i)
      gap = std::min(gap, es.eigenvalues()(i + 1) - es.eigenvalues()(i));
    if (gap < 1e-3) continue;
    Matrix4d u = es.eigenvectors();
    double off = 0.0;
    for (const Matrix4d* x : X) {
      Matrix4d d = u.transpose() * (*x) * u;
      Matrix4d strict = d - Matrix4d(d.diagonal().asDiagonal());
      off = std::max(off, strict.norm());
      for (int i = 0; i < 4; ++i) V(i, x == X[0] ? 0 : (x == X[1] ? 1 : 2)) = d(i, i);
    }
    if (off < 1e-6) return true;
  }
  return false;
}

double tetrahedron_align(const Eigen::Matrix<double, 4, 3>& V) {
  static const double s = 1.0 / (2.0 * std::sqrt(3.0));
  Eigen::Matrix<double, 4, 3> ref;
  ref << s, s, s, s, -s, -s, -s, s, -s, -s, -s, s;
  std::array<int, 4> p{0, 1, 2, 3};
  double best = std::numeric_limits<double>::infinity();
  do {
    Eigen::Matrix<double, 4, 3> pv;
    for (int i = 0; i < 4; ++i) pv.row(i) = V.row(p[i]);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(pv.transpose() * ref,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d rot = svd.matrixU() * svd.matrixV().transpose();
    best = std::min(best, (pv * rot - ref).norm());
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

Eigen::VectorXd class_key(const Quadruple& q, const Fingerprint& fp) {
  VectorXd key = fp.key();
  double flatness = q.A1.norm();
  for (const Matrix4d& x : {q.A, q.B, q.C}) {
    flatness = std::max(flatness, (x - x.transpose()).norm());
    flatness = std::max(flatness, std::abs(x.trace()));
    flatness = std::max(flatness, std::abs(x.squaredNorm() - 1.0 / 3.0));
  }
  flatness = std::max(flatness, (q.A * q.B - q.B * q.A).norm());
  flatness = std::max(flatness, (q.A * q.C - q.C * q.A).norm());
  flatness = std::max(flatness, (q.B * q.C - q.C * q.B).norm());
  if (flatness > 1e-7) return key;

  Eigen::Matrix<double, 4, 3> V;
  if (!joint_weight_rows(q, V)) return key;
  if (tetrahedron_align(V) > 1e-6) return key;

  /* Canonical gauge: A = diag of the reference tetrahedron's first column,
   * so spec(A) = {s, s, -s, -s} with s = 1/(2 sqrt(3)), and tr(B+iC)^3 = 0. */
  static const double s = 1.0 / (2.0 * std::sqrt(3.0));
  key[6] = s;
  key[7] = 0.0;
  key[8] = s;
  key[9] = 0.0;
  key[10] = -s;
  key[11] = 0.0;
  key[12] = -s;
  key[13] = 0.0;
  key[16] = 0.0;
  return key;
}

} // namespace

ClassifyOutcome solve_from_seeds(const ConstraintSystem& sys, int n_seeds,
                                 std::uint64_t rng_seed,
                                 const std::vector<RegistryCandidate>& candidates,
                                 const std::function<Quadruple(double, double)>& rt_builder,
                                 double dedup_tol, double match_tol) {
  ClassifyOutcome out;
  out.seeds_run = n_seeds;
  std::vector<VectorXd> keys;

  GNOptions opts;
  for (int idx = 0; idx < n_seeds; ++idx) {
    std::mt19937_64 rng(mix_seed(rng_seed, static_cast<std::uint64_t>(idx)));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    VectorXd x0(sys.unknowns);
    for (int i = 0; i < sys.unknowns; ++i) x0[i] = unit(rng);

    GNResult res = gauss_newton(sys.residual, x0, opts);
    if (!res.converged) continue;
    ++out.seeds_converged;

    Quadruple q = sys.unpack(res.x);
    if (!sys.admissible(q)) continue;
    Fingerprint fp = fingerprint(q);
    VectorXd key = class_key(q, fp);

    int home = -1;
    for (size_t ci = 0; ci < out.classes.size(); ++ci)
      if ((keys[ci] - key).cwiseAbs().maxCoeff() < dedup_tol) {
        home = static_cast<int>(ci);
        break;
      }
    if (home < 0) {
      out.classes.push_back(SolutionClass{fp, q, 0, res.residual_norm, res.rank_deficiency,
                                          std::string(), std::nullopt});
      keys.push_back(key);
      home = static_cast<int>(out.classes.size()) - 1;
    }
    SolutionClass& cls = out.classes[static_cast<size_t>(home)];
    ++cls.hits;
    if (res.residual_norm < cls.best_residual) {
      cls.best_residual = res.residual_norm;
      cls.representative = q;
      cls.fp = fp;
      cls.rank_deficiency = res.rank_deficiency;
      keys[static_cast<size_t>(home)] = key;
    }
  }

  std::vector<size_t> order(out.classes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return key_less(keys[a], keys[b]); });
  {
    std::vector<SolutionClass> sorted_classes;
    std::vector<VectorXd> sorted_keys;
    sorted_classes.reserve(order.size());
    sorted_keys.reserve(order.size());
    for (size_t i : order) {
      sorted_classes.push_back(std::move(out.classes[i]));
      sorted_keys.push_back(std::move(keys[i]));
    }
    out.classes = std::move(sorted_classes);
    keys = std::move(sorted_keys);
  }

  std::vector<VectorXd> cand_keys;
  cand_keys.reserve(candidates.size());
  for (const auto& cand : candidates) cand_keys.push_back(class_key(cand.q, fingerprint(cand.q)));

  for (size_t ci = 0; ci < out.classes.size(); ++ci) {
    SolutionClass& cls = out.classes[ci];
    for (size_t k = 0; k < candidates.size(); ++k)
      if ((keys[ci] - cand_keys[k]).cwiseAbs().maxCoeff() < match_tol) {
        cls.matched = candidates[k].name;
        break;
      }
    if (cls.matched.empty() && sys.id == CaseId::N6Rot && rt_builder) {
      /* The U0 gauge fixes every admissible solution in this branch, so the
       * parameters can be read off the representative directly. */
      double r = -3.0 * cls.representative.A1(0, 1);
      double t = -3.0 * cls.representative.A(0, 1);
      Quadruple qrt = rt_builder(r, t);
      if ((keys[ci] - class_key(qrt, fingerprint(qrt))).cwiseAbs().maxCoeff() < match_tol) {
        cls.matched = "mu_rt";
        cls.rt_estimate = std::make_pair(r, t);
      }
    }
  }
  return out;
}

} // namespace g2cert
