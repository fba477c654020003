#include "g2cert/kform.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace g2cert {

namespace {

int popcount(KForm::Mask m) { return std::popcount(m); }

void check_same_frame(const KForm& a, const KForm& b) {
  if (a.frame().get() != b.frame().get() && !a.frame()->same_as(*b.frame()))
    throw std::invalid_argument("forms live on different frames");
}

} // namespace

KForm::KForm(FramePtr frame, int degree) : frame_(std::move(frame)), degree_(degree) {
  if (!frame_) throw std::invalid_argument("null frame");
  if (degree < 0) throw std::invalid_argument("negative form degree");
}

KForm KForm::monomial(FramePtr frame, std::initializer_list<int> idx, double c) {
  return monomial(std::move(frame), std::vector<int>(idx), c);
}

KForm KForm::monomial(FramePtr frame, const std::vector<int>& idx, double c) {
  KForm f(std::move(frame), static_cast<int>(idx.size()));
  Mask m = 0;
  int prev = 0;
  for (int i : idx) {
    if (i <= prev || i > f.frame_->dim())
      throw std::invalid_argument("monomial indices must be strictly increasing and in range");
    m |= Mask(1) << (i - 1);
    prev = i;
  }
  f.accumulate(m, c);
  f.normalize();
  return f;
}

KForm KForm::from_mask_terms(FramePtr frame, int degree, const std::map<Mask, double>& terms) {
  KForm f(std::move(frame), degree);
  for (const auto& [m, c] : terms) {
    if (popcount(m) != degree) throw std::invalid_argument("mask degree mismatch");
    f.accumulate(m, c);
  }
  f.normalize();
  return f;
}

double KForm::coeff(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

double KForm::coeff(std::initializer_list<int> idx) const {
  Mask m = 0;
  for (int i : idx) m |= Mask(1) << (i - 1);
  return coeff(m);
}

void KForm::accumulate(Mask m, double c) { terms_[m] += c; }

void KForm::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < kDedupEps)
      it = terms_.erase(it);
    else
      ++it;
  }
}

KForm KForm::operator+(const KForm& o) const {
  check_same_frame(*this, o);
  if (degree_ != o.degree_) throw std::invalid_argument("degree mismatch in form sum");
  KForm r = *this;
  for (const auto& [m, c] : o.terms_) r.accumulate(m, c);
  r.normalize();
  return r;
}

KForm KForm::operator-(const KForm& o) const { return *this + (o * -1.0); }

KForm KForm::operator*(double s) const {
  KForm r(frame_, degree_);
  for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
  r.normalize();
  return r;
}

KForm KForm::operator-() const { return *this * -1.0; }

double KForm::evaluate(const std::vector<Eigen::VectorXd>& vectors) const {
  if (static_cast<int>(vectors.size()) != degree_)
    throw std::invalid_argument("evaluate: wrong number of vectors");
  if (degree_ == 0) return terms_.empty() ? 0.0 : terms_.begin()->second;
  const int k = degree_;
  Eigen::MatrixXd minor(k, k);
  double total = 0.0;
  for (const auto& [m, c] : terms_) {
    auto idx = mask_indices(m);
    for (int r = 0; r < k; ++r)
      for (int s = 0; s < k; ++s) minor(r, s) = vectors[s](idx[r] - 1);
    total += c * minor.determinant();
  }
  return total;
}

Eigen::VectorXd KForm::coefficient_vector() const {
  auto masks = basis_masks(frame_->dim(), degree_);
  Eigen::VectorXd v(masks.size());
  for (size_t i = 0; i < masks.size(); ++i) v(i) = coeff(masks[i]);
  return v;
}

std::vector<KForm::Mask> KForm::basis_masks(int dim, int degree) {
  std::vector<Mask> out;
  if (degree < 0 || degree > dim) return out;
  const Mask top = Mask(1) << dim;
  for (Mask m = 0; m < top; ++m)
    if (popcount(m) == degree) out.push_back(m);
  return out;
}

std::vector<int> KForm::mask_indices(Mask m) {
  std::vector<int> idx;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1u) idx.push_back(i + 1);
  return idx;
}

KForm::Mask KForm::indices_mask(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask(1) << (i - 1);
  return m;
}

std::string KForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  os.precision(17);
  for (const auto& [m, c] : terms_) {
    if (!first) os << (c >= 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    os << std::abs(c);
    if (degree_ > 0) {
      os << "*e^{";
      for (int i : mask_indices(m)) os << i;
      os << "}";
    }
  }
  return os.str();
}

int merge_sign(KForm::Mask a, KForm::Mask b) {
  int inv = 0;
  KForm::Mask bb = b;
  while (bb != 0) {
    int j = std::countr_zero(bb);
    bb &= bb - 1;
    inv += popcount(a >> (j + 1));
  }
  return (inv % 2 == 0) ? 1 : -1;
}

KForm wedge(const KForm& a, const KForm& b) {
  check_same_frame(a, b);
  KForm r(a.frame(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      r.accumulate(ma | mb, ca * cb * merge_sign(ma, mb));
    }
  r.normalize();
  return r;
}

KForm contract(const Eigen::VectorXd& v, const KForm& a) {
  if (a.degree() < 1) throw std::invalid_argument("contract: form degree must be >= 1");
  if (v.size() != a.frame()->dim()) throw std::invalid_argument("contract: vector dim mismatch");
  KForm r(a.frame(), a.degree() - 1);
  for (const auto& [m, c] : a.terms()) {
    KForm::Mask rest = m;
    int pos = 0;
    while (rest != 0) {
      int i = std::countr_zero(rest);
      rest &= rest - 1;
      double vi = v(i);
      if (vi != 0.0) {
        int sign = (pos % 2 == 0) ? 1 : -1;
        r.accumulate(m & ~(KForm::Mask(1) << i), c * vi * sign);
      }
      ++pos;
    }
  }
  r.normalize();
  return r;
}

KForm hodge(const KForm& a) {
  const int n = a.frame()->dim();
  const int k = a.degree();
  if (k > n) return KForm::zero(a.frame(), 0);
  const KForm::Mask full = (KForm::Mask(1) << n) - 1;
  KForm r(a.frame(), n - k);
  if (a.frame()->identity_metric()) {
    for (const auto& [m, c] : a.terms())
      r.accumulate(full & ~m, c * merge_sign(m, full & ~m));
    r.normalize();
    return r;
  }
  const Eigen::MatrixXd H = a.frame()->metric().inverse();
  const double volc = std::sqrt(a.frame()->metric().determinant());
  auto masks = KForm::basis_masks(n, k);
  for (KForm::Mask mi : masks) {
    auto I = KForm::mask_indices(mi);
    double acc = 0.0;
    Eigen::MatrixXd sub(k, k);
    for (const auto& [mj, c] : a.terms()) {
      auto J = KForm::mask_indices(mj);
      for (int r0 = 0; r0 < k; ++r0)
        for (int s0 = 0; s0 < k; ++s0) sub(r0, s0) = H(I[r0] - 1, J[s0] - 1);
      acc += c * (k == 0 ? 1.0 : sub.determinant());
    }
    if (acc != 0.0)
      r.accumulate(full & ~mi, volc * merge_sign(mi, full & ~mi) * acc);
  }
  r.normalize();
  return r;
}

double form_norm2(const KForm& a) {
  double s = 0.0;
  for (const auto& [m, c] : a.terms()) s += c * c;
  return s;
}

double form_norm(const KForm& a) { return std::sqrt(form_norm2(a)); }

double form_inner(const KForm& a, const KForm& b) {
  check_same_frame(a, b);
  double s = 0.0;
  for (const auto& [m, c] : a.terms()) s += c * b.coeff(m);
  return s;
}

KForm pullback(const Eigen::MatrixXd& h, const KForm& a) {
  const int n = a.frame()->dim();
  if (h.rows() != n || h.cols() != n) throw std::invalid_argument("pullback: matrix dim mismatch");
  const int k = a.degree();
  KForm r(a.frame(), k);
  if (k == 0) return a;
  Eigen::MatrixXd minor(k, k);
  for (KForm::Mask mk : KForm::basis_masks(n, k)) {
    auto K = KForm::mask_indices(mk);
    double acc = 0.0;
    for (const auto& [mi, c] : a.terms()) {
      auto I = KForm::mask_indices(mi);
      for (int r0 = 0; r0 < k; ++r0)
        for (int s0 = 0; s0 < k; ++s0) minor(r0, s0) = h(I[r0] - 1, K[s0] - 1);
      acc += c * minor.determinant();
    }
    if (acc != 0.0) r.accumulate(mk, acc);
  }
  r.normalize();
  return r;
}

KForm derivation_action(const Eigen::MatrixXd& D, const KForm& a) {
  const int n = a.frame()->dim();
  if (D.rows() != n || D.cols() != n)
    throw std::invalid_argument("derivation_action: matrix dim mismatch");
  KForm r(a.frame(), a.degree());
  for (const auto& [m, c] : a.terms()) {
    KForm::Mask rest = m;
    int pos = 0;
    while (rest != 0) {
      int i = std::countr_zero(rest); // replace label i+1
      rest &= rest - 1;
      const KForm::Mask others = m & ~(KForm::Mask(1) << i);
      // e^{..i..} slot at position pos: = (-1)^pos e^{i} ^ e^{others}
      for (int mm = 0; mm < n; ++mm) {
        double d = D(i, mm);
        if (d == 0.0) continue;
        const KForm::Mask mb = KForm::Mask(1) << mm;
        if (others & mb) continue;
        int sign = ((pos % 2 == 0) ? 1 : -1) * merge_sign(mb, others);
        r.accumulate(others | mb, -c * d * sign);
      }
      ++pos;
    }
  }
  r.normalize();
  return r;
}

bool approx_equal(const KForm& a, const KForm& b, double tol) {
  return form_norm(a - b) <= tol;
}

} // namespace g2cert
