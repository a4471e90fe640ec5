#pragma once

// Linear maps between Hermitian-matrix spaces.
//
// Channel       Kraus form  X -> sum_i A_i X A_i^dagger (completely positive by construction).
// LinearMapRep  images of a fixed orthonormal Hermitian basis of H_n; used for maps that are
//               not completely positive, e.g. the transpose-rescaling family with t > 1/(n+1).
//
// Both act complex-linearly on all of M_n(C). Tensor products use the left-slow Kronecker
// convention of linalg.hpp.

#include "moe/bases.hpp"
#include "moe/linalg.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace moe {

struct ChannelFlags {
  bool trace_preserving = false;
  bool unital = false;
  bool completely_positive = false;
};

class Channel {
 public:
  explicit Channel(std::vector<ComplexMatrix> kraus, const Tolerances& tol = default_tolerances())
      : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw DomainError("Channel: empty Kraus list");
    const auto k = kraus_.front().rows();
    const auto n = kraus_.front().cols();
    if (k == 0 || n == 0) throw DomainError("Channel: empty Kraus operator");
    for (const auto& a : kraus_)
      if (a.rows() != k || a.cols() != n) throw DomainError("Channel: Kraus operators differ in shape");
    stacked_.resize(static_cast<Eigen::Index>(kraus_.size()) * k, n);
    for (std::size_t i = 0; i < kraus_.size(); ++i) stacked_.block(static_cast<Eigen::Index>(i) * k, 0, k, n) = kraus_[i];

    ComplexMatrix tp = -ComplexMatrix::Identity(n, n);
    for (const auto& a : kraus_) tp += a.adjoint() * a;
    flags_.trace_preserving = tp.norm() <= tol.channel;
    const ComplexMatrix mixed = apply(ComplexMatrix::Identity(n, n) / static_cast<double>(n));
    flags_.unital = (mixed - ComplexMatrix::Identity(k, k) / static_cast<double>(k)).norm() <= tol.channel;
    flags_.completely_positive = true;
  }

  int in_dim() const { return static_cast<int>(stacked_.cols()); }
  int out_dim() const { return static_cast<int>(kraus_.front().rows()); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  /// Kraus operators stacked vertically: ((count * out_dim) x in_dim).
  const ComplexMatrix& stacked() const { return stacked_; }
  const ChannelFlags& flags() const { return flags_; }

  ComplexMatrix apply(const ComplexMatrix& x) const {
    if (x.rows() != in_dim() || x.cols() != in_dim()) throw DomainError("Channel::apply: input dimension mismatch");
    ComplexMatrix out = ComplexMatrix::Zero(out_dim(), out_dim());
    for (const auto& a : kraus_) out.noalias() += a * x * a.adjoint();
    return out;
  }

  ComplexMatrix apply_adjoint(const ComplexMatrix& y) const {
    if (y.rows() != out_dim() || y.cols() != out_dim()) throw DomainError("Channel::apply_adjoint: dimension mismatch");
    ComplexMatrix out = ComplexMatrix::Zero(in_dim(), in_dim());
    for (const auto& a : kraus_) out.noalias() += a.adjoint() * y * a;
    return out;
  }

  /// Phi(psi psi^dagger) through the stacked Kraus block.
  ComplexMatrix apply_pure(const ComplexVector& psi) const {
    const ComplexVector v = stacked_ * psi;
    const Eigen::Map<const ComplexMatrix> w(v.data(), out_dim(), static_cast<Eigen::Index>(kraus_.size()));
    return w * w.adjoint();
  }

  /// Phi^dagger(y) psi without forming Phi^dagger(y).
  ComplexVector adjoint_times(const ComplexMatrix& y, const ComplexVector& psi) const {
    const ComplexVector v = stacked_ * psi;
    const Eigen::Map<const ComplexMatrix> w(v.data(), out_dim(), static_cast<Eigen::Index>(kraus_.size()));
    const ComplexMatrix yw = y * w;
    const Eigen::Map<const ComplexVector> flat(yw.data(), yw.size());
    return stacked_.adjoint() * flat;
  }

 private:
  std::vector<ComplexMatrix> kraus_;
  ComplexMatrix stacked_;
  ChannelFlags flags_;
};

/// Choi matrix J = sum_ij E_ij (x) Phi(E_ij), input factor slow.
template <class ApplyFn>
ComplexMatrix choi_from_apply(int n, int k, ApplyFn&& apply) {
  ComplexMatrix j = ComplexMatrix::Zero(n * k, n * k);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(a, b) = 1.0;
      j.block(a * k, b * k, k, k) = apply(e);
    }
  return j;
}

inline bool choi_is_psd(const ComplexMatrix& choi, const Tolerances& tol = default_tolerances()) {
  const double scale = std::max(1.0, max_abs(choi));
  return eigvals_hermitian(choi).minCoeff() >= -tol.positivity * scale;
}

class LinearMapRep {
 public:
  /// `basis` must be an orthonormal Hermitian basis of H_in (in_dim^2 elements) and
  /// images[i] = Phi(basis[i]) in H_out.
  LinearMapRep(int in_dim, int out_dim, std::vector<ComplexMatrix> basis, std::vector<ComplexMatrix> images,
               const Tolerances& tol = default_tolerances())
      : in_(in_dim), out_(out_dim), basis_(std::move(basis)), images_(std::move(images)) {
    if (in_ <= 0 || out_ <= 0) throw DomainError("LinearMapRep: non-positive dimension");
    const auto n2 = static_cast<std::size_t>(in_) * static_cast<std::size_t>(in_);
    if (basis_.size() != n2 || images_.size() != n2) throw DomainError("LinearMapRep: action list length must be n^2");
    for (std::size_t i = 0; i < n2; ++i) {
      if (basis_[i].rows() != in_ || basis_[i].cols() != in_) throw DomainError("LinearMapRep: basis element shape");
      if (images_[i].rows() != out_ || images_[i].cols() != out_) throw DomainError("LinearMapRep: image shape");
      require_hermitian(images_[i], "LinearMapRep image", 1e-10);
    }
    double tp_defect = 0;
    for (std::size_t i = 0; i < n2; ++i) tp_defect += std::norm(images_[i].trace() - basis_[i].trace());
    flags_.trace_preserving = std::sqrt(tp_defect) <= tol.channel;
    const ComplexMatrix mixed = apply(ComplexMatrix::Identity(in_, in_) / static_cast<double>(in_));
    flags_.unital = (mixed - ComplexMatrix::Identity(out_, out_) / static_cast<double>(out_)).norm() <= tol.channel;
    flags_.completely_positive = choi_is_psd(choi(), tol);
  }

  int in_dim() const { return in_; }
  int out_dim() const { return out_; }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }
  const std::vector<ComplexMatrix>& images() const { return images_; }
  const ChannelFlags& flags() const { return flags_; }

  ComplexMatrix apply(const ComplexMatrix& x) const {
    if (x.rows() != in_ || x.cols() != in_) throw DomainError("LinearMapRep::apply: input dimension mismatch");
    ComplexMatrix out = ComplexMatrix::Zero(out_, out_);
    for (std::size_t i = 0; i < basis_.size(); ++i) out += trace_product(basis_[i], x) * images_[i];
    return out;
  }

  ComplexMatrix apply_adjoint(const ComplexMatrix& y) const {
    if (y.rows() != out_ || y.cols() != out_) throw DomainError("LinearMapRep::apply_adjoint: dimension mismatch");
    ComplexMatrix out = ComplexMatrix::Zero(in_, in_);
    for (std::size_t i = 0; i < basis_.size(); ++i) out += trace_product(images_[i], y) * basis_[i];
    return out;
  }

  ComplexMatrix choi() const {
    return choi_from_apply(in_, out_, [this](const ComplexMatrix& e) { return apply(e); });
  }

 private:
  int in_;
  int out_;
  std::vector<ComplexMatrix> basis_;
  std::vector<ComplexMatrix> images_;
  ChannelFlags flags_;
};

using Map = std::variant<Channel, LinearMapRep>;

inline int in_dim(const Map& m) {
  return std::visit([](const auto& c) { return c.in_dim(); }, m);
}
inline int out_dim(const Map& m) {
  return std::visit([](const auto& c) { return c.out_dim(); }, m);
}
inline const ChannelFlags& flags(const Map& m) {
  return std::visit([](const auto& c) -> const ChannelFlags& { return c.flags(); }, m);
}
inline ComplexMatrix apply(const Map& m, const ComplexMatrix& x) {
  return std::visit([&](const auto& c) { return c.apply(x); }, m);
}
inline ComplexMatrix apply_adjoint(const Map& m, const ComplexMatrix& y) {
  return std::visit([&](const auto& c) { return c.apply_adjoint(y); }, m);
}
inline ComplexMatrix apply_pure(const Map& m, const ComplexVector& psi) {
  if (const auto* c = std::get_if<Channel>(&m)) return c->apply_pure(psi);
  return moe::apply(m, psi * psi.adjoint());
}
inline ComplexVector adjoint_times(const Map& m, const ComplexMatrix& y, const ComplexVector& psi) {
  if (const auto* c = std::get_if<Channel>(&m)) return c->adjoint_times(y, psi);
  return apply_adjoint(m, y) * psi;
}

inline ComplexMatrix choi_matrix(const Map& m) {
  return choi_from_apply(in_dim(m), out_dim(m), [&](const ComplexMatrix& e) { return moe::apply(m, e); });
}

/// Kraus operators from a PSD Choi matrix: A_l(a, i) = sqrt(lambda_l) v_l(i * k + a).
inline std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, int n, int k,
                                                  const Tolerances& tol = default_tolerances()) {
  if (choi.rows() != n * k || choi.cols() != n * k) throw DomainError("kraus_from_choi: shape mismatch");
  const auto eig = eig_hermitian(choi);
  const double scale = std::max(1.0, std::abs(eig.values(0)));
  if (eig.values.minCoeff() < -tol.positivity * scale) throw DomainError("kraus_from_choi: Choi matrix is not PSD");
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index l = 0; l < eig.values.size(); ++l) {
    if (eig.values(l) <= 1e-14 * scale) continue;
    ComplexMatrix a(k, n);
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < k; ++b) a(b, i) = std::sqrt(eig.values(l)) * eig.vectors(i * k + b, l);
    kraus.push_back(std::move(a));
  }
  if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(k, n));
  return kraus;
}

/// Basis-action representation of any map, on the Gell-Mann basis of H_n (with I/sqrt(n) first).
inline LinearMapRep to_linear_map(const Map& m) {
  if (const auto* r = std::get_if<LinearMapRep>(&m)) return *r;
  const int n = in_dim(m);
  auto basis = full_hermitian_basis(gellmann_basis(std::max(n, 2)));
  if (n == 1) basis = {ComplexMatrix::Identity(1, 1)};
  std::vector<ComplexMatrix> images;
  images.reserve(basis.size());
  for (const auto& b : basis) images.push_back(moe::apply(m, b));
  return LinearMapRep(n, out_dim(m), std::move(basis), std::move(images));
}

inline Channel tensor(const Channel& a, const Channel& b) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& x : a.kraus())
    for (const auto& y : b.kraus()) kraus.push_back(kron(x, y));
  return Channel(std::move(kraus));
}

inline LinearMapRep tensor(const LinearMapRep& a, const LinearMapRep& b) {
  std::vector<ComplexMatrix> basis, images;
  for (std::size_t i = 0; i < a.basis().size(); ++i)
    for (std::size_t j = 0; j < b.basis().size(); ++j) {
      basis.push_back(kron(a.basis()[i], b.basis()[j]));
      images.push_back(kron(a.images()[i], b.images()[j]));
    }
  return LinearMapRep(a.in_dim() * b.in_dim(), a.out_dim() * b.out_dim(), std::move(basis), std::move(images));
}

/// Kraus form whenever both factors are Kraus-given, otherwise a basis-action product.
inline Map tensor(const Map& a, const Map& b) {
  if (std::holds_alternative<Channel>(a) && std::holds_alternative<Channel>(b))
    return tensor(std::get<Channel>(a), std::get<Channel>(b));
  return tensor(to_linear_map(a), to_linear_map(b));
}

/// Complementary channel [Phi^C(rho)]_{ij} = Tr[A_i rho A_j^dagger].
///
/// Representative: with r Kraus operators A_i (k x n), the complement has k Kraus operators
/// B_a (r x n) whose i-th row is the a-th row of A_i. Kraus lists are used as given, so the
/// output dimension equals the number of Kraus operators supplied.
inline Channel complementary(const Channel& c) {
  const auto r = static_cast<Eigen::Index>(c.kraus().size());
  const int k = c.out_dim();
  const int n = c.in_dim();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) {
    ComplexMatrix b(r, n);
    for (Eigen::Index i = 0; i < r; ++i) b.row(i) = c.kraus()[static_cast<std::size_t>(i)].row(a);
    kraus.push_back(std::move(b));
  }
  return Channel(std::move(kraus));
}

// ---------------------------------------------------------------------------
// Named families

inline Channel identity_channel(int n) {
  if (n <= 0) throw DomainError("identity_channel: n must be positive");
  return Channel({ComplexMatrix::Identity(n, n)});
}

enum class Star { identity, transpose };

/// Psi(rho) = t rho^star + (1 - t) Tr(rho) I/n for |t| <= 1. Returned in Kraus form
/// (from the Choi matrix) when completely positive, otherwise as a LinearMapRep.
inline Map rescaling_map(int n, double t, Star star) {
  if (n < 1) throw DomainError("rescaling_map: n must be positive");
  if (!(std::abs(t) <= 1.0)) throw DomainError("rescaling_map: |t| must be <= 1");
  if (t == 1.0 && star == Star::identity) return identity_channel(n);
  auto act = [n, t, star](const ComplexMatrix& x) -> ComplexMatrix {
    const ComplexMatrix s = star == Star::identity ? ComplexMatrix(x) : ComplexMatrix(x.transpose());
    return t * s + (1.0 - t) * x.trace() / static_cast<double>(n) * ComplexMatrix::Identity(n, n);
  };
  const ComplexMatrix choi = choi_from_apply(n, n, act);
  if (choi_is_psd(choi)) return Channel(kraus_from_choi(choi, n, n));
  auto basis = n == 1 ? std::vector<ComplexMatrix>{ComplexMatrix::Identity(1, 1)}
                      : full_hermitian_basis(gellmann_basis(n));
  std::vector<ComplexMatrix> images;
  for (const auto& b : basis) images.push_back(act(b));
  return LinearMapRep(n, n, std::move(basis), std::move(images));
}

inline Map depolarizing_map(int n, double t) { return rescaling_map(n, t, Star::identity); }

/// Psi(rho) = (Tr(rho) I - rho^T) / (n - 1).
inline Channel werner_holevo_channel(int n) {
  if (n < 2) throw DomainError("werner_holevo_channel: n must be >= 2");
  return std::get<Channel>(rescaling_map(n, -1.0 / (n - 1), Star::transpose));
}

struct WeylWeight {
  int x;
  int y;
  double weight;
};

/// Discrete Weyl covariant channel sum p_{x,y} W_{x,y} rho W_{x,y}^dagger.
inline Channel dwcc_channel(int n, const std::vector<WeylWeight>& p) {
  if (n < 1) throw DomainError("dwcc: n must be positive");
  double total = 0;
  std::vector<ComplexMatrix> kraus;
  for (const auto& w : p) {
    if (w.x < 0 || w.x >= n || w.y < 0 || w.y >= n) throw DomainError("dwcc: Weyl index outside Z_n");
    if (w.weight < 0) throw DomainError("dwcc: negative weight");
    total += w.weight;
    if (w.weight > 0) kraus.push_back(std::sqrt(w.weight) * weyl_operator(n, w.x, w.y));
  }
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("dwcc: weights must sum to 1");
  return Channel(std::move(kraus));
}

inline void require_distinct_pairs(const std::vector<std::pair<int, int>>& pairs, int n) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].first < 0 || pairs[i].first >= n || pairs[i].second < 0 || pairs[i].second >= n)
      throw DomainError("Weyl pair outside Z_n x Z_n");
    for (std::size_t j = 0; j < i; ++j)
      if (pairs[i] == pairs[j]) throw DomainError("Weyl pair list has a repeated pair");
  }
}

/// (1/k) sum_l W_l rho W_l^dagger over k distinct Weyl pairs.
inline Channel dwcc_uniform_subset(int n, const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.empty()) throw DomainError("dwcc_uniform_subset: empty pair list");
  require_distinct_pairs(pairs, n);
  std::vector<WeylWeight> p;
  for (auto [x, y] : pairs) p.push_back({x, y, 1.0 / static_cast<double>(pairs.size())});
  return dwcc_channel(n, p);
}

}  // namespace moe
