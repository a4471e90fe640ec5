#pragma once

// Seeded random objects: Ginibre matrices, Haar unitaries, pure states,
// density matrices and Kraus lists.

#include "moe/linalg.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace moe {

using Rng = std::mt19937_64;

/// Independent stream for (seed, index); used so restarts do not depend on scheduling.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

inline ComplexMatrix random_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = cplx(normal(rng), normal(rng));
  return g;
}

inline ComplexVector random_pure_state(Eigen::Index n, Rng& rng) {
  ComplexVector v = random_ginibre(n, 1, rng).col(0);
  return v / v.norm();
}

/// Haar unitary via QR of a Ginibre matrix with the phase correction on R's diagonal.
inline ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
  const ComplexMatrix g = random_ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

/// Isometry C^cols -> C^rows (rows >= cols) with orthonormal columns.
inline ComplexMatrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  const ComplexMatrix g = random_ginibre(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * ComplexMatrix::Identity(rows, cols);
}

inline ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  const ComplexMatrix g = random_ginibre(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

/// Induced-measure density matrix of the given rank.
inline ComplexMatrix random_density(Eigen::Index n, Rng& rng, Eigen::Index rank = -1) {
  if (rank <= 0) rank = n;
  const ComplexMatrix g = random_ginibre(n, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

/// Kraus operators of a random trace-preserving channel C^in -> C^out with `count` operators,
/// taken as the row blocks of a random isometry C^in -> C^(count*out).
inline std::vector<ComplexMatrix> random_kraus(Eigen::Index in, Eigen::Index out, Eigen::Index count, Rng& rng) {
  if (count * out < in) throw DomainError("random_kraus: count*out must be >= in");
  const ComplexMatrix v = random_isometry(count * out, in, rng);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) kraus.emplace_back(v.block(i * out, 0, out, in));
  return kraus;
}

/// Kraus operators of a random mixture of `count` Haar unitaries: unital and trace-preserving.
inline std::vector<ComplexMatrix> random_unital_kraus(Eigen::Index n, Eigen::Index count, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  std::vector<double> w(static_cast<std::size_t>(count));
  double total = 0;
  for (auto& x : w) total += (x = uni(rng));
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index i = 0; i < count; ++i)
    kraus.emplace_back(std::sqrt(w[static_cast<std::size_t>(i)] / total) * random_unitary(n, rng));
  return kraus;
}

}  // namespace moe
