#pragma once

// Seeded random states and unitaries for property tests. The unitary comes
// from a QR factorization of a random complex matrix, which is independent of
// the code paths under test.
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "aqd/qstate.hpp"
#include "aqd/rng.hpp"

namespace testutil {

inline double gaussian(aqd::Rng& rng) {
  // Box-Muller from two uniforms; the offset keeps log away from zero.
  const double u = 1.0 - rng.uniform01();
  const double v = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

inline aqd::StateVector random_state(int num_qubits, aqd::Rng& rng) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  aqd::CVec amps(dim);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    amps[i] = aqd::Complex{gaussian(rng), gaussian(rng)};
    norm2 += std::norm(amps[i]);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= scale;
  return aqd::StateVector(num_qubits, std::move(amps));
}

inline aqd::UnitaryMatrix random_unitary(int dim, aqd::Rng& rng) {
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = aqd::Complex{gaussian(rng), gaussian(rng)};
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const aqd::Complex d = r(c, c);
    if (std::abs(d) > 1e-12) q.col(c) *= d / std::abs(d);
  }
  aqd::CVec entries(static_cast<std::size_t>(dim) * dim);
  for (int row = 0; row < dim; ++row)
    for (int col = 0; col < dim; ++col) entries[static_cast<std::size_t>(row) * dim + col] = q(row, col);
  return aqd::UnitaryMatrix(dim, std::move(entries));
}

}  // namespace testutil
