// Exact state-vector and density-matrix arithmetic for small qubit registers.
// Qubit 0 is the leftmost position in ket labels, i.e. the most significant
// bit of an amplitude index: |q0 q1 ... q_{n-1}>.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "aqd/rng.hpp"

namespace aqd {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline constexpr int kMaxQubits = 5;
inline constexpr double kConstructTol = 1e-12;   // norm / Hermiticity / trace
inline constexpr double kOrthoTol = 1e-10;       // pairwise basis overlaps
inline constexpr double kEigenFloor = -1e-10;    // eigenvalue positivity

namespace detail {

inline int log2_exact(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim) throw std::invalid_argument("dimension is not a power of 2");
  return n;
}

inline void check_targets(const std::vector<int>& targets, int num_qubits) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= num_qubits)
      throw std::invalid_argument("target qubit " + std::to_string(targets[i]) + " out of range");
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i] == targets[j]) throw std::invalid_argument("duplicate target qubit");
  }
}

}  // namespace detail

// Dense square complex matrix, row major. No structural invariant; this is
// the carrier for Kraus operators and intermediate products.
class SquareMatrix {
 public:
  SquareMatrix(int dim, CVec entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim_ <= 0 || entries_.size() != static_cast<std::size_t>(dim_) * dim_)
      throw std::invalid_argument("SquareMatrix: entry count does not match dimension");
  }

  static SquareMatrix identity(int dim) {
    CVec e(static_cast<std::size_t>(dim) * dim, Complex{0});
    for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i) * dim + i] = Complex{1};
    return SquareMatrix(dim, std::move(e));
  }

  static SquareMatrix zero(int dim) {
    return SquareMatrix(dim, CVec(static_cast<std::size_t>(dim) * dim, Complex{0}));
  }

  int dim() const { return dim_; }
  Complex at(int r, int c) const { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }
  Complex& at(int r, int c) { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }
  const CVec& entries() const { return entries_; }

  SquareMatrix adjoint() const {
    SquareMatrix out = zero(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) out.at(c, r) = std::conj(at(r, c));
    return out;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("SquareMatrix: dimension mismatch");
    SquareMatrix out = zero(a.dim_);
    for (int r = 0; r < a.dim_; ++r)
      for (int k = 0; k < a.dim_; ++k) {
        const Complex arv = a.at(r, k);
        if (arv == Complex{0}) continue;
        for (int c = 0; c < a.dim_; ++c) out.at(r, c) += arv * b.at(k, c);
      }
    return out;
  }

  friend SquareMatrix kron(const SquareMatrix& a, const SquareMatrix& b) {
    const int d = a.dim_ * b.dim_;
    SquareMatrix out = zero(d);
    for (int ar = 0; ar < a.dim_; ++ar)
      for (int ac = 0; ac < a.dim_; ++ac)
        for (int br = 0; br < b.dim_; ++br)
          for (int bc = 0; bc < b.dim_; ++bc)
            out.at(ar * b.dim_ + br, ac * b.dim_ + bc) = a.at(ar, ac) * b.at(br, bc);
    return out;
  }

  double max_abs_diff(const SquareMatrix& other) const {
    double m = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
      m = std::max(m, std::abs(entries_[i] - other.entries_[i]));
    return m;
  }

 private:
  int dim_;
  CVec entries_;
};

// A SquareMatrix validated to satisfy U U^dag = I at construction.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(SquareMatrix m) : m_(std::move(m)) {
    const SquareMatrix prod = m_ * m_.adjoint();
    if (prod.max_abs_diff(SquareMatrix::identity(m_.dim())) > kConstructTol)
      throw std::invalid_argument("UnitaryMatrix: U U^dag deviates from identity");
  }

  UnitaryMatrix(int dim, CVec entries) : UnitaryMatrix(SquareMatrix(dim, std::move(entries))) {}

  static UnitaryMatrix identity(int dim) { return UnitaryMatrix(SquareMatrix::identity(dim)); }

  int dim() const { return m_.dim(); }
  Complex at(int r, int c) const { return m_.at(r, c); }
  const SquareMatrix& matrix() const { return m_; }

 private:
  SquareMatrix m_;
};

class StateVector {
 public:
  StateVector(int num_qubits, CVec amplitudes)
      : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (num_qubits_ < 1 || num_qubits_ > kMaxQubits)
      throw std::invalid_argument("StateVector: qubit count must be 1.." + std::to_string(kMaxQubits));
    if (amps_.size() != (std::size_t{1} << num_qubits_))
      throw std::invalid_argument("StateVector: amplitude count must be 2^n");
    double norm2 = 0.0;
    for (const Complex& a : amps_) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > kConstructTol)
      throw std::invalid_argument("StateVector: norm deviates from 1 by more than tolerance");
  }

  static StateVector basis_state(int num_qubits, std::size_t index) {
    CVec a(std::size_t{1} << num_qubits, Complex{0});
    if (index >= a.size())
      throw std::invalid_argument("basis_state: index " + std::to_string(index) +
                                  " outside a " + std::to_string(a.size()) + "-dim space");
    a[index] = Complex{1};
    return StateVector(num_qubits, std::move(a));
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const CVec& amplitudes() const { return amps_; }
  Complex amp(std::size_t i) const { return amps_[i]; }

  Complex inner_product(const StateVector& other) const {
    if (dim() != other.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
    Complex s{0};
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
  }

 private:
  int num_qubits_;
  CVec amps_;
};

class DensityMatrix {
 public:
  // Validates Hermiticity and unit trace. Positive semidefiniteness is a
  // separate eigenvalue check (assert_positive_semidefinite) because it costs
  // a full eigensolve and the cheap checks catch ordinary arithmetic bugs.
  DensityMatrix(int num_qubits, CVec entries)
      : num_qubits_(num_qubits), entries_(std::move(entries)) {
    if (num_qubits_ < 1 || num_qubits_ > kMaxQubits)
      throw std::invalid_argument("DensityMatrix: qubit count must be 1.." + std::to_string(kMaxQubits));
    const std::size_t d = dim();
    if (entries_.size() != d * d)
      throw std::invalid_argument("DensityMatrix: entry count must be 4^n");
    double trace = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      trace += entries_[r * d + r].real();
      if (std::abs(entries_[r * d + r].imag()) > kConstructTol)
        throw std::invalid_argument("DensityMatrix: complex diagonal entry");
      for (std::size_t c = r + 1; c < d; ++c)
        if (std::abs(entries_[r * d + c] - std::conj(entries_[c * d + r])) > kConstructTol)
          throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    }
    if (std::abs(trace - 1.0) > kConstructTol)
      throw std::invalid_argument("DensityMatrix: trace deviates from 1");
  }

  static DensityMatrix from_pure(const StateVector& psi) {
    const std::size_t d = psi.dim();
    CVec e(d * d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) e[r * d + c] = psi.amp(r) * std::conj(psi.amp(c));
    return DensityMatrix(psi.num_qubits(), std::move(e));
  }

  static DensityMatrix maximally_mixed(int num_qubits) {
    const std::size_t d = std::size_t{1} << num_qubits;
    CVec e(d * d, Complex{0});
    for (std::size_t i = 0; i < d; ++i) e[i * d + i] = Complex{1.0 / static_cast<double>(d)};
    return DensityMatrix(num_qubits, std::move(e));
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return std::size_t{1} << num_qubits_; }
  Complex at(std::size_t r, std::size_t c) const { return entries_[r * dim() + c]; }
  const CVec& entries() const { return entries_; }

  double trace_real() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) t += at(i, i).real();
    return t;
  }

  void assert_positive_semidefinite() const {
    const std::size_t d = dim();
    Eigen::MatrixXcd m(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(r, c) = at(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < kEigenFloor)
      throw std::runtime_error("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
  }

  double max_abs_diff(const DensityMatrix& other) const {
    double m = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
      m = std::max(m, std::abs(entries_[i] - other.entries_[i]));
    return m;
  }

 private:
  int num_qubits_;
  CVec entries_;
};

namespace detail {

// Applies a dense 2^k x 2^k matrix to the listed qubits of a raw amplitude
// array (no normalization assumptions). targets[0] is the most significant
// qubit of the matrix's own index space.
inline void apply_matrix_inplace(const SquareMatrix& m, const std::vector<int>& targets,
                                 CVec& amps, int num_qubits) {
  const int k = static_cast<int>(targets.size());
  const std::size_t block = std::size_t{1} << k;
  std::vector<std::size_t> stride(k);
  for (int i = 0; i < k; ++i) stride[i] = std::size_t{1} << (num_qubits - 1 - targets[i]);

  std::size_t outer_mask = (std::size_t{1} << num_qubits) - 1;
  for (int i = 0; i < k; ++i) outer_mask &= ~stride[i];

  CVec gathered(block), result(block);
  // Iterate over every assignment of the non-target bits.
  for (std::size_t base = 0;; base = ((base | ~outer_mask) + 1) & outer_mask) {
    for (std::size_t l = 0; l < block; ++l) {
      std::size_t idx = base;
      for (int i = 0; i < k; ++i)
        if ((l >> (k - 1 - i)) & 1) idx |= stride[i];
      gathered[l] = amps[idx];
    }
    for (std::size_t r = 0; r < block; ++r) {
      Complex acc{0};
      for (std::size_t c = 0; c < block; ++c)
        acc += m.at(static_cast<int>(r), static_cast<int>(c)) * gathered[c];
      result[r] = acc;
    }
    for (std::size_t l = 0; l < block; ++l) {
      std::size_t idx = base;
      for (int i = 0; i < k; ++i)
        if ((l >> (k - 1 - i)) & 1) idx |= stride[i];
      amps[idx] = result[l];
    }
    if (base == outer_mask) break;
  }
}

// rho -> M rho M^dag on the listed qubits, without any trace correction.
inline CVec conjugate_on_qubits(const SquareMatrix& m, const std::vector<int>& targets,
                                const CVec& rho, int num_qubits) {
  const std::size_t d = std::size_t{1} << num_qubits;
  CVec out = rho;
  CVec column(d);
  // Left multiply: apply m to each column.
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t r = 0; r < d; ++r) column[r] = out[r * d + c];
    apply_matrix_inplace(m, targets, column, num_qubits);
    for (std::size_t r = 0; r < d; ++r) out[r * d + c] = column[r];
  }
  // Right multiply by M^dag: conjugate rows, apply m, conjugate back.
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) column[c] = std::conj(out[r * d + c]);
    apply_matrix_inplace(m, targets, column, num_qubits);
    for (std::size_t c = 0; c < d; ++c) out[r * d + c] = std::conj(column[c]);
  }
  return out;
}

inline std::size_t permute_index(std::size_t idx, const std::vector<int>& perm, int n) {
  std::size_t out = 0;
  for (int q = 0; q < n; ++q) {
    const std::size_t bit = (idx >> (n - 1 - q)) & 1;
    out |= bit << (n - 1 - perm[q]);
  }
  return out;
}

inline void check_permutation(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permute_qubits: permutation length must equal qubit count");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) throw std::invalid_argument("permute_qubits: not a bijection");
    seen[p] = true;
  }
}

}  // namespace detail

inline StateVector tensor(const StateVector& a, const StateVector& b) {
  const int n = a.num_qubits() + b.num_qubits();
  if (n > kMaxQubits) throw std::invalid_argument("tensor: combined register exceeds supported size");
  CVec out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a.amp(i) * b.amp(j);
  return StateVector(n, std::move(out));
}

inline StateVector apply_on_qubits(const UnitaryMatrix& u, const std::vector<int>& targets,
                                   const StateVector& s) {
  detail::check_targets(targets, s.num_qubits());
  if (u.dim() != (1 << targets.size()))
    throw std::invalid_argument("apply_on_qubits: matrix dimension must be 2^(target count)");
  CVec amps = s.amplitudes();
  detail::apply_matrix_inplace(u.matrix(), targets, amps, s.num_qubits());
  return StateVector(s.num_qubits(), std::move(amps));
}

inline DensityMatrix apply_on_qubits(const UnitaryMatrix& u, const std::vector<int>& targets,
                                     const DensityMatrix& rho) {
  detail::check_targets(targets, rho.num_qubits());
  if (u.dim() != (1 << targets.size()))
    throw std::invalid_argument("apply_on_qubits: matrix dimension must be 2^(target count)");
  CVec out = detail::conjugate_on_qubits(u.matrix(), targets, rho.entries(), rho.num_qubits());
  return DensityMatrix(rho.num_qubits(), std::move(out));
}

// Moves the qubit at position i to position perm[i].
inline StateVector permute_qubits(const std::vector<int>& perm, const StateVector& s) {
  detail::check_permutation(perm, s.num_qubits());
  CVec out(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i)
    out[detail::permute_index(i, perm, s.num_qubits())] = s.amp(i);
  return StateVector(s.num_qubits(), std::move(out));
}

inline DensityMatrix permute_qubits(const std::vector<int>& perm, const DensityMatrix& rho) {
  detail::check_permutation(perm, rho.num_qubits());
  const std::size_t d = rho.dim();
  CVec out(d * d);
  for (std::size_t r = 0; r < d; ++r) {
    const std::size_t pr = detail::permute_index(r, perm, rho.num_qubits());
    for (std::size_t c = 0; c < d; ++c)
      out[pr * d + detail::permute_index(c, perm, rho.num_qubits())] = rho.at(r, c);
  }
  return DensityMatrix(rho.num_qubits(), std::move(out));
}

// <psi| rho |psi>, asserted real.
inline double fidelity_pure(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dim() != psi.dim()) throw std::invalid_argument("fidelity_pure: dimension mismatch");
  Complex acc{0};
  const std::size_t d = rho.dim();
  for (std::size_t r = 0; r < d; ++r) {
    Complex row{0};
    for (std::size_t c = 0; c < d; ++c) row += rho.at(r, c) * psi.amp(c);
    acc += std::conj(psi.amp(r)) * row;
  }
  if (std::abs(acc.imag()) > kConstructTol)
    throw std::runtime_error("fidelity_pure: expectation has a non-negligible imaginary part");
  return acc.real();
}

// Ordered set of mutually orthonormal vectors. Complete when it spans the
// whole space; measurement requires completeness.
class OrthonormalBasis {
 public:
  explicit OrthonormalBasis(std::vector<StateVector> vectors) : vectors_(std::move(vectors)) {
    if (vectors_.empty()) throw std::invalid_argument("OrthonormalBasis: no vectors");
    const std::size_t d = vectors_.front().dim();
    for (const StateVector& v : vectors_)
      if (v.dim() != d) throw std::invalid_argument("OrthonormalBasis: mixed dimensions");
    for (std::size_t i = 0; i < vectors_.size(); ++i)
      for (std::size_t j = i; j < vectors_.size(); ++j) {
        const Complex ip = vectors_[i].inner_product(vectors_[j]);
        const Complex want = (i == j) ? Complex{1} : Complex{0};
        if (std::abs(ip - want) > kOrthoTol)
          throw std::invalid_argument("OrthonormalBasis: vectors " + std::to_string(i) + "," +
                                      std::to_string(j) + " fail orthonormality");
      }
  }

  std::size_t size() const { return vectors_.size(); }
  const StateVector& vector(std::size_t i) const { return vectors_.at(i); }
  int num_qubits() const { return vectors_.front().num_qubits(); }
  bool complete() const { return vectors_.size() == vectors_.front().dim(); }

 private:
  std::vector<StateVector> vectors_;
};

struct MeasureResult {
  int index;
  double probability;
};

inline std::vector<double> basis_probabilities(const DensityMatrix& rho,
                                               const OrthonormalBasis& basis) {
  if (basis.vector(0).dim() != rho.dim())
    throw std::invalid_argument("measure_in_basis: dimension mismatch");
  std::vector<double> probs(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) probs[i] = fidelity_pure(rho, basis.vector(i));
  return probs;
}

inline MeasureResult measure_in_basis(const DensityMatrix& rho, const OrthonormalBasis& basis,
                                      Rng& rng) {
  if (!basis.complete())
    throw std::invalid_argument("measure_in_basis: basis does not span the space");
  std::vector<double> probs = basis_probabilities(rho, basis);
  double total = 0.0;
  for (double p : probs) total += p;
  if (std::abs(total - 1.0) > kOrthoTol)
    throw std::runtime_error("measure_in_basis: probabilities do not sum to 1");
  const std::size_t i = rng.sample_cdf(probs);
  return MeasureResult{static_cast<int>(i), probs[i]};
}

inline MeasureResult measure_in_basis(const StateVector& psi, const OrthonormalBasis& basis,
                                      Rng& rng) {
  return measure_in_basis(DensityMatrix::from_pure(psi), basis, rng);
}

}  // namespace aqd
