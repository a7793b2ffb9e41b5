// Test-only reference computations. Everything here is built the slow,
// obvious way (dense matrices, explicit index sums) so it can check the
// library's bit-mask kernels without sharing code with them.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qclone/gates.hpp"
#include "qclone/linalg.hpp"

namespace oracle_test {

using qclone::Complex;
using qclone::Matrix;
using qclone::PureState;

inline Matrix dense_rotation(int num_qubits, int target, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Matrix r = Matrix::from_rows({{c, -s}, {s, c}});
  Matrix acc = target == 0 ? r : Matrix::identity(2);
  for (int q = 1; q < num_qubits; ++q) acc = qclone::kron(acc, q == target ? r : Matrix::identity(2));
  return acc;
}

inline Matrix dense_cnot(int num_qubits, int control, int target) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  Matrix m(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t row = col;
    const int cbit = num_qubits - 1 - control;
    const int tbit = num_qubits - 1 - target;
    if ((col >> cbit) & 1U) row ^= std::size_t{1} << tbit;
    m(row, col) = 1.0;
  }
  return m;
}

inline std::vector<Complex> apply_dense(const Matrix& u, const PureState& s) {
  std::vector<Complex> out(s.size());
  for (std::size_t r = 0; r < s.size(); ++r) {
    for (std::size_t c = 0; c < s.size(); ++c) out[r] += u(r, c) * s[c];
  }
  return out;
}

inline double max_diff(const std::vector<Complex>& a, const PureState& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// Reduced density matrix of qubit `keep` from a pure state, by summing
/// over all other index bits explicitly.
inline Matrix reduce_single(const PureState& s, int keep) {
  const int n = s.num_qubits();
  const int bit = n - 1 - keep;
  Matrix rho(2);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if ((i & ~(std::size_t{1} << bit)) != (j & ~(std::size_t{1} << bit))) continue;
      rho((i >> bit) & 1U, (j >> bit) & 1U) += s[i] * std::conj(s[j]);
    }
  }
  return rho;
}

inline PureState random_state(std::mt19937_64& rng, int num_qubits) {
  std::normal_distribution<double> normal;
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = Complex(normal(rng), normal(rng));
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return PureState(std::span<const Complex>(amps));
}

inline Matrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> normal;
  Matrix g(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  }
  return 0.5 * (g + g.adjoint());
}

inline qclone::DensityMatrix random_density(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> normal;
  Matrix g(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  }
  Matrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return qclone::DensityMatrix(0.5 * (rho + rho.adjoint()));
}

/// Tr(A^dagger A) through an explicit matrix product.
inline double hs_by_product(const Matrix& a, const Matrix& b) {
  const Matrix d = a - b;
  return (d.adjoint() * d).trace().real();
}

}  // namespace oracle_test
