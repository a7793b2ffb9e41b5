#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace qclone {

using Complex = std::complex<double>;

/// Largest supported operator dimension (three qubits).
inline constexpr std::size_t kMaxDim = 8;

/// Tolerances shared by every module.
namespace tol {
inline constexpr double kStructural = 1e-12;  // hermiticity, trace, norm
inline constexpr double kEigen = 1e-10;       // eigenvalue accuracy
inline constexpr double kPsdSlack = 1e-10;    // smallest eigenvalue allowed is -kPsdSlack
}  // namespace tol

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense complex square matrix of dimension 2, 4 or 8, stored row-major by
/// basis index. Basis index bits are ordered with qubit 0 as the most
/// significant bit.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim);

  static Matrix identity(std::size_t dim);
  static Matrix diagonal(std::initializer_list<double> entries);
  static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t dim() const noexcept { return dim_; }
  int num_qubits() const noexcept;

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  Complex trace() const;
  Matrix adjoint() const;
  Matrix transpose() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex factor);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex factor) { return a *= factor; }
  friend Matrix operator*(Complex factor, Matrix a) { return a *= factor; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t dim_ = 0;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

/// Largest entry-wise modulus of a - b. Dimensions must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tolerance = tol::kStructural);

/// Tensor product; `a` becomes the high-order subsystem. Throws
/// DimensionError if the product exceeds kMaxDim.
Matrix kron(const Matrix& a, const Matrix& b);

/// Reverses the basis order (index i <-> dim-1-i). Maps between the internal
/// ascending basis {|00>,|01>,|10>,|11>} and the descending one
/// {|11>,|10>,|01>,|00>} that closed-form matrices are often written in.
/// The map is its own inverse.
Matrix reverse_basis(const Matrix& m);

/// Hermitian, unit-trace, positive semidefinite operator on 1-3 qubits.
/// The constructor validates all three properties.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  int num_qubits() const noexcept { return m_.num_qubits(); }

  /// Tr(rho^2).
  double purity() const;

  const Complex& operator()(std::size_t row, std::size_t col) const { return m_(row, col); }

 private:
  Matrix m_;
};

/// Reduced state on `keep`, in the order given; the first kept qubit is the
/// high-order subsystem of the result.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

/// Partial transpose of a two-qubit operator with respect to `subsystem`
/// (0 or 1): rho^{T_1}_{m mu, n nu} = rho_{m nu, n mu}. The result is
/// Hermitian whenever the input is, but need not be positive.
Matrix partial_transpose(const Matrix& m, int subsystem = 1);
Matrix partial_transpose(const DensityMatrix& rho, int subsystem = 1);

/// All eigenvalues of a Hermitian matrix in ascending order, repeated
/// according to multiplicity. Cyclic complex Jacobi iteration.
std::vector<double> hermitian_eigenvalues(const Matrix& h);

/// Squared Hilbert-Schmidt distance Tr[(rho1 - rho2)^2].
double hs_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);
double hs_distance(const Matrix& a, const Matrix& b);

}  // namespace qclone
