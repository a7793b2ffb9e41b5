#include "qclone/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qclone {

namespace {

bool valid_dim(std::size_t dim) { return dim == 2 || dim == 4 || dim == 8; }

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

bool all_finite(const Matrix& m) {
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) return false;
    }
  }
  return true;
}

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) {
      if (r != c) sum += std::norm(a(r, c));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

Matrix::Matrix(std::size_t dim) : dim_(dim) {
  if (!valid_dim(dim)) {
    throw DimensionError("matrix dimension must be 2, 4 or 8, got " + std::to_string(dim));
  }
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<double> entries) {
  Matrix m(entries.size());
  std::size_t i = 0;
  for (double e : entries) {
    m(i, i) = e;
    ++i;
  }
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  Matrix m(rows.size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw DimensionError("from_rows: matrix is not square");
    std::size_t c = 0;
    for (const Complex& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

int Matrix::num_qubits() const noexcept {
  switch (dim_) {
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    default: return 0;
  }
}

Complex Matrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::adjoint() const {
  Matrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex factor) {
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] *= factor;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "operator*");
  Matrix out(a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t k = 0; k < a.dim(); ++k) {
      const Complex ark = a(r, k);
      for (std::size_t c = 0; c < a.dim(); ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.dim_ != b.dim_) return false;
  return std::equal(a.data_.begin(), a.data_.begin() + a.dim_ * a.dim_, b.data_.begin());
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  }
  return worst;
}

bool is_hermitian(const Matrix& m, double tolerance) {
  return max_abs_diff(m, m.adjoint()) <= tolerance;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t dim = a.dim() * b.dim();
  if (dim > kMaxDim) {
    throw DimensionError("kron: product dimension " + std::to_string(dim) + " exceeds " +
                         std::to_string(kMaxDim));
  }
  Matrix out(dim);
  for (std::size_t ar = 0; ar < a.dim(); ++ar) {
    for (std::size_t ac = 0; ac < a.dim(); ++ac) {
      const Complex f = a(ar, ac);
      for (std::size_t br = 0; br < b.dim(); ++br) {
        for (std::size_t bc = 0; bc < b.dim(); ++bc) {
          out(ar * b.dim() + br, ac * b.dim() + bc) = f * b(br, bc);
        }
      }
    }
  }
  return out;
}

Matrix reverse_basis(const Matrix& m) {
  Matrix out(m.dim());
  const std::size_t last = m.dim() - 1;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) out(last - r, last - c) = m(r, c);
  }
  return out;
}

DensityMatrix::DensityMatrix(Matrix m) : m_(m) {
  if (m_.num_qubits() == 0) throw DimensionError("density matrix needs dimension 2, 4 or 8");
  if (!all_finite(m_)) throw std::invalid_argument("density matrix has non-finite entries");
  if (!is_hermitian(m_, tol::kStructural)) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - 1.0) > tol::kStructural) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
  if (hermitian_eigenvalues(m_).front() < -tol::kPsdSlack) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.num_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  unsigned used = 0;
  for (int q : keep) {
    if (q < 0 || q >= n) {
      throw std::out_of_range("partial_trace: qubit " + std::to_string(q) + " out of range");
    }
    if (used & (1u << q)) throw std::invalid_argument("partial_trace: repeated qubit");
    used |= 1u << q;
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!(used & (1u << q))) traced.push_back(q);
  }

  const int k = static_cast<int>(keep.size());
  auto bit_of = [n](int qubit) { return std::size_t{1} << (n - 1 - qubit); };
  // Full-register index for a kept-qubit index and a traced-qubit index.
  auto expand = [&](std::size_t kept, std::size_t rest) {
    std::size_t full = 0;
    for (int m = 0; m < k; ++m) {
      if (kept & (std::size_t{1} << (k - 1 - m))) full |= bit_of(keep[m]);
    }
    const int t = static_cast<int>(traced.size());
    for (int m = 0; m < t; ++m) {
      if (rest & (std::size_t{1} << (t - 1 - m))) full |= bit_of(traced[m]);
    }
    return full;
  };

  const std::size_t out_dim = std::size_t{1} << k;
  const std::size_t rest_dim = std::size_t{1} << traced.size();
  if (out_dim == rho.dim()) {
    // Pure reordering of all qubits.
    Matrix out(out_dim);
    for (std::size_t r = 0; r < out_dim; ++r) {
      for (std::size_t c = 0; c < out_dim; ++c) out(r, c) = rho(expand(r, 0), expand(c, 0));
    }
    return DensityMatrix(out);
  }
  Matrix out(out_dim);
  for (std::size_t r = 0; r < out_dim; ++r) {
    for (std::size_t c = 0; c < out_dim; ++c) {
      Complex sum = 0.0;
      for (std::size_t t = 0; t < rest_dim; ++t) sum += rho(expand(r, t), expand(c, t));
      out(r, c) = sum;
    }
  }
  return DensityMatrix(out);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

Matrix partial_transpose(const Matrix& m, int subsystem) {
  if (m.dim() != 4) throw DimensionError("partial_transpose: needs a two-qubit (4x4) operator");
  if (subsystem != 0 && subsystem != 1) {
    throw std::out_of_range("partial_transpose: subsystem must be 0 or 1");
  }
  Matrix out(4);
  for (std::size_t m1 = 0; m1 < 2; ++m1) {
    for (std::size_t mu = 0; mu < 2; ++mu) {
      for (std::size_t n1 = 0; n1 < 2; ++n1) {
        for (std::size_t nu = 0; nu < 2; ++nu) {
          const std::size_t row = 2 * m1 + mu;
          const std::size_t col = 2 * n1 + nu;
          out(row, col) = subsystem == 1 ? m(2 * m1 + nu, 2 * n1 + mu)
                                         : m(2 * n1 + mu, 2 * m1 + nu);
        }
      }
    }
  }
  return out;
}

Matrix partial_transpose(const DensityMatrix& rho, int subsystem) {
  return partial_transpose(rho.matrix(), subsystem);
}

std::vector<double> hermitian_eigenvalues(const Matrix& h) {
  if (h.num_qubits() == 0) throw DimensionError("hermitian_eigenvalues: empty matrix");
  if (!all_finite(h)) throw std::invalid_argument("hermitian_eigenvalues: non-finite entries");
  if (!is_hermitian(h, 1e-10)) throw std::invalid_argument("hermitian_eigenvalues: not Hermitian");

  // Symmetrize so the iteration starts from an exactly Hermitian matrix.
  Matrix a = 0.5 * (h + h.adjoint());
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  constexpr int kMaxSweeps = 100;
  constexpr double kOffTarget = 1e-14;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > kOffTarget; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Phase the (p,q) element real, then apply a real Givens rotation that
        // annihilates it. Combined transform V acts on columns p and q:
        //   V = [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const Complex phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex vqp = -s * std::conj(phase);
        const Complex vqq = c * std::conj(phase);

        for (std::size_t r = 0; r < n; ++r) {
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = arp * c + arq * vqp;
          a(r, q) = arp * s + arq * vqq;
        }
        for (std::size_t col = 0; col < n; ++col) {
          const Complex apc = a(p, col);
          const Complex aqc = a(q, col);
          a(p, col) = c * apc + std::conj(vqp) * aqc;
          a(q, col) = s * apc + std::conj(vqq) * aqc;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

double hs_distance(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "hs_distance");
  double sum = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) sum += std::norm(a(r, c) - b(r, c));
  }
  return sum;
}

double hs_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return hs_distance(rho1.matrix(), rho2.matrix());
}

}  // namespace qclone
