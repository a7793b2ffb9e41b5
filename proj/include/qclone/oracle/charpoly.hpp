#pragma once

#include <vector>

#include "qclone/linalg.hpp"

// Reference eigenvalue computation used only to cross-check
// hermitian_eigenvalues(). Shares no code with the Jacobi path.
namespace qclone::oracle {

/// Monic characteristic polynomial coefficients of a Hermitian matrix,
/// highest degree first: {1, c1, ..., cn} for x^n + c1 x^{n-1} + ... + cn.
/// Faddeev-LeVerrier recursion; coefficients are real for Hermitian input.
std::vector<double> characteristic_polynomial(const Matrix& h);

/// Real roots of a polynomial known to have only real roots, ascending and
/// repeated by multiplicity. Roots are bracketed by the critical points of
/// the polynomial (found recursively) and refined by bisection.
std::vector<double> real_roots_by_bisection(const std::vector<double>& coeffs);

/// Eigenvalues of a Hermitian matrix as roots of its characteristic polynomial.
std::vector<double> eigenvalues_by_charpoly(const Matrix& h);

}  // namespace qclone::oracle
