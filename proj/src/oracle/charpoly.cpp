#include "qclone/oracle/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qclone::oracle {

namespace {

double evaluate(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (double c : coeffs) acc = acc * x + c;
  return acc;
}

std::vector<double> derivative(const std::vector<double>& coeffs) {
  const std::size_t degree = coeffs.size() - 1;
  std::vector<double> out;
  for (std::size_t i = 0; i < degree; ++i) out.push_back(coeffs[i] * static_cast<double>(degree - i));
  return out;
}

// Cauchy bound on root magnitude.
double root_bound(const std::vector<double>& coeffs) {
  double worst = 0.0;
  for (std::size_t i = 1; i < coeffs.size(); ++i) worst = std::max(worst, std::abs(coeffs[i] / coeffs[0]));
  return 1.0 + worst;
}

double bisect(const std::vector<double>& coeffs, double lo, double hi) {
  double flo = evaluate(coeffs, lo);
  double fhi = evaluate(coeffs, hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    // No sign change: a repeated root sits on the bracket edge.
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
  }
  for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = evaluate(coeffs, mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> characteristic_polynomial(const Matrix& h) {
  const std::size_t n = h.dim();
  std::vector<Complex> c(n + 1);
  c[0] = 1.0;
  Matrix m(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    m = h * m + c[k - 1] * Matrix::identity(n);
    c[k] = -(h * m).trace() / static_cast<double>(k);
  }
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = c[i].real();
  return out;
}

std::vector<double> real_roots_by_bisection(const std::vector<double>& coeffs) {
  if (coeffs.empty() || coeffs[0] == 0.0) throw std::invalid_argument("leading coefficient is zero");
  const std::size_t degree = coeffs.size() - 1;
  if (degree == 0) return {};
  if (degree == 1) return {-coeffs[1] / coeffs[0]};

  const double bound = root_bound(coeffs);
  std::vector<double> edges{-bound};
  for (double x : real_roots_by_bisection(derivative(coeffs))) edges.push_back(std::clamp(x, -bound, bound));
  edges.push_back(bound);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) roots.push_back(bisect(coeffs, edges[i], edges[i + 1]));
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> eigenvalues_by_charpoly(const Matrix& h) {
  return real_roots_by_bisection(characteristic_polynomial(h));
}

}  // namespace qclone::oracle
