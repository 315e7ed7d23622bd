#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Core>

namespace cartan {

using Complex = std::complex<double>;
using Bra4 = Eigen::Matrix<Complex, 1, 4>;
using Bra2 = Eigen::Matrix<Complex, 1, 2>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Absolute tolerance applied to scalar and max-norm matrix residuals.
inline constexpr double kDefaultTol = 1e-10;

inline constexpr Complex kI{0.0, 1.0};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a,
                    const Eigen::MatrixBase<B>& b) {
  return max_abs(a - b);
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Matrix exponential by scaling and squaring. The argument is scaled by 2^-s
// until its max-norm drops below 1/2, the Taylor series is summed until the
// next term falls below `tol` relative to the running sum, and the result is
// squared s times.
template <int N>
Eigen::Matrix<Complex, N, N> expm(const Eigen::Matrix<Complex, N, N>& x,
                                  double tol = 1e-17) {
  using Mat = Eigen::Matrix<Complex, N, N>;
  const double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const Mat scaled = x / std::ldexp(1.0, squarings);

  Mat sum = Mat::Identity();
  Mat term = Mat::Identity();
  for (int k = 1; k < 64; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    sum += term;
    if (max_abs(term) <= tol * std::max(1.0, max_abs(sum))) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace cartan
