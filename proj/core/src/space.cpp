#include "cartan/space.hpp"

#include <string>

namespace cartan {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::SectorMismatch: return "SectorMismatch";
    case ErrorCode::NonBlockDiagonal: return "NonBlockDiagonal";
    case ErrorCode::NumericallySingular: return "NumericallySingular";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::ZeroBranch: return "ZeroBranch";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

std::string_view to_string(Sector s) noexcept {
  return s == Sector::Plus ? "plus" : "minus";
}

Mat4 metric_matrix(MetricKind kind) {
  Mat4 m = Mat4::Identity();
  if (kind == MetricKind::IndefiniteG) {
    m(2, 2) = -1.0;
    m(3, 3) = -1.0;
  }
  return m;
}

Mat2 sector_metric(Sector s) { return sign(s) * Mat2::Identity(); }

CartanVector::CartanVector(const Bra4& components) : components_(components) {
  if (!all_finite(components_)) {
    throw Error(ErrorCode::NonFinite, "CartanVector: non-finite component");
  }
}

CartanVector::CartanVector(Complex x0, Complex x1, Complex x2, Complex x3)
    : CartanVector(Bra4(x0, x1, x2, x3)) {}

CartanVector CartanVector::basis(int mu) {
  if (mu < 0 || mu > 3) {
    throw Error(ErrorCode::Usage, "basis index must lie in 0..3");
  }
  Bra4 e = Bra4::Zero();
  e(mu) = 1.0;
  return CartanVector(e);
}

SectorVector::SectorVector(Sector sector, const Bra2& components)
    : sector_(sector), components_(components) {
  if (!all_finite(components_)) {
    throw Error(ErrorCode::NonFinite, "SectorVector: non-finite component");
  }
}

SectorVector::SectorVector(Sector sector, Complex x0, Complex x1)
    : SectorVector(sector, Bra2(x0, x1)) {}

SectorVector SectorVector::zero(Sector sector) {
  return SectorVector(sector, Bra2::Zero());
}

SectorVector SectorVector::basis(Sector sector, int mu) {
  if (mu < 0 || mu > 1) {
    throw Error(ErrorCode::Usage, "sector basis index must be 0 or 1");
  }
  Bra2 e = Bra2::Zero();
  e(mu) = 1.0;
  return SectorVector(sector, e);
}

namespace {

void require_same_sector(const SectorVector& a, const SectorVector& b,
                         const char* where) {
  if (a.sector() != b.sector()) {
    throw Error(ErrorCode::SectorMismatch,
                std::string(where) + ": vectors live in different sectors");
  }
}

}  // namespace

SectorVector operator+(const SectorVector& a, const SectorVector& b) {
  require_same_sector(a, b, "SectorVector +");
  return SectorVector(a.sector_, Bra2(a.components_ + b.components_));
}

SectorVector operator-(const SectorVector& a, const SectorVector& b) {
  require_same_sector(a, b, "SectorVector -");
  return SectorVector(a.sector_, Bra2(a.components_ - b.components_));
}

Complex hilbert_inner(const CartanVector& x, const CartanVector& y) {
  Complex sum = 0.0;
  for (int mu = 0; mu < 4; ++mu) sum += x[mu] * std::conj(y[mu]);
  return sum;
}

Complex indefinite_inner(const CartanVector& x, const CartanVector& y) {
  return x[0] * std::conj(y[0]) + x[1] * std::conj(y[1]) -
         x[2] * std::conj(y[2]) - x[3] * std::conj(y[3]);
}

CartanVector apply_metric(const CartanVector& x) {
  return CartanVector(x[0], x[1], -x[2], -x[3]);
}

SectorVector project(const CartanVector& x, Sector s) {
  const int k = offset(s);
  return SectorVector(s, x[k], x[k + 1]);
}

CartanVector embed(const SectorVector& v) {
  Bra4 c = Bra4::Zero();
  c.segment<2>(offset(v.sector())) = v.components();
  return CartanVector(c);
}

Complex sector_hilbert_inner(const SectorVector& x, const SectorVector& y) {
  require_same_sector(x, y, "sector_hilbert_inner");
  return x[0] * std::conj(y[0]) + x[1] * std::conj(y[1]);
}

Complex sector_inner(const SectorVector& x, const SectorVector& y) {
  require_same_sector(x, y, "sector_inner");
  return sign(x.sector()) * (x[0] * std::conj(y[0]) + x[1] * std::conj(y[1]));
}

std::array<Complex, 2> adjoint_components(const SectorVector& x) {
  const double s = sign(x.sector());
  return {s * x[0], s * x[1]};
}

SectorVector raise_components(Sector s, const std::array<Complex, 2>& lowered) {
  return SectorVector(s, sign(s) * lowered[0], sign(s) * lowered[1]);
}

Complex adjoint_sector_inner(const std::array<Complex, 2>& x_lowered,
                             const std::array<Complex, 2>& y_lowered,
                             Sector s) {
  return sign(s) * (x_lowered[0] * std::conj(y_lowered[0]) +
                    x_lowered[1] * std::conj(y_lowered[1]));
}

}  // namespace cartan
