#pragma once

#include <array>
#include <string_view>

#include "cartan/error.hpp"
#include "cartan/numeric.hpp"

// Cartan's space: C^4 carrying both the positive-definite Hilbert product and
// the indefinite product of signature (+,+,-,-), split into the two definite
// sectors C+ (components 0,1) and C- (components 2,3).
//
// Vectors are bras, stored as row vectors of contravariant components x^mu.
// Operators act on bras from the right.

namespace cartan {

enum class Sector { Plus, Minus };

std::string_view to_string(Sector s) noexcept;

/// +1 for C+, -1 for C-. Every sector metric (g, its adjoint g*, and their
/// Hilbert counterparts up to this sign) is this number times the 2x2 identity.
constexpr double sign(Sector s) noexcept {
  return s == Sector::Plus ? 1.0 : -1.0;
}

constexpr Sector opposite(Sector s) noexcept {
  return s == Sector::Plus ? Sector::Minus : Sector::Plus;
}

/// Offset of the sector's first component inside a 4-vector.
constexpr int offset(Sector s) noexcept { return s == Sector::Plus ? 0 : 2; }

enum class MetricKind { IndefiniteG, HilbertDelta };

/// diag(1,1,-1,-1) or the 4x4 identity.
Mat4 metric_matrix(MetricKind kind);

/// g+ = I2, g- = -I2. The adjoint entries g*^{mu nu} coincide numerically.
Mat2 sector_metric(Sector s);

class CartanVector {
 public:
  CartanVector() : components_(Bra4::Zero()) {}
  /// Throws ErrorCode::NonFinite on NaN or infinite components.
  explicit CartanVector(const Bra4& components);
  CartanVector(Complex x0, Complex x1, Complex x2, Complex x3);

  static CartanVector basis(int mu);

  const Bra4& components() const noexcept { return components_; }
  Complex operator[](int mu) const { return components_(mu); }

  friend CartanVector operator+(const CartanVector& a, const CartanVector& b) {
    return CartanVector(Bra4(a.components_ + b.components_));
  }
  friend CartanVector operator-(const CartanVector& a, const CartanVector& b) {
    return CartanVector(Bra4(a.components_ - b.components_));
  }
  friend CartanVector operator*(Complex c, const CartanVector& v) {
    return CartanVector(Bra4(c * v.components_));
  }

 private:
  Bra4 components_;
};

/// Element of C+ or C-, holding only the two live components x^0_s, x^1_s.
class SectorVector {
 public:
  SectorVector(Sector sector, const Bra2& components);
  SectorVector(Sector sector, Complex x0, Complex x1);

  static SectorVector zero(Sector sector);
  static SectorVector basis(Sector sector, int mu);

  Sector sector() const noexcept { return sector_; }
  const Bra2& components() const noexcept { return components_; }
  Complex operator[](int mu) const { return components_(mu); }

  friend SectorVector operator+(const SectorVector& a, const SectorVector& b);
  friend SectorVector operator-(const SectorVector& a, const SectorVector& b);
  friend SectorVector operator*(Complex c, const SectorVector& v) {
    return SectorVector(v.sector_, Bra2(c * v.components_));
  }

 private:
  Sector sector_;
  Bra2 components_;
};

/// <<x|y>> = x^mu conj(y^mu).
Complex hilbert_inner(const CartanVector& x, const CartanVector& y);

/// <x|y>_g = x^mu g_{mu nu} conj(y^nu).
Complex indefinite_inner(const CartanVector& x, const CartanVector& y);

/// g : (x0,x1,x2,x3) -> (x0,x1,-x2,-x3).
CartanVector apply_metric(const CartanVector& x);

/// <x| P(s): keeps the sector's two components.
SectorVector project(const CartanVector& x, Sector s);

/// Inverse of `project` on its image: pads with zeros in the other sector.
CartanVector embed(const SectorVector& v);

/// Sector product <x|y>_{g+-} = +-(x^0 conj(y^0) + x^1 conj(y^1)).
/// Throws ErrorCode::SectorMismatch when the sectors differ.
Complex sector_inner(const SectorVector& x, const SectorVector& y);

/// Hilbert product restricted to a sector (no metric sign).
Complex sector_hilbert_inner(const SectorVector& x, const SectorVector& y);

/// Lowered (adjoint-space) components x_mu = x^lambda g_{lambda mu}.
std::array<Complex, 2> adjoint_components(const SectorVector& x);

/// Raises adjoint components back: x^mu = x_lambda g*^{lambda mu}.
SectorVector raise_components(Sector s, const std::array<Complex, 2>& lowered);

/// <x*|y*>_{g*} evaluated in adjoint components. Agrees with sector_inner.
Complex adjoint_sector_inner(const std::array<Complex, 2>& x_lowered,
                             const std::array<Complex, 2>& y_lowered, Sector s);

}  // namespace cartan
