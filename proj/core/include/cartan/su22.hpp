#pragma once

#include <array>
#include <cstdint>

#include "cartan/operators.hpp"
#include "cartan/random.hpp"

namespace cartan {

/// Max-norm residual of u g u^dagger - g on a 4x4 array.
double pseudo_unitarity_residual(const Mat4& u);
/// Max-norm residual of u^dagger u - I.
double unitarity_residual(const Mat4& u);
/// |det u - 1|.
double det_residual(const Mat4& u);

bool is_pseudo_unitary(const Mat4& u, double tol = kDefaultTol);
bool is_pseudo_unitary(const Operator& u, double tol = kDefaultTol);

struct Certificates {
  bool pseudo_unitary = false;
  bool special = false;
  bool unitary = false;
};

// A 4x4 array certified to lie in SU(2,2). The array is the Hilbert matrix of
// the operator, so the identity array is the identity map. The group
// predicates hold for u and for its g-weighted entries u g alike.
class GroupElement {
 public:
  /// Throws NotInGroup unless u g u^dagger = g within `tol` and
  /// |det u - 1| <= `det_tol`.
  static GroupElement certify(const Mat4& u, double tol = kDefaultTol,
                              double det_tol = 10 * kDefaultTol);
  static GroupElement identity();

  const Mat4& matrix() const noexcept { return matrix_; }
  Operator as_operator() const { return Operator::from_delta(matrix_); }
  const Certificates& certificates() const noexcept { return certs_; }
  bool is_unitary() const noexcept { return certs_.unitary; }

  /// Re-evaluates every recorded certificate against `tol`.
  bool recheck(double tol = kDefaultTol, double det_tol = 10 * kDefaultTol) const;

 private:
  GroupElement(const Mat4& m, Certificates c) : matrix_(m), certs_(c) {}

  Mat4 matrix_;
  Certificates certs_;
};

GroupElement operator*(const GroupElement& a, const GroupElement& b);

struct BlockConstraintReport {
  double plus = 0.0;      // u++ g*+ u++^star + u+- g*- u+-^star = g+
  double minus = 0.0;     // u-+ g*+ u-+^star + u-- g*- u--^star = g-
  double mixed = 0.0;     // u++ g*+ u-+^star + u+- g*- u--^star = 0
  double max() const { return std::max({plus, minus, mixed}); }
};

BlockConstraintReport check_block_constraints(const GroupElement& u);

struct CartanFactors {
  GroupElement unitary_part;
  GroupElement positive_part;
  double reconstruction_residual = 0.0;
  double min_eigenvalue = 0.0;
};

/// Polar factorization u = U H with H = sqrt(u^dagger u). Throws
/// NumericallySingular when u^dagger u has an eigenvalue below `tol`.
CartanFactors cartan_decompose(const GroupElement& u, double tol = kDefaultTol);

class SL2CElement {
 public:
  /// Throws NotInGroup when |det m - 1| > tol.
  explicit SL2CElement(const Mat2& m, double tol = kDefaultTol);
  static SL2CElement identity() { return SL2CElement(Mat2::Identity()); }
  const Mat2& matrix() const noexcept { return m_; }

 private:
  Mat2 m_;
};

class SU2Element {
 public:
  /// Throws NotInGroup unless unitary with determinant 1 within tol.
  explicit SU2Element(const Mat2& m, double tol = kDefaultTol);
  static SU2Element identity() { return SU2Element(Mat2::Identity()); }
  const Mat2& matrix() const noexcept { return m_; }

 private:
  Mat2 m_;
};

/// Hermitian W = w0 I + w1 sigma1 + w2 sigma2 + w3 sigma3.
class TranslationMatrix {
 public:
  /// Throws NotInGroup if `m` is not Hermitian within tol.
  explicit TranslationMatrix(const Mat2& m, double tol = kDefaultTol);
  static TranslationMatrix zero() { return TranslationMatrix(Mat2::Zero()); }
  static TranslationMatrix from_params(double w0, double w1, double w2,
                                       double w3);
  /// Same parameterization with every eigenvalue replaced by its sign, so
  /// that W^2 = I. Throws Degenerate if an eigenvalue is within tol of zero.
  static TranslationMatrix normalized_from_params(double w0, double w1,
                                                  double w2, double w3,
                                                  double tol = kDefaultTol);

  const Mat2& matrix() const noexcept { return m_; }
  bool normalized() const noexcept { return normalized_; }

 private:
  Mat2 m_;
  bool normalized_ = false;
};

/// Pauli matrices, index 0 being the identity.
const std::array<Mat2, 4>& pauli();

GroupElement poincare_matrix(const SL2CElement& a, const TranslationMatrix& w);
GroupElement lorentz_matrix(const SL2CElement& a);

/// (1/sqrt 2) diag((I + iW) beta, beta^dagger (I - iW)). Throws NotNormalized
/// unless W^2 = I within tol.
GroupElement dyn_matrix(const SU2Element& beta, const TranslationMatrix& w,
                        double tol = kDefaultTol);
/// diag(beta, beta^dagger).
GroupElement dyn_matrix(const SU2Element& beta);

struct DynFrameMap {
  SectorOperator plus;
  SectorOperator minus;

  const SectorOperator& block(Sector s) const {
    return s == Sector::Plus ? plus : minus;
  }
  /// The identity operator restricted to both sectors.
  static DynFrameMap identity();
};

/// Diagonal blocks of a unitary, pseudo-unitary, block-diagonal element.
/// Throws NonBlockDiagonal or NotInGroup otherwise.
DynFrameMap dyn_restriction(const GroupElement& u, double tol = kDefaultTol);

/// exp(Y) for Y = X g, with X a combination of the fixed anti-Hermitian basis
/// below weighted by 15 draws uniform in [-1, 1].
GroupElement random_su22(std::uint64_t seed);
/// Same construction from explicit coefficients.
GroupElement su22_from_coefficients(const std::array<double, 15>& x);
/// The 15 anti-Hermitian, g-traceless generators used by random_su22.
const std::array<Mat4, 15>& su22_generator_basis();

SU2Element random_su2(Rng& rng);
SL2CElement random_sl2c(Rng& rng, double scale = 0.5);
TranslationMatrix random_translation(Rng& rng);
TranslationMatrix random_normalized_translation(Rng& rng);
/// dyn_matrix of a random SU(2) element and a random normalized W.
GroupElement random_dyn(Rng& rng);

}  // namespace cartan
