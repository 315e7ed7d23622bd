#pragma once

#include "cartan/space.hpp"

// Operators are stored by their metric-weighted entries
//   A_{mu nu} = <e_mu| A || e_nu>_g,
// which relate to the plain (Hilbert) matrix a acting on bras from the right
// through A = a g. Under this storage the pseudo-adjoint is the conjugate
// transpose of the entries, and the Hermitian adjoint picks up a g on either
// side.

namespace cartan {

class Operator {
 public:
  Operator() : entries_(Mat4::Zero()) {}
  explicit Operator(const Mat4& entries);

  static Operator identity();
  /// The metric g viewed as an operator. Its entries are Delta_{mu nu}.
  static Operator metric();
  static Operator projector(Sector s);
  static Operator zero() { return Operator(); }
  static Operator from_delta(const Mat4& delta);

  const Mat4& entries() const noexcept { return entries_; }
  /// Hilbert-convention matrix a with <x|A = x a.
  Mat4 delta() const;

  CartanVector apply(const CartanVector& x) const;

  friend Operator operator+(const Operator& a, const Operator& b) {
    return Operator(Mat4(a.entries_ + b.entries_));
  }
  friend Operator operator-(const Operator& a, const Operator& b) {
    return Operator(Mat4(a.entries_ - b.entries_));
  }
  friend Operator operator*(Complex c, const Operator& a) {
    return Operator(Mat4(c * a.entries_));
  }

 private:
  Mat4 entries_;
};

/// A 2x2 block mapping bras of `domain` into bras of `range`. Entries are
/// g-weighted as for Operator.
class SectorOperator {
 public:
  SectorOperator(Sector domain, Sector range, const Mat2& entries);
  /// Sector-preserving operator on `s`.
  SectorOperator(Sector s, const Mat2& entries) : SectorOperator(s, s, entries) {}

  static SectorOperator identity(Sector s);
  static SectorOperator zero(Sector domain, Sector range);
  static SectorOperator from_delta(Sector domain, Sector range,
                                   const Mat2& delta);

  Sector domain() const noexcept { return domain_; }
  Sector range() const noexcept { return range_; }
  bool preserves_sector() const noexcept { return domain_ == range_; }
  const Mat2& entries() const noexcept { return entries_; }
  Mat2 delta() const;

  /// <x| A for x in the domain sector.
  SectorVector apply(const SectorVector& x) const;

  friend SectorOperator operator+(const SectorOperator& a,
                                  const SectorOperator& b);
  friend SectorOperator operator-(const SectorOperator& a,
                                  const SectorOperator& b);
  friend SectorOperator operator*(Complex c, const SectorOperator& a) {
    return SectorOperator(a.domain_, a.range_, Mat2(c * a.entries_));
  }

 private:
  Sector domain_;
  Sector range_;
  Mat2 entries_;
};

struct BlockDecomposition {
  SectorOperator pp;
  SectorOperator pm;
  SectorOperator mp;
  SectorOperator mm;

  const SectorOperator& block(Sector domain, Sector range) const;
};

enum class ConjugationKind { Dagger, Star };

Operator dagger(const Operator& a);
Operator star(const Operator& a);
SectorOperator dagger(const SectorOperator& a);
SectorOperator star(const SectorOperator& a);
Operator conjugate(const Operator& a, ConjugationKind kind);
SectorOperator conjugate(const SectorOperator& a, ConjugationKind kind);

/// Product AB (A acts first on a bra). Inserts g* between the entry arrays.
Operator compose(const Operator& a, const Operator& b);
/// Throws SectorMismatch unless a.range() == b.domain().
SectorOperator compose(const SectorOperator& a, const SectorOperator& b);

BlockDecomposition block_decompose(const Operator& a);
Operator reassemble(const BlockDecomposition& blocks);

/// Diagonal block on `s`. Throws NonBlockDiagonal if the operator mixes
/// sectors by more than `tol`.
SectorOperator restrict(const Operator& a, Sector s, double tol = kDefaultTol);

/// Entries A*^{mu nu} of the same restriction in the adjoint space.
/// Throws SectorMismatch for sector-changing blocks.
Mat2 adjoint_representation(const SectorOperator& a);
SectorOperator from_adjoint_representation(Sector s, const Mat2& adjoint);

/// A_00 + A_11 - A_22 - A_33, i.e. the ordinary trace of the Hilbert matrix.
Complex trace(const Operator& a);
/// A_{mu lambda} g*^{lambda mu}. Throws SectorMismatch for off-diagonal blocks.
Complex sector_trace(const SectorOperator& a);

/// <x| A || y>_g.
Complex matrix_element(const CartanVector& x, const Operator& a,
                       const CartanVector& y);
/// <x| A || y>_g with x in a.domain() and y in a.range().
Complex matrix_element(const SectorVector& x, const SectorOperator& a,
                       const SectorVector& y);

bool is_pseudo_hermitian(const Operator& a, double tol = kDefaultTol);
bool is_pseudo_hermitian(const SectorOperator& a, double tol = kDefaultTol);
bool is_hermitian(const SectorOperator& a, double tol = kDefaultTol);
bool is_block_diagonal(const Operator& a, double tol = kDefaultTol);

/// Max residual of the pseudo-unitarity relations A g* A^star = g and
/// A^star g* A = g for a sector-preserving block.
double pseudo_unitarity_residual(const SectorOperator& a);
/// Max residual of A^dagger A = I on the Hilbert matrix.
double unitarity_residual(const SectorOperator& a);

}  // namespace cartan
