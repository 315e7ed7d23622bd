#include "cartan/operators.hpp"

#include <string>

namespace cartan {

namespace {

const Mat4& g4() {
  static const Mat4 g = metric_matrix(MetricKind::IndefiniteG);
  return g;
}

void require_finite(const auto& m, const char* where) {
  if (!all_finite(m)) {
    throw Error(ErrorCode::NonFinite, std::string(where) + ": non-finite entry");
  }
}

void require_preserving(const SectorOperator& a, const char* where) {
  if (!a.preserves_sector()) {
    throw Error(ErrorCode::SectorMismatch,
                std::string(where) + ": operator changes sector");
  }
}

}  // namespace

Operator::Operator(const Mat4& entries) : entries_(entries) {
  require_finite(entries_, "Operator");
}

Operator Operator::identity() { return Operator(g4()); }

Operator Operator::metric() { return Operator(Mat4::Identity()); }

Operator Operator::projector(Sector s) {
  Mat4 delta = Mat4::Zero();
  const int k = offset(s);
  delta(k, k) = 1.0;
  delta(k + 1, k + 1) = 1.0;
  return from_delta(delta);
}

Operator Operator::from_delta(const Mat4& delta) {
  return Operator(Mat4(delta * g4()));
}

Mat4 Operator::delta() const { return entries_ * g4(); }

CartanVector Operator::apply(const CartanVector& x) const {
  return CartanVector(Bra4(x.components() * delta()));
}

SectorOperator::SectorOperator(Sector domain, Sector range, const Mat2& entries)
    : domain_(domain), range_(range), entries_(entries) {
  require_finite(entries_, "SectorOperator");
}

SectorOperator SectorOperator::identity(Sector s) {
  return SectorOperator(s, s, sector_metric(s));
}

SectorOperator SectorOperator::zero(Sector domain, Sector range) {
  return SectorOperator(domain, range, Mat2::Zero());
}

SectorOperator SectorOperator::from_delta(Sector domain, Sector range,
                                          const Mat2& delta) {
  return SectorOperator(domain, range, Mat2(sign(range) * delta));
}

Mat2 SectorOperator::delta() const { return sign(range_) * entries_; }

SectorVector SectorOperator::apply(const SectorVector& x) const {
  if (x.sector() != domain_) {
    throw Error(ErrorCode::SectorMismatch,
                "SectorOperator::apply: bra outside the domain sector");
  }
  return SectorVector(range_, Bra2(x.components() * delta()));
}

SectorOperator operator+(const SectorOperator& a, const SectorOperator& b) {
  if (a.domain_ != b.domain_ || a.range_ != b.range_) {
    throw Error(ErrorCode::SectorMismatch, "SectorOperator +: sector tags differ");
  }
  return SectorOperator(a.domain_, a.range_, Mat2(a.entries_ + b.entries_));
}

SectorOperator operator-(const SectorOperator& a, const SectorOperator& b) {
  if (a.domain_ != b.domain_ || a.range_ != b.range_) {
    throw Error(ErrorCode::SectorMismatch, "SectorOperator -: sector tags differ");
  }
  return SectorOperator(a.domain_, a.range_, Mat2(a.entries_ - b.entries_));
}

const SectorOperator& BlockDecomposition::block(Sector domain,
                                                Sector range) const {
  if (domain == Sector::Plus) return range == Sector::Plus ? pp : pm;
  return range == Sector::Plus ? mp : mm;
}

Operator dagger(const Operator& a) {
  return Operator(Mat4(g4() * a.entries().adjoint() * g4()));
}

Operator star(const Operator& a) { return Operator(Mat4(a.entries().adjoint())); }

SectorOperator dagger(const SectorOperator& a) {
  const double s = sign(a.domain()) * sign(a.range());
  return SectorOperator(a.range(), a.domain(), Mat2(s * a.entries().adjoint()));
}

SectorOperator star(const SectorOperator& a) {
  return SectorOperator(a.range(), a.domain(), Mat2(a.entries().adjoint()));
}

Operator conjugate(const Operator& a, ConjugationKind kind) {
  return kind == ConjugationKind::Dagger ? dagger(a) : star(a);
}

SectorOperator conjugate(const SectorOperator& a, ConjugationKind kind) {
  return kind == ConjugationKind::Dagger ? dagger(a) : star(a);
}

Operator compose(const Operator& a, const Operator& b) {
  return Operator(Mat4(a.entries() * g4() * b.entries()));
}

SectorOperator compose(const SectorOperator& a, const SectorOperator& b) {
  if (a.range() != b.domain()) {
    throw Error(ErrorCode::SectorMismatch,
                "compose: range of the first factor differs from the domain "
                "of the second");
  }
  return SectorOperator(a.domain(), b.range(),
                        Mat2(sign(a.range()) * a.entries() * b.entries()));
}

BlockDecomposition block_decompose(const Operator& a) {
  const Mat4& e = a.entries();
  return BlockDecomposition{
      SectorOperator(Sector::Plus, Sector::Plus, Mat2(e.block<2, 2>(0, 0))),
      SectorOperator(Sector::Plus, Sector::Minus, Mat2(e.block<2, 2>(0, 2))),
      SectorOperator(Sector::Minus, Sector::Plus, Mat2(e.block<2, 2>(2, 0))),
      SectorOperator(Sector::Minus, Sector::Minus, Mat2(e.block<2, 2>(2, 2)))};
}

Operator reassemble(const BlockDecomposition& blocks) {
  Mat4 e;
  e.block<2, 2>(0, 0) = blocks.pp.entries();
  e.block<2, 2>(0, 2) = blocks.pm.entries();
  e.block<2, 2>(2, 0) = blocks.mp.entries();
  e.block<2, 2>(2, 2) = blocks.mm.entries();
  return Operator(e);
}

SectorOperator restrict(const Operator& a, Sector s, double tol) {
  if (!is_block_diagonal(a, tol)) {
    throw Error(ErrorCode::NonBlockDiagonal,
                "restrict: operator mixes the two sectors");
  }
  const int k = offset(s);
  return SectorOperator(s, s, Mat2(a.entries().block<2, 2>(k, k)));
}

Mat2 adjoint_representation(const SectorOperator& a) {
  require_preserving(a, "adjoint_representation");
  const Mat2 g = sector_metric(a.domain());
  return g * a.entries() * g;
}

SectorOperator from_adjoint_representation(Sector s, const Mat2& adjoint) {
  const Mat2 g = sector_metric(s);
  return SectorOperator(s, s, Mat2(g * adjoint * g));
}

Complex trace(const Operator& a) {
  const Mat4& e = a.entries();
  return e(0, 0) + e(1, 1) - e(2, 2) - e(3, 3);
}

Complex sector_trace(const SectorOperator& a) {
  require_preserving(a, "sector_trace");
  return (a.entries() * sector_metric(a.domain())).trace();
}

Complex matrix_element(const CartanVector& x, const Operator& a,
                       const CartanVector& y) {
  return (x.components() * a.entries() * y.components().adjoint())(0, 0);
}

Complex matrix_element(const SectorVector& x, const SectorOperator& a,
                       const SectorVector& y) {
  if (x.sector() != a.domain() || y.sector() != a.range()) {
    throw Error(ErrorCode::SectorMismatch,
                "matrix_element: vectors do not match the operator's sectors");
  }
  return (x.components() * a.entries() * y.components().adjoint())(0, 0);
}

bool is_pseudo_hermitian(const Operator& a, double tol) {
  return max_abs_diff(a.entries(), a.entries().adjoint()) <= tol;
}

bool is_pseudo_hermitian(const SectorOperator& a, double tol) {
  return a.preserves_sector() &&
         max_abs_diff(a.entries(), a.entries().adjoint()) <= tol;
}

bool is_hermitian(const SectorOperator& a, double tol) {
  const Mat2 d = a.delta();
  return a.preserves_sector() && max_abs_diff(d, d.adjoint()) <= tol;
}

bool is_block_diagonal(const Operator& a, double tol) {
  return max_abs(a.entries().block<2, 2>(0, 2)) <= tol &&
         max_abs(a.entries().block<2, 2>(2, 0)) <= tol;
}

double pseudo_unitarity_residual(const SectorOperator& a) {
  require_preserving(a, "pseudo_unitarity_residual");
  const Mat2 id = SectorOperator::identity(a.domain()).entries();
  return std::max(max_abs_diff(compose(a, star(a)).entries(), id),
                  max_abs_diff(compose(star(a), a).entries(), id));
}

double unitarity_residual(const SectorOperator& a) {
  const Mat2 d = a.delta();
  return max_abs_diff(d.adjoint() * d, Mat2::Identity());
}

}  // namespace cartan
