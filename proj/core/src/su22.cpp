#include "cartan/su22.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <sstream>

namespace cartan {

namespace {

const Mat4& g4() {
  static const Mat4 g = metric_matrix(MetricKind::IndefiniteG);
  return g;
}

std::string residual_message(const char* what, double r) {
  std::ostringstream os;
  os << what << " (residual " << r << ")";
  return os.str();
}

}  // namespace

double pseudo_unitarity_residual(const Mat4& u) {
  return max_abs_diff(u * g4() * u.adjoint(), g4());
}

double unitarity_residual(const Mat4& u) {
  return max_abs_diff(u.adjoint() * u, Mat4::Identity());
}

double det_residual(const Mat4& u) { return std::abs(u.determinant() - 1.0); }

bool is_pseudo_unitary(const Mat4& u, double tol) {
  return pseudo_unitarity_residual(u) < tol;
}

bool is_pseudo_unitary(const Operator& u, double tol) {
  return is_pseudo_unitary(u.entries(), tol);
}

GroupElement GroupElement::certify(const Mat4& u, double tol, double det_tol) {
  if (!all_finite(u)) {
    throw Error(ErrorCode::NonFinite, "group element has non-finite entries");
  }
  const double pu = pseudo_unitarity_residual(u);
  if (!(pu < tol)) {
    throw Error(ErrorCode::NotInGroup,
                residual_message("matrix is not pseudo-unitary", pu));
  }
  const double dr = det_residual(u);
  if (!(dr < det_tol)) {
    throw Error(ErrorCode::NotInGroup,
                residual_message("determinant differs from 1", dr));
  }
  Certificates c;
  c.pseudo_unitary = true;
  c.special = true;
  c.unitary = unitarity_residual(u) < tol;
  return GroupElement(u, c);
}

GroupElement GroupElement::identity() {
  return GroupElement(Mat4::Identity(), Certificates{true, true, true});
}

bool GroupElement::recheck(double tol, double det_tol) const {
  if (certs_.pseudo_unitary && !(pseudo_unitarity_residual(matrix_) < tol)) {
    return false;
  }
  if (certs_.special && !(det_residual(matrix_) < det_tol)) return false;
  if (certs_.unitary && !(unitarity_residual(matrix_) < tol)) return false;
  return true;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  return GroupElement::certify(a.matrix() * b.matrix(), 1e-8, 1e-8);
}

BlockConstraintReport check_block_constraints(const GroupElement& u) {
  const BlockDecomposition b = block_decompose(u.as_operator());
  const auto pp = compose(b.pp, star(b.pp)) + compose(b.pm, star(b.pm));
  const auto mm = compose(b.mp, star(b.mp)) + compose(b.mm, star(b.mm));
  const auto pm = compose(b.pp, star(b.mp)) + compose(b.pm, star(b.mm));
  BlockConstraintReport r;
  r.plus = max_abs_diff(pp.entries(), sector_metric(Sector::Plus));
  r.minus = max_abs_diff(mm.entries(), sector_metric(Sector::Minus));
  r.mixed = max_abs(pm.entries());
  return r;
}

CartanFactors cartan_decompose(const GroupElement& u, double tol) {
  const Mat4& m = u.matrix();
  const Mat4 gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Mat4> eig(gram);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericallySingular,
                "eigendecomposition of u^dagger u did not converge");
  }
  const Eigen::Vector4d lambda = eig.eigenvalues();
  if (!(lambda.minCoeff() >= tol)) {
    throw Error(ErrorCode::NumericallySingular,
                residual_message("u^dagger u is numerically singular",
                                 lambda.minCoeff()));
  }
  const Mat4& v = eig.eigenvectors();
  const Eigen::Vector4cd root = lambda.cwiseSqrt().cast<Complex>();
  const Eigen::Vector4cd inv_root = lambda.cwiseSqrt().cwiseInverse().cast<Complex>();
  Mat4 h = v * root.asDiagonal() * v.adjoint();
  h = 0.5 * (h + h.adjoint()).eval();
  const Mat4 unitary = m * (v * inv_root.asDiagonal() * v.adjoint());

  const double factor_tol = 10 * tol;
  CartanFactors f{GroupElement::certify(unitary, factor_tol, factor_tol),
                  GroupElement::certify(h, factor_tol, factor_tol),
                  max_abs_diff(unitary * h, m), lambda.minCoeff()};
  return f;
}

SL2CElement::SL2CElement(const Mat2& m, double tol) : m_(m) {
  if (!all_finite(m) || !(std::abs(m.determinant() - 1.0) < tol)) {
    throw Error(ErrorCode::NotInGroup, "matrix is not in SL(2,C)");
  }
}

SU2Element::SU2Element(const Mat2& m, double tol) : m_(m) {
  if (!all_finite(m) || !(std::abs(m.determinant() - 1.0) < tol) ||
      !(max_abs_diff(m.adjoint() * m, Mat2::Identity()) < tol)) {
    throw Error(ErrorCode::NotInGroup, "matrix is not in SU(2)");
  }
}

const std::array<Mat2, 4>& pauli() {
  static const std::array<Mat2, 4> s = [] {
    std::array<Mat2, 4> p;
    p[0] = Mat2::Identity();
    p[1] << 0.0, 1.0, 1.0, 0.0;
    p[2] << 0.0, -kI, kI, 0.0;
    p[3] << 1.0, 0.0, 0.0, -1.0;
    return p;
  }();
  return s;
}

TranslationMatrix::TranslationMatrix(const Mat2& m, double tol) : m_(m) {
  if (!all_finite(m) || !(max_abs_diff(m, m.adjoint()) < tol)) {
    throw Error(ErrorCode::NotInGroup, "translation matrix is not Hermitian");
  }
  normalized_ = max_abs_diff(m * m, Mat2::Identity()) < tol;
}

TranslationMatrix TranslationMatrix::from_params(double w0, double w1,
                                                 double w2, double w3) {
  const auto& s = pauli();
  return TranslationMatrix(Mat2(w0 * s[0] + w1 * s[1] + w2 * s[2] + w3 * s[3]));
}

TranslationMatrix TranslationMatrix::normalized_from_params(
    double w0, double w1, double w2, double w3, double tol) {
  // Eigenvalues are w0 +- |w| with eigenprojectors (I +- n.sigma)/2.
  const double r = std::sqrt(w1 * w1 + w2 * w2 + w3 * w3);
  const double lo = w0 - r;
  const double hi = w0 + r;
  if (std::abs(lo) <= tol || std::abs(hi) <= tol) {
    throw Error(ErrorCode::Degenerate,
                "translation matrix has a zero eigenvalue");
  }
  const double slo = lo > 0 ? 1.0 : -1.0;
  const double shi = hi > 0 ? 1.0 : -1.0;
  if (r <= tol) return TranslationMatrix(Mat2(shi * Mat2::Identity()));
  const auto& s = pauli();
  const Mat2 n = (w1 * s[1] + w2 * s[2] + w3 * s[3]) / r;
  const Mat2 w = 0.5 * (shi + slo) * Mat2::Identity() + 0.5 * (shi - slo) * n;
  return TranslationMatrix(w);
}

GroupElement poincare_matrix(const SL2CElement& a, const TranslationMatrix& w) {
  const Mat2& am = a.matrix();
  const Mat2 ainv_dag = am.inverse().adjoint();
  const Mat2 id = Mat2::Identity();
  const Mat2 p = (id + kI * w.matrix()) * ainv_dag;
  const Mat2 q = (id - kI * w.matrix()) * ainv_dag;
  Mat4 u;
  u.block<2, 2>(0, 0) = am + p;
  u.block<2, 2>(0, 2) = am - p;
  u.block<2, 2>(2, 0) = -am + q;
  u.block<2, 2>(2, 2) = -am - q;
  return GroupElement::certify(Mat4(0.5 * u));
}

GroupElement lorentz_matrix(const SL2CElement& a) {
  return poincare_matrix(a, TranslationMatrix::zero());
}

GroupElement dyn_matrix(const SU2Element& beta, const TranslationMatrix& w,
                        double tol) {
  const Mat2& wm = w.matrix();
  if (!(max_abs_diff(wm * wm, Mat2::Identity()) < tol)) {
    throw Error(ErrorCode::NotNormalized, "W^2 differs from the identity");
  }
  const Mat2 id = Mat2::Identity();
  const Mat2& b = beta.matrix();
  Mat4 u = Mat4::Zero();
  u.block<2, 2>(0, 0) = (id + kI * wm) * b;
  u.block<2, 2>(2, 2) = b.adjoint() * (id - kI * wm);
  return GroupElement::certify(Mat4(u / std::sqrt(2.0)), 10 * tol, 10 * tol);
}

GroupElement dyn_matrix(const SU2Element& beta) {
  Mat4 u = Mat4::Zero();
  u.block<2, 2>(0, 0) = beta.matrix();
  u.block<2, 2>(2, 2) = beta.matrix().adjoint();
  return GroupElement::certify(u);
}

DynFrameMap DynFrameMap::identity() {
  return {SectorOperator::identity(Sector::Plus),
          SectorOperator::identity(Sector::Minus)};
}

DynFrameMap dyn_restriction(const GroupElement& u, double tol) {
  const Operator op = u.as_operator();
  if (!is_block_diagonal(op, tol)) {
    throw Error(ErrorCode::NonBlockDiagonal,
                "frame map must be block-diagonal");
  }
  if (!(unitarity_residual(u.matrix()) < tol)) {
    throw Error(ErrorCode::NotInGroup, "frame map must be unitary");
  }
  return {restrict(op, Sector::Plus, tol), restrict(op, Sector::Minus, tol)};
}

const std::array<Mat4, 15>& su22_generator_basis() {
  static const std::array<Mat4, 15> basis = [] {
    std::array<Mat4, 15> b;
    for (auto& m : b) m = Mat4::Zero();
    b[0](0, 0) = kI;
    b[0](1, 1) = -kI;
    b[1](2, 2) = kI;
    b[1](3, 3) = -kI;
    b[2](0, 0) = kI;
    b[2](2, 2) = kI;
    int k = 3;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        b[k](i, j) = 1.0;
        b[k](j, i) = -1.0;
        ++k;
        b[k](i, j) = kI;
        b[k](j, i) = kI;
        ++k;
      }
    }
    return b;
  }();
  return basis;
}

GroupElement su22_from_coefficients(const std::array<double, 15>& x) {
  const auto& basis = su22_generator_basis();
  Mat4 gen = Mat4::Zero();
  for (std::size_t k = 0; k < basis.size(); ++k) gen += x[k] * basis[k];
  const Mat4 y = gen * g4();
  return GroupElement::certify(expm<4>(y), 1e-9, 1e-9);
}

GroupElement random_su22(std::uint64_t seed) {
  Rng rng(seed);
  std::array<double, 15> x;
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  return su22_from_coefficients(x);
}

SU2Element random_su2(Rng& rng) {
  const Bra2 v = random_unit_bra2(rng);
  const Complex a = v(0);
  const Complex b = v(1);
  Mat2 m;
  m << a, b, -std::conj(b), std::conj(a);
  return SU2Element(m);
}

SL2CElement random_sl2c(Rng& rng, double scale) {
  const auto& s = pauli();
  Mat2 x = Mat2::Zero();
  for (int k = 1; k <= 3; ++k) x += scale * rng.complex_uniform() * s[k];
  return SL2CElement(expm<2>(x), 1e-9);
}

TranslationMatrix random_translation(Rng& rng) {
  const double w0 = rng.uniform(-1.0, 1.0);
  const double w1 = rng.uniform(-1.0, 1.0);
  const double w2 = rng.uniform(-1.0, 1.0);
  const double w3 = rng.uniform(-1.0, 1.0);
  return TranslationMatrix::from_params(w0, w1, w2, w3);
}

TranslationMatrix random_normalized_translation(Rng& rng) {
  for (;;) {
    const double w0 = rng.uniform(-1.0, 1.0);
    const double w1 = rng.uniform(-1.0, 1.0);
    const double w2 = rng.uniform(-1.0, 1.0);
    const double w3 = rng.uniform(-1.0, 1.0);
    const double r = std::sqrt(w1 * w1 + w2 * w2 + w3 * w3);
    if (std::abs(w0 - r) > 1e-3 && std::abs(w0 + r) > 1e-3) {
      return TranslationMatrix::normalized_from_params(w0, w1, w2, w3);
    }
  }
}

GroupElement random_dyn(Rng& rng) {
  const SU2Element beta = random_su2(rng);
  return dyn_matrix(beta, random_normalized_translation(rng));
}

}  // namespace cartan
