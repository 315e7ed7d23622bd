#include <functional>

#include <gtest/gtest.h>

#include "cartan/su22.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {

const double kRt2 = std::sqrt(2.0);

oracle::M4 boost(const oracle::M2& b) {
  oracle::M4 y = oracle::M4::Zero();
  y.topRightCorner<2, 2>() = b;
  y.bottomLeftCorner<2, 2>() = b.adjoint();
  return oracle::expm(y);
}

Mat2 sigma3() {
  Mat2 s = Mat2::Zero();
  s(0, 0) = 1.0;
  s(1, 1) = -1.0;
  return s;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Usage;
}

}  // namespace

TEST(PseudoUnitary, Predicates) {
  EXPECT_TRUE(is_pseudo_unitary(Mat4(Mat4::Identity())));
  EXPECT_TRUE(is_pseudo_unitary(Mat4(oracle::g4())));
  Mat4 d = Mat4::Zero();
  d.diagonal() << 2.0, 1.0, 1.0, 0.5;
  EXPECT_FALSE(is_pseudo_unitary(d));
  const oracle::M4 g = oracle::g4();
  EXPECT_NEAR(pseudo_unitarity_residual(d), oracle::maxabs(d * g * d.adjoint() - g), 1e-15);
  EXPECT_NEAR(det_residual(d), 0.0, 1e-15);
}

TEST(GroupElement, CertifyRejectsNonMembers) {
  Mat4 d = Mat4::Identity();
  d(0, 0) = 2.0;
  EXPECT_EQ(code_of([&] { GroupElement::certify(d); }), ErrorCode::NotInGroup);
  // Pseudo-unitary with determinant -1.
  Mat4 r = Mat4::Identity();
  r(0, 0) = -1.0;
  EXPECT_EQ(code_of([&] { GroupElement::certify(r); }), ErrorCode::NotInGroup);
}

TEST(GroupElement, IdentityCertificates) {
  const GroupElement e = GroupElement::identity();
  EXPECT_TRUE(e.certificates().pseudo_unitary);
  EXPECT_TRUE(e.certificates().special);
  EXPECT_TRUE(e.is_unitary());
  EXPECT_TRUE(e.recheck());
  EXPECT_EQ(e.as_operator().entries(), Operator::identity().entries());
}

TEST(BlockConstraints, IdentityAndUnitaryElements) {
  EXPECT_EQ(check_block_constraints(GroupElement::identity()).max(), 0.0);
  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    const GroupElement d = random_dyn(rng);
    EXPECT_LT(check_block_constraints(d).mixed, 1e-15);
    EXPECT_LT(check_block_constraints(d).max(), 1e-13);
  }
}

TEST(BlockConstraints, RandomElements) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    EXPECT_LT(check_block_constraints(random_su22(seed)).max(), 1e-10);
  }
}

TEST(RandomSU22, MatchesIndependentExponential) {
  const auto& basis = su22_generator_basis();
  const oracle::M4 g = oracle::g4();
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 977ULL, 123456789ULL}) {
    const auto x = oracle::mt_uniforms(seed, 15, -1.0, 1.0);
    oracle::M4 gen = oracle::M4::Zero();
    for (int k = 0; k < 15; ++k) gen += x[k] * basis[k];
    const oracle::M4 expected = oracle::expm(oracle::M4(gen * g));
    EXPECT_LT(oracle::maxabs(random_su22(seed).matrix() - expected), 1e-12) << seed;
  }
}

TEST(RandomSU22, BasisIsAntiHermitianAndTraceless) {
  const oracle::M4 g = oracle::g4();
  for (const Mat4& x : su22_generator_basis()) {
    EXPECT_EQ(oracle::maxabs(x + x.adjoint()), 0.0);
    EXPECT_EQ(std::abs((x * g).trace()), 0.0);
  }
}

TEST(RandomSU22, ZeroCoefficientsGiveIdentity) {
  std::array<double, 15> zero{};
  EXPECT_LT(max_abs_diff(su22_from_coefficients(zero).matrix(), Mat4::Identity()), 1e-15);
}

TEST(RandomSU22, Deterministic) {
  EXPECT_EQ(random_su22(7).matrix(), random_su22(7).matrix());
  EXPECT_NE(random_su22(7).matrix(), random_su22(8).matrix());
}

TEST(RandomSU22, ThousandSamplesInGroup) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Mat4 u = random_su22(seed).matrix();
    ASSERT_LT(pseudo_unitarity_residual(u), 1e-10);
    ASSERT_LT(det_residual(u), 1e-9);
  }
}

TEST(CartanDecompose, UnitaryInput) {
  const GroupElement d = dyn_matrix(SU2Element::identity(),
                                    TranslationMatrix(sigma3()));
  const CartanFactors f = cartan_decompose(d);
  EXPECT_LT(max_abs_diff(f.positive_part.matrix(), Mat4::Identity()), 1e-12);
  EXPECT_LT(max_abs_diff(f.unitary_part.matrix(), d.matrix()), 1e-12);
}

TEST(CartanDecompose, IdentityInput) {
  const CartanFactors f = cartan_decompose(GroupElement::identity());
  EXPECT_LT(max_abs_diff(f.unitary_part.matrix(), Mat4::Identity()), 1e-14);
  EXPECT_LT(max_abs_diff(f.positive_part.matrix(), Mat4::Identity()), 1e-14);
}

TEST(CartanDecompose, PositiveInputIsItsOwnPositivePart) {
  oracle::Gen gen(43);
  for (int i = 0; i < 20; ++i) {
    const oracle::M4 h = boost(0.5 * gen.mat2());
    const CartanFactors f = cartan_decompose(GroupElement::certify(Mat4(h), 1e-10, 1e-9));
    EXPECT_LT(oracle::maxabs(f.positive_part.matrix() - h), 1e-10);
    EXPECT_LT(max_abs_diff(f.unitary_part.matrix(), Mat4::Identity()), 1e-10);
  }
}

TEST(CartanDecompose, RandomElementsAgainstDenmanBeavers) {
  for (std::uint64_t seed = 100; seed < 300; ++seed) {
    const GroupElement u = random_su22(seed);
    const CartanFactors f = cartan_decompose(u);
    const oracle::M4 m = u.matrix();
    const oracle::M4 h = oracle::sqrtm_db(m.adjoint() * m);
    EXPECT_LT(oracle::maxabs(f.positive_part.matrix() - h), 1e-9) << seed;
    EXPECT_LT(f.reconstruction_residual, 1e-9);
    EXPECT_LT(oracle::maxabs(f.unitary_part.matrix() * f.positive_part.matrix() - m), 1e-9);
    const oracle::M4 hh = f.positive_part.matrix();
    EXPECT_LT(oracle::maxabs(hh * hh - m.adjoint() * m), 1e-9);
    EXPECT_GT(f.min_eigenvalue, 0.0);
    EXPECT_LT(unitarity_residual(f.unitary_part.matrix()), 1e-9);
  }
}

TEST(Poincare, IdentityWithoutTranslation) {
  const GroupElement p = poincare_matrix(SL2CElement::identity(), TranslationMatrix::zero());
  EXPECT_LT(max_abs_diff(p.matrix(), Mat4(oracle::g4())), 1e-15);
}

TEST(Poincare, IdentityWithSigma3) {
  const GroupElement p = poincare_matrix(SL2CElement::identity(), TranslationMatrix(sigma3()));
  const Mat2 id = Mat2::Identity();
  const Mat2 s3 = sigma3();
  EXPECT_LT(max_abs_diff(p.matrix().block<2, 2>(0, 0), Mat2((2.0 * id + kI * s3) / 2.0)), 1e-15);
  EXPECT_LT(max_abs_diff(p.matrix().block<2, 2>(0, 2), Mat2(-kI * s3 / 2.0)), 1e-15);
  EXPECT_LT(max_abs_diff(p.matrix().block<2, 2>(2, 0), Mat2(-kI * s3 / 2.0)), 1e-15);
  EXPECT_LT(max_abs_diff(p.matrix().block<2, 2>(2, 2), Mat2((-2.0 * id + kI * s3) / 2.0)), 1e-15);
  EXPECT_TRUE(is_pseudo_unitary(p.matrix()));
}

TEST(Poincare, LorentzIsZeroTranslation) {
  Rng rng(44);
  for (int i = 0; i < 20; ++i) {
    const SL2CElement a = random_sl2c(rng);
    EXPECT_EQ(lorentz_matrix(a).matrix(),
              poincare_matrix(a, TranslationMatrix::zero()).matrix());
  }
}

TEST(Poincare, RandomParametersArePseudoUnitary) {
  Rng rng(45);
  for (int i = 0; i < 500; ++i) {
    const SL2CElement a = random_sl2c(rng);
    const TranslationMatrix w = random_translation(rng);
    const Mat4 p = poincare_matrix(a, w).matrix();
    ASSERT_LT(pseudo_unitarity_residual(p), 1e-10);
    ASSERT_LT(det_residual(p), 1e-9);
  }
}

TEST(Dyn, IdentityWithSigma3) {
  const GroupElement d = dyn_matrix(SU2Element::identity(), TranslationMatrix(sigma3()));
  const Complex a = Complex(1, 1) / kRt2;
  const Complex b = Complex(1, -1) / kRt2;
  Mat4 expected = Mat4::Zero();
  expected.diagonal() << a, b, b, a;
  EXPECT_LT(max_abs_diff(d.matrix(), expected), 1e-15);
  EXPECT_TRUE(d.is_unitary());
}

TEST(Dyn, WithoutTranslation) {
  Rng rng(46);
  const SU2Element beta = random_su2(rng);
  const Mat4 d = dyn_matrix(beta).matrix();
  EXPECT_EQ(Mat2(d.block<2, 2>(0, 0)), beta.matrix());
  EXPECT_EQ(Mat2(d.block<2, 2>(2, 2)), Mat2(beta.matrix().adjoint()));
  EXPECT_EQ(max_abs(d.block<2, 2>(0, 2)), 0.0);
}

TEST(Dyn, RequiresNormalizedTranslation) {
  const TranslationMatrix w = TranslationMatrix::from_params(0.3, 0.1, 0.0, 0.0);
  EXPECT_EQ(code_of([&] { dyn_matrix(SU2Element::identity(), w); }), ErrorCode::NotNormalized);
}

TEST(Dyn, RandomElementsAreUnitaryAndPseudoUnitary) {
  Rng rng(47);
  for (int i = 0; i < 500; ++i) {
    const Mat4 d = random_dyn(rng).matrix();
    ASSERT_LT(unitarity_residual(d), 1e-10);
    ASSERT_LT(pseudo_unitarity_residual(d), 1e-10);
    ASSERT_EQ(max_abs(d.block<2, 2>(0, 2)), 0.0);
    ASSERT_EQ(max_abs(d.block<2, 2>(2, 0)), 0.0);
  }
}

TEST(Translation, NormalizedSquaresToIdentity) {
  const TranslationMatrix w = TranslationMatrix::normalized_from_params(0.2, 0.5, -0.3, 0.1);
  EXPECT_TRUE(w.normalized());
  EXPECT_LT(max_abs_diff(Mat2(w.matrix() * w.matrix()), Mat2::Identity()), 1e-14);
  EXPECT_LT(max_abs_diff(w.matrix(), Mat2(w.matrix().adjoint())), 1e-15);
  // w0 = |w| puts an eigenvalue at zero.
  EXPECT_EQ(code_of([] { TranslationMatrix::normalized_from_params(1.0, 1.0, 0.0, 0.0); }),
            ErrorCode::Degenerate);
}

TEST(Translation, RejectsNonHermitian) {
  Mat2 m = Mat2::Zero();
  m(0, 1) = 1.0;
  EXPECT_EQ(code_of([&] { TranslationMatrix t(m); }), ErrorCode::NotInGroup);
}

TEST(DynRestriction, IdentityGivesIdentityBlocks) {
  const DynFrameMap m = dyn_restriction(GroupElement::identity());
  EXPECT_EQ(m.plus.entries(), SectorOperator::identity(Sector::Plus).entries());
  EXPECT_EQ(m.minus.entries(), SectorOperator::identity(Sector::Minus).entries());
}

TEST(DynRestriction, BlockLayout) {
  Rng rng(48);
  for (int i = 0; i < 50; ++i) {
    const SU2Element beta = random_su2(rng);
    const TranslationMatrix w = random_normalized_translation(rng);
    const DynFrameMap m = dyn_restriction(dyn_matrix(beta, w));
    const Mat2 id = Mat2::Identity();
    const Mat2 plus = (id + kI * w.matrix()) * beta.matrix() / kRt2;
    const Mat2 minus = beta.matrix().adjoint() * (id - kI * w.matrix()) / kRt2;
    EXPECT_LT(max_abs_diff(m.plus.delta(), plus), 1e-14);
    EXPECT_LT(max_abs_diff(m.minus.delta(), minus), 1e-14);
    for (Sector s : {Sector::Plus, Sector::Minus}) {
      const SectorOperator& b = m.block(s);
      EXPECT_LT(std::abs(sector_trace(compose(b, star(b))) - Complex(2)), 1e-13);
    }
  }
}

TEST(DynRestriction, RejectsGeneralElements) {
  EXPECT_EQ(code_of([] { dyn_restriction(random_su22(3)); }), ErrorCode::NonBlockDiagonal);
}

TEST(GroupProduct, ClosedUnderMultiplication) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GroupElement p = random_su22(seed) * random_su22(seed + 1000);
    EXPECT_LT(pseudo_unitarity_residual(p.matrix()), 1e-9);
  }
}

TEST(Subgroups, SL2CAndSU2Validation) {
  Mat2 m = Mat2::Identity();
  m(0, 0) = 2.0;
  EXPECT_EQ(code_of([&] { SL2CElement a(m); }), ErrorCode::NotInGroup);
  Mat2 shear = Mat2::Identity();
  shear(0, 1) = 1.0;
  EXPECT_NO_THROW(SL2CElement a(shear));
  EXPECT_EQ(code_of([&] { SU2Element b(shear); }), ErrorCode::NotInGroup);
  const auto& s = pauli();
  EXPECT_EQ(s[0], Mat2::Identity());
  EXPECT_EQ(Mat2(s[2] * s[2]), Mat2::Identity());
}
