#include <gtest/gtest.h>

#include "cartan/space.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {

CartanVector vec(const oracle::R4& r) { return CartanVector(Bra4(r)); }

}  // namespace

TEST(HilbertInner, CanonicalBasis) {
  EXPECT_EQ(hilbert_inner(CartanVector::basis(0), CartanVector::basis(0)), Complex(1));
  EXPECT_EQ(hilbert_inner(CartanVector::basis(0), CartanVector::basis(2)), Complex(0));
}

TEST(HilbertInner, ConjugatesSecondArgument) {
  const CartanVector x(1.0, kI, 0.0, 0.0);
  EXPECT_NEAR(std::abs(hilbert_inner(x, x) - Complex(2)), 0.0, 1e-15);
}

TEST(IndefiniteInner, Signature) {
  EXPECT_EQ(indefinite_inner(CartanVector::basis(0), CartanVector::basis(0)), Complex(1));
  EXPECT_EQ(indefinite_inner(CartanVector::basis(2), CartanVector::basis(2)), Complex(-1));
  const CartanVector x(1.0, 0.0, 1.0, 0.0);
  const CartanVector y(1.0, 0.0, -1.0, 0.0);
  EXPECT_EQ(indefinite_inner(x, y), Complex(2));
}

TEST(IndefiniteInner, HermitianSymmetryOnRandomVectors) {
  oracle::Gen gen(11);
  for (int i = 0; i < 200; ++i) {
    const auto x = vec(gen.row4());
    const auto y = vec(gen.row4());
    EXPECT_LT(std::abs(indefinite_inner(x, y) - std::conj(indefinite_inner(y, x))), 1e-14);
  }
}

TEST(IndefiniteInner, MatchesMatrixForm) {
  oracle::Gen gen(12);
  const oracle::M4 g = oracle::g4();
  for (int i = 0; i < 200; ++i) {
    const oracle::R4 x = gen.row4();
    const oracle::R4 y = gen.row4();
    const Complex expected = (x * g * y.adjoint())(0, 0);
    EXPECT_LT(std::abs(indefinite_inner(vec(x), vec(y)) - expected), 1e-14);
    EXPECT_LT(std::abs(hilbert_inner(vec(x), vec(y)) - (x * y.adjoint())(0, 0)), 1e-14);
  }
}

TEST(ApplyMetric, FlipsMinusComponents) {
  const CartanVector x(1.0, 2.0, 3.0, 4.0);
  const CartanVector gx = apply_metric(x);
  EXPECT_EQ(gx.components(), Bra4(1.0, 2.0, -3.0, -4.0));
  EXPECT_EQ(apply_metric(gx).components(), x.components());
  EXPECT_EQ(apply_metric(CartanVector()).components(), Bra4::Zero());
}

TEST(Project, KeepsSectorComponents) {
  const CartanVector x(1.0, 2.0, 3.0, 4.0);
  EXPECT_EQ(project(x, Sector::Plus).components(), Bra2(1.0, 2.0));
  EXPECT_EQ(project(x, Sector::Minus).components(), Bra2(3.0, 4.0));
  const CartanVector back = embed(project(x, Sector::Plus)) + embed(project(x, Sector::Minus));
  EXPECT_EQ(back.components(), x.components());
}

TEST(Project, EmbedIsSection) {
  const SectorVector v(Sector::Minus, Complex(0.5, 1.0), Complex(-2.0, 0.0));
  EXPECT_EQ(project(embed(v), Sector::Minus).components(), v.components());
  EXPECT_EQ(project(embed(v), Sector::Plus).components(), Bra2::Zero());
}

TEST(SectorInner, SectorSigns) {
  const auto e_plus = SectorVector::basis(Sector::Plus, 0);
  const auto e_minus = SectorVector::basis(Sector::Minus, 0);
  EXPECT_EQ(sector_inner(e_plus, e_plus), Complex(1));
  EXPECT_EQ(sector_inner(e_minus, e_minus), Complex(-1));
}

TEST(SectorInner, MismatchThrows) {
  const auto a = SectorVector::basis(Sector::Plus, 0);
  const auto b = SectorVector::basis(Sector::Minus, 0);
  try {
    sector_inner(a, b);
    FAIL() << "expected SectorMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SectorMismatch);
  }
  EXPECT_THROW(a + b, Error);
}

TEST(SectorInner, DecompositionOfIndefiniteProduct) {
  oracle::Gen gen(13);
  for (int i = 0; i < 500; ++i) {
    const auto x = vec(gen.row4());
    const auto y = vec(gen.row4());
    const Complex sum = sector_inner(project(x, Sector::Plus), project(y, Sector::Plus)) +
                        sector_inner(project(x, Sector::Minus), project(y, Sector::Minus));
    EXPECT_LT(std::abs(sum - indefinite_inner(x, y)), 1e-14);
  }
}

TEST(AdjointComponents, LoweringInSector) {
  const Complex a(1.0, 2.0), b(-0.5, 0.25);
  const auto lp = adjoint_components(SectorVector(Sector::Plus, a, b));
  EXPECT_EQ(lp[0], a);
  EXPECT_EQ(lp[1], b);
  const auto lm = adjoint_components(SectorVector(Sector::Minus, a, b));
  EXPECT_EQ(lm[0], -a);
  EXPECT_EQ(lm[1], -b);
}

TEST(AdjointComponents, RaiseInvertsLower) {
  oracle::Gen gen(14);
  for (Sector s : {Sector::Plus, Sector::Minus}) {
    for (int i = 0; i < 100; ++i) {
      const SectorVector x(s, Bra2(gen.row2()));
      const SectorVector y(s, Bra2(gen.row2()));
      EXPECT_EQ(raise_components(s, adjoint_components(x)).components(), x.components());
      const Complex via_adjoint =
          adjoint_sector_inner(adjoint_components(x), adjoint_components(y), s);
      EXPECT_LT(std::abs(via_adjoint - sector_inner(x, y)), 1e-14);
    }
  }
}

TEST(CartanVector, RejectsNonFinite) {
  Bra4 v = Bra4::Zero();
  v(2) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  try {
    CartanVector x(v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
}
