#include <gtest/gtest.h>

#include "cartan/frames.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {

const Sector kSectors[] = {Sector::Plus, Sector::Minus};

struct RandomFrame {
  FrameTransform f;
  oracle::M2 plus;   // Hilbert blocks rebuilt from beta and W
  oracle::M2 minus;
  const oracle::M2& block(Sector s) const { return s == Sector::Plus ? plus : minus; }
};

RandomFrame random_frame(Rng& rng) {
  const SU2Element beta = random_su2(rng);
  const TranslationMatrix w = random_normalized_translation(rng);
  const oracle::M2 id = oracle::M2::Identity();
  const oracle::M2 b = beta.matrix();
  const oracle::M2 wm = w.matrix();
  const oracle::C i(0, 1);
  RandomFrame r{FrameTransform::from_group(dyn_matrix(beta, w), "random"),
                (id + i * wm) * b / std::sqrt(2.0),
                b.adjoint() * (id - i * wm) / std::sqrt(2.0)};
  return r;
}

State random_state(oracle::Gen& gen, Sector s) {
  return make_state(Bra2(gen.unit_row2()), s);
}

}  // namespace

TEST(FrameIdentity, LeavesEverythingUnchanged) {
  const FrameTransform id = FrameTransform::identity();
  oracle::Gen gen(61);
  for (Sector s : kSectors) {
    const State st = random_state(gen, s);
    EXPECT_EQ(transform_state_amplitudes(st, id), st.vector().components());
    const Observable o(s, 1.5, -0.5);
    for (auto p : {TransformPolicy::FixedMatrix, TransformPolicy::FixedOperator}) {
      EXPECT_EQ(transform_observable(o, id, p).entries(), o.as_operator().entries());
    }
    const MeasurementDevice d = big_pi(st, 0);
    EXPECT_EQ(transform_device(d, id).entries(), d.realized.entries());
  }
}

TEST(FrameIdentity, ReportHasZeroResiduals) {
  oracle::Gen gen(62);
  FrameInputs in;
  for (Sector s : kSectors) {
    in.states.push_back(random_state(gen, s));
    in.states.push_back(random_state(gen, s));
    in.observables.emplace_back(s, 2.0, -1.0);
  }
  const InvarianceReport rep = invariance_report(in, FrameTransform::identity());
  EXPECT_TRUE(rep.passed());
  for (const auto& [id, c] : rep.claims) {
    if (c.kind == ClaimKind::Invariant) {
      EXPECT_EQ(c.residual, 0.0) << id;
      EXPECT_EQ(c.status, ClaimStatus::Pass) << id;
    }
  }
  EXPECT_EQ(rep.claims.at("f19-amplitudes").status, ClaimStatus::Skip);
  EXPECT_EQ(rep.claims.at("fr52-branches").status, ClaimStatus::Skip);
  EXPECT_EQ(rep.claims.at("frame50-expectation").residual, 0.0);
}

TEST(FrameMatrix, MatchesDynBlocks) {
  Rng rng(63);
  for (int i = 0; i < 50; ++i) {
    const RandomFrame r = random_frame(rng);
    for (Sector s : kSectors) {
      EXPECT_LT(oracle::maxabs(frame_matrix(r.f, s) - r.block(s)), 1e-14);
    }
  }
}

TEST(TransformState, NormAndReconstruction) {
  Rng rng(64);
  oracle::Gen gen(65);
  for (int i = 0; i < 300; ++i) {
    const RandomFrame r = random_frame(rng);
    for (Sector s : kSectors) {
      const State st = random_state(gen, s);
      const Bra2 primed = transform_state_amplitudes(st, r.f);
      // Primed amplitudes are the Hilbert overlaps with the primed basis rows.
      const oracle::R2 expected = st.vector().components() * r.block(s).adjoint();
      EXPECT_LT(oracle::maxabs(primed - expected), 1e-14);
      EXPECT_LT(std::abs(primed.squaredNorm() - 1.0), 1e-13);
      EXPECT_LT(max_abs_diff(reconstruct(primed, r.f, s).components(),
                             st.vector().components()),
                1e-13);
    }
  }
}

TEST(TransformObservable, FixedMatrixKeepsSpectrum) {
  Rng rng(66);
  oracle::Gen gen(67);
  for (int i = 0; i < 300; ++i) {
    const RandomFrame r = random_frame(rng);
    for (Sector s : kSectors) {
      const double s0 = gen.real(-2, 2);
      const double s1 = s0 + gen.real(0.05, 3);
      const Observable o(s, s0, s1);
      const SectorOperator fm = transform_observable(o, r.f, TransformPolicy::FixedMatrix);
      Eigen::ComplexEigenSolver<oracle::M2> eig(fm.delta());
      std::vector<double> ev{eig.eigenvalues()(0).real(), eig.eigenvalues()(1).real()};
      std::sort(ev.begin(), ev.end());
      EXPECT_LT(std::abs(ev[0] - s0), 1e-12);
      EXPECT_LT(std::abs(ev[1] - s1), 1e-12);
      EXPECT_LT(std::abs(eig.eigenvalues()(0).imag()), 1e-12);
    }
  }
}

TEST(TransformObservable, FixedOperatorKeepsTrace) {
  Rng rng(68);
  oracle::Gen gen(69);
  for (int i = 0; i < 300; ++i) {
    const RandomFrame r = random_frame(rng);
    for (Sector s : kSectors) {
      const SectorOperator op(s, Mat2(gen.mat2()));
      const SectorOperator fo = transform_observable(op, r.f, TransformPolicy::FixedOperator);
      // Traces taken directly on the 2x2 Hilbert blocks.
      EXPECT_LT(std::abs(fo.delta().trace() - op.delta().trace()), 1e-13);
      const SectorOperator fm = transform_observable(op, r.f, TransformPolicy::FixedMatrix);
      EXPECT_LT(std::abs(fm.delta().trace() - op.delta().trace()), 1e-13);
    }
  }
}

TEST(TransformObservable, RejectsSectorChangingOperators) {
  EXPECT_THROW(transform_observable(SectorOperator::zero(Sector::Plus, Sector::Minus),
                                    FrameTransform::identity(), TransformPolicy::FixedMatrix),
               Error);
}

TEST(TransformDevice, ProjectorSumIsComplete) {
  Rng rng(70);
  for (int i = 0; i < 300; ++i) {
    const RandomFrame r = random_frame(rng);
    for (Sector s : kSectors) {
      const SectorOperator sum =
          transform_device(pi_device(s, 0), r.f) + transform_device(pi_device(s, 1), r.f);
      EXPECT_LT(max_abs_diff(sum.entries(), sector_metric(s)), 1e-13);
      EXPECT_LT(std::abs(sector_trace(sum) - Complex(2)), 1e-13);
    }
  }
}

TEST(TransformDevice, ActsOnPrimedCoordinates) {
  Rng rng(75);
  oracle::Gen gen(76);
  for (int i = 0; i < 300; ++i) {
    const RandomFrame r = random_frame(rng);
    for (Sector s : kSectors) {
      const State st = random_state(gen, s);
      const State other = random_state(gen, s);
      const oracle::M2 u = r.block(s);
      for (const MeasurementDevice& d :
           {pi_device(s, 1), big_pi(other, 0), m_device(st, other, 1)}) {
        // Primed coordinates of <s|D must equal the primed bra times D'.
        const oracle::R2 image = st.vector().components() * d.realized.delta();
        const oracle::R2 primed = st.vector().components() * u.adjoint();
        const oracle::R2 via_primed = primed * transform_device(d, r.f).delta();
        EXPECT_LT(oracle::maxabs(via_primed - image * u.adjoint()), 1e-13);
      }
    }
  }
}

TEST(BranchTransport, SumInvariantButBranchesMove) {
  Rng rng(71);
  oracle::Gen gen(72);
  for (int i = 0; i < 300; ++i) {
    const RandomFrame r = random_frame(rng);
    for (Sector s : kSectors) {
      const State st = random_state(gen, s);
      const oracle::R2 amps = st.vector().components();
      const oracle::R2 primed = amps * r.block(s).adjoint();
      oracle::R2 sum = oracle::R2::Zero();
      double moved = 0.0;
      for (int mu = 0; mu < 2; ++mu) {
        const oracle::R2 branch = primed(mu) * r.block(s).row(mu);
        oracle::R2 original = oracle::R2::Zero();
        original(mu) = amps(mu);
        sum += branch;
        moved = std::max(moved, oracle::maxabs(branch - original));
      }
      EXPECT_LT(oracle::maxabs(sum - amps), 1e-13);
      const double off = std::max(std::abs(r.block(s)(0, 1)), std::abs(r.block(s)(1, 0)));
      if (off > 1e-3) {
        EXPECT_GT(moved, 1e-8);
      }
    }
  }
}

TEST(InvarianceReport, RandomFramesPass) {
  Rng rng(73);
  oracle::Gen gen(74);
  int non_invariant_checked = 0;
  for (int i = 0; i < 200; ++i) {
    const RandomFrame r = random_frame(rng);
    FrameInputs in;
    for (Sector s : kSectors) {
      for (int k = 0; k < 3; ++k) in.states.push_back(random_state(gen, s));
      in.observables.emplace_back(s, gen.real(-2, 0), gen.real(0.1, 2));
    }
    const InvarianceReport rep = invariance_report(in, r.f);
    EXPECT_TRUE(rep.passed()) << i;
    EXPECT_LT(rep.max_invariant_residual(), 1e-10);
    for (const char* id : {"f12-metric", "f15-hilbert", "f16-completeness", "f17-norm",
                           "f18-state", "F-branch-sum", "f43-spectrum", "T1-trace",
                           "t-trace", "f54-born-sum", "d3-weight-sum", "d4-m-sum",
                           "d6-m-product", "frame12-trace", "fr90-completeness"}) {
      ASSERT_TRUE(rep.claims.count(id)) << id;
      EXPECT_EQ(rep.claims.at(id).status, ClaimStatus::Pass) << id;
    }
    if (rep.claims.at("f19-amplitudes").status == ClaimStatus::Pass) ++non_invariant_checked;
  }
  EXPECT_GT(non_invariant_checked, 190);
}

TEST(InvarianceReport, ClaimMetadata) {
  const InvarianceReport rep = invariance_report({}, FrameTransform::identity());
  EXPECT_EQ(rep.claims.at("f12-metric").kind, ClaimKind::Invariant);
  EXPECT_EQ(rep.claims.at("f19-amplitudes").kind, ClaimKind::NonInvariant);
  EXPECT_EQ(rep.claims.at("frame50-expectation").kind, ClaimKind::Informational);
  EXPECT_FALSE(rep.claims.at("f12-metric").anchor.empty());
  EXPECT_EQ(to_string(ClaimStatus::Fail), "FAIL");
}

TEST(FrameTransform, RejectsNonDynElements) {
  EXPECT_THROW(FrameTransform::from_group(random_su22(9), "x"), Error);
  const GroupElement p = poincare_matrix(SL2CElement::identity(),
                                         TranslationMatrix::from_params(0, 0, 0, 1));
  EXPECT_THROW(FrameTransform::from_group(p, "p"), Error);
}
