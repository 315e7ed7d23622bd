#include "cartan/frames.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>

namespace cartan {

FrameTransform FrameTransform::identity() {
  return {DynFrameMap::identity(), "identity"};
}

FrameTransform FrameTransform::from_group(const GroupElement& u,
                                          std::string label, double tol) {
  return {dyn_restriction(u, tol), std::move(label)};
}

Mat2 frame_matrix(const FrameTransform& f, Sector s) {
  return f.map.block(s).delta();
}

Bra2 transform_state_amplitudes(const State& s, const FrameTransform& f) {
  return s.vector().components() * frame_matrix(f, s.sector()).adjoint();
}

SectorVector reconstruct(const Bra2& primed, const FrameTransform& f,
                         Sector s) {
  return SectorVector(s, Bra2(primed * frame_matrix(f, s)));
}

namespace {

void require_sector_preserving(const SectorOperator& op, const char* where) {
  if (!op.preserves_sector()) {
    throw Error(ErrorCode::SectorMismatch,
                std::string(where) + ": operator changes sector");
  }
}

}  // namespace

SectorOperator transform_observable(const SectorOperator& op,
                                    const FrameTransform& f,
                                    TransformPolicy p) {
  require_sector_preserving(op, "transform_observable");
  const SectorOperator& u = f.map.block(op.domain());
  if (p == TransformPolicy::FixedOperator) {
    return SectorOperator(op.domain(), Mat2(u.entries() *
                                            adjoint_representation(op) *
                                            u.entries().adjoint()));
  }
  return compose(compose(star(u), op), u);
}

SectorOperator transform_observable(const Observable& obs,
                                    const FrameTransform& f,
                                    TransformPolicy p) {
  return transform_observable(obs.as_operator(), f, p);
}

SectorOperator transform_device(const SectorOperator& d,
                                const FrameTransform& f) {
  require_sector_preserving(d, "transform_device");
  const Sector s = d.domain();
  const Mat2 g = sector_metric(s);
  const Mat2& u = f.map.block(s).entries();
  return SectorOperator(s, Mat2(u * (g * d.entries() * g) * u.adjoint()));
}

SectorOperator transform_device(const MeasurementDevice& d,
                                const FrameTransform& f) {
  return transform_device(d.realized, f);
}

std::string_view to_string(ClaimStatus s) noexcept {
  switch (s) {
    case ClaimStatus::Pass: return "PASS";
    case ClaimStatus::Fail: return "FAIL";
    case ClaimStatus::Skip: return "SKIP";
  }
  return "SKIP";
}

std::string_view to_string(ClaimKind k) noexcept {
  switch (k) {
    case ClaimKind::Invariant: return "invariant";
    case ClaimKind::NonInvariant: return "non-invariant";
    case ClaimKind::Informational: return "informational";
  }
  return "informational";
}

bool InvarianceReport::passed() const {
  return std::none_of(claims.begin(), claims.end(), [](const auto& kv) {
    return kv.second.status == ClaimStatus::Fail;
  });
}

double InvarianceReport::max_invariant_residual() const {
  double r = 0.0;
  for (const auto& [id, c] : claims) {
    if (c.kind == ClaimKind::Invariant) r = std::max(r, c.residual);
  }
  return r;
}

namespace {

class Accumulator {
 public:
  Accumulator(std::string anchor, ClaimKind kind, double threshold)
      : anchor_(std::move(anchor)), kind_(kind), threshold_(threshold) {}

  // Invariants and informational values keep the largest residual seen;
  // non-invariants keep the smallest difference, since every sample must
  // differ.
  void add(double r) {
    if (!std::isfinite(r)) r = std::numeric_limits<double>::infinity();
    if (!seen_) {
      value_ = r;
    } else if (kind_ == ClaimKind::NonInvariant) {
      value_ = std::min(value_, r);
    } else {
      value_ = std::max(value_, r);
    }
    seen_ = true;
  }

  ClaimResult finish() const {
    ClaimResult c{anchor_, kind_, seen_ ? value_ : 0.0, threshold_,
                  ClaimStatus::Skip};
    if (!seen_) return c;
    switch (kind_) {
      case ClaimKind::Invariant:
        c.status = value_ < threshold_ ? ClaimStatus::Pass : ClaimStatus::Fail;
        break;
      case ClaimKind::NonInvariant:
        c.status = value_ > threshold_ ? ClaimStatus::Pass : ClaimStatus::Fail;
        break;
      case ClaimKind::Informational:
        c.status = ClaimStatus::Pass;
        break;
    }
    return c;
  }

 private:
  std::string anchor_;
  ClaimKind kind_;
  double threshold_;
  double value_ = 0.0;
  bool seen_ = false;
};

SectorVector reduced(Sector s, const Bra2& amps, int mu) {
  Bra2 c = Bra2::Zero();
  c(mu) = amps(mu);
  return SectorVector(s, c);
}

std::vector<double> sorted_spectrum(const Mat2& hermitian) {
  const Mat2 h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat2> eig(h, Eigen::EigenvaluesOnly);
  return {eig.eigenvalues()(0), eig.eigenvalues()(1)};
}

}  // namespace

InvarianceReport invariance_report(const FrameInputs& in,
                                   const FrameTransform& f, double tol) {
  const double far = 100 * tol;
  using K = ClaimKind;
  std::map<std::string, Accumulator> acc;
  auto claim = [&](const std::string& id, const char* anchor, K kind,
                   double threshold) -> Accumulator& {
    auto it = acc.find(id);
    if (it == acc.end()) {
      it = acc.emplace(id, Accumulator(anchor, kind, threshold)).first;
    }
    return it->second;
  };
  auto& f12 = claim("f12-metric", "frame blocks preserve the sector metric: u g* u^star = g", K::Invariant, tol);
  auto& f15 = claim("f15-hilbert", "frame blocks preserve the Hilbert metric: u u^dagger = I", K::Invariant, tol);
  auto& f16 = claim("f16-completeness", "primed basis dyads resolve the sector identity", K::Invariant, tol);
  auto& f17 = claim("f17-norm", "state norm evaluated in the primed metric is unchanged", K::Invariant, tol);
  auto& f18 = claim("f18-state", "primed amplitudes on the primed basis rebuild the state", K::Invariant, tol);
  auto& fsum = claim("F-branch-sum", "sum of transported reduced branches is the state", K::Invariant, tol);
  auto& f43 = claim("f43-spectrum", "fixed-matrix policy keeps the observable spectrum", K::Invariant, tol);
  auto& t1 = claim("T1-trace", "fixed-matrix policy keeps the observable trace", K::Invariant, tol);
  auto& tt = claim("t-trace", "fixed-operator policy keeps the observable trace", K::Invariant, tol);
  auto& f54 = claim("f54-born-sum", "Born probabilities summed in the primed frame match the original sum", K::Invariant, tol);
  auto& texch = claim("T-exchange", "exchange pairing sum rebuilt from primed amplitudes matches the original", K::Invariant, tol);
  auto& d3 = claim("d3-weight-sum", "branch sum of transition weights is frame independent", K::Invariant, tol);
  auto& d4 = claim("d4-m-sum", "summed creation-transmission devices transform covariantly", K::Invariant, tol);
  auto& d6 = claim("d6-m-product", "composed creation-transmission devices transform covariantly", K::Invariant, tol);
  auto& fr12 = claim("frame12-trace", "trace of the transported projector sum is unchanged", K::Invariant, tol);
  auto& fr90 = claim("fr90-completeness", "transported projector sum equals the sector metric", K::Invariant, tol);
  auto& f19 = claim("f19-amplitudes", "individual amplitudes change under a generic frame", K::NonInvariant, far);
  auto& fr52 = claim("fr52-branches", "individual reduced branches change under a generic frame", K::NonInvariant, far);
  auto& fr50 = claim("frame50-expectation", "expectation built from primed amplitudes, shift from the original", K::Informational, 0.0);

  for (Sector s : {Sector::Plus, Sector::Minus}) {
    const SectorOperator& u = f.map.block(s);
    const Mat2 ud = u.delta();
    f12.add(pseudo_unitarity_residual(u));
    f15.add(std::max(max_abs_diff(ud * ud.adjoint(), Mat2::Identity()),
                     max_abs_diff(ud.adjoint() * ud, Mat2::Identity())));

    Mat2 dyads = Mat2::Zero();
    for (int mu = 0; mu < 2; ++mu) {
      const Bra2 e = ud.row(mu);
      dyads += sign(s) * e.adjoint() * e;
    }
    f16.add(max_abs_diff(dyads, SectorOperator::identity(s).entries()));

    SectorOperator pi_sum = SectorOperator::zero(s, s);
    SectorOperator pi_sum_primed = SectorOperator::zero(s, s);
    for (int mu = 0; mu < 2; ++mu) {
      const auto pi = pi_device(s, mu);
      pi_sum = pi_sum + pi.realized;
      pi_sum_primed = pi_sum_primed + transform_device(pi, f);
    }
    fr12.add(std::abs(sector_trace(pi_sum_primed) - sector_trace(pi_sum)));
    fr90.add(max_abs_diff(pi_sum_primed.entries(), sector_metric(s)));
  }

  for (const State& st : in.states) {
    const Sector s = st.sector();
    const double eps = sign(s);
    const Mat2 ud = frame_matrix(f, s);
    const Bra2& amps = st.vector().components();
    const Bra2 primed = transform_state_amplitudes(st, f);
    const SectorVector primed_vec(s, primed);

    const Mat2 primed_metric = eps * ud * ud.adjoint();
    const Complex norm_primed =
        (primed * primed_metric * primed.adjoint())(0, 0);
    f17.add(std::abs(norm_primed - sector_inner(st.vector(), st.vector())));

    f18.add(max_abs_diff(reconstruct(primed, f, s).components(), amps));

    Bra2 branch_sum = Bra2::Zero();
    double branch_change = 0.0;
    for (int mu = 0; mu < 2; ++mu) {
      const Bra2 moved = primed(mu) * ud.row(mu);
      Bra2 original = Bra2::Zero();
      original(mu) = amps(mu);
      branch_sum += moved;
      branch_change = std::max(branch_change, max_abs_diff(moved, original));
    }
    fsum.add(max_abs_diff(branch_sum, amps));

    auto born_total = [&](const SectorVector& v) {
      double sum = 0.0;
      for (int mu = 0; mu < 2; ++mu) {
        const SectorOperator pg = compose(pi_device(s, mu).realized,
                                          SectorOperator(s, Mat2::Identity()));
        sum += matrix_element(v, pg, v).real();
      }
      return sum;
    };
    f54.add(std::abs(born_total(primed_vec) - born_total(st.vector())));

    auto pairing = [&](const Bra2& a) {
      const State ps = make_state(a, s, st.label(), 1e-8);
      const SectorVector r0 = reduced(s, a, 0);
      const SectorVector r1 = reduced(s, a, 1);
      return matrix_element(r0, exchange_device(ps, 0, 1, tol).realized, r1) +
             matrix_element(r1, exchange_device(ps, 1, 0, tol).realized, r0);
    };
    if (std::abs(primed(0)) > tol && std::abs(primed(1)) > tol &&
        std::abs(amps(0)) > tol && std::abs(amps(1)) > tol) {
      texch.add(std::abs(pairing(primed) - pairing(amps)));
    }

    if (max_abs_diff(ud, Mat2::Identity()) > far) {
      f19.add(max_abs_diff(primed, amps));
    }
    if (std::abs(ud(0, 1)) > far || std::abs(ud(1, 0)) > far) {
      fr52.add(branch_change);
    }

    for (const Observable& obs : in.observables) {
      if (obs.sector() != s) continue;
      const double shifted = obs.eigenvalue(0) * std::norm(primed(0)) +
                             obs.eigenvalue(1) * std::norm(primed(1));
      fr50.add(std::abs(shifted - expectation(obs, st)));
    }
  }

  for (const Observable& obs : in.observables) {
    const SectorOperator op = obs.as_operator();
    const SectorOperator fm =
        transform_observable(op, f, TransformPolicy::FixedMatrix);
    const SectorOperator fo =
        transform_observable(op, f, TransformPolicy::FixedOperator);
    const auto spec = sorted_spectrum(fm.delta());
    const double lo = std::min(obs.eigenvalue(0), obs.eigenvalue(1));
    const double hi = std::max(obs.eigenvalue(0), obs.eigenvalue(1));
    f43.add(std::max(std::abs(spec[0] - lo), std::abs(spec[1] - hi)));
    t1.add(std::abs(sector_trace(fm) - sector_trace(op)));
    tt.add(std::abs(sector_trace(fo) - sector_trace(op)));
  }

  for (std::size_t i = 0; i < in.states.size(); ++i) {
    for (std::size_t j = i + 1; j < in.states.size(); ++j) {
      const State& a = in.states[i];
      const State& c = in.states[j];
      if (a.sector() != c.sector()) continue;
      const Sector s = a.sector();
      const Bra2 ap = transform_state_amplitudes(a, f);
      const Bra2 cp = transform_state_amplitudes(c, f);

      Complex w = 0.0;
      Complex wp = 0.0;
      SectorOperator m_sum = SectorOperator::zero(s, s);
      SectorOperator m_sum_primed = SectorOperator::zero(s, s);
      SectorOperator prod_sum = SectorOperator::zero(s, s);
      SectorOperator prod_sum_primed = SectorOperator::zero(s, s);
      for (int mu = 0; mu < 2; ++mu) {
        w += sector_inner(reduced(s, c.vector().components(), mu),
                          reduced(s, a.vector().components(), mu));
        wp += sector_inner(reduced(s, cp, mu), reduced(s, ap, mu));

        const auto mac = m_device(a, c, mu);
        const auto mca = m_device(c, a, mu);
        const SectorOperator mac_p = transform_device(mac, f);
        const SectorOperator mca_p = transform_device(mca, f);
        m_sum = m_sum + mac.realized;
        m_sum_primed = m_sum_primed + mac_p;
        prod_sum = prod_sum + compose(mac.realized, mca.realized);
        prod_sum_primed = prod_sum_primed + compose(mac_p, mca_p);
      }
      d3.add(std::abs(wp - w));
      d4.add(std::max(
          max_abs_diff(m_sum_primed.entries(),
                       transform_device(m_sum, f).entries()),
          std::abs(sector_trace(m_sum_primed) - sector_trace(m_sum))));
      d6.add(std::max(
          max_abs_diff(prod_sum_primed.entries(),
                       transform_device(prod_sum, f).entries()),
          std::abs(sector_trace(prod_sum_primed) - sector_trace(prod_sum))));
    }
  }

  InvarianceReport report;
  for (const auto& [id, a] : acc) report.claims.emplace(id, a.finish());
  return report;
}

}  // namespace cartan
