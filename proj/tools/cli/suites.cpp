#include "suites.hpp"

#include <cstdio>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "cartan/frames.hpp"

namespace cartan::cli {

void SuiteRecorder::record(const std::string& id, double value,
                           double threshold, Bound bound) {
  auto [it, fresh] = stats_.try_emplace(id);
  CheckStat& s = it->second;
  s.bound = bound;
  s.threshold = threshold;
  if (!std::isfinite(value)) value = std::numeric_limits<double>::infinity();
  bool ok = false;
  switch (bound) {
    case Bound::Below: ok = value < threshold; break;
    case Bound::Above: ok = value > threshold; break;
    case Bound::Exact: ok = value == 0.0; break;
  }
  if (s.samples == 0) {
    s.worst = value;
  } else if (bound == Bound::Above) {
    s.worst = std::min(s.worst, value);
  } else {
    s.worst = std::max(s.worst, value);
  }
  ++s.samples;
  if (!ok) ++s.failures;
}

void SuiteRecorder::skip(const std::string& id, double threshold, Bound bound) {
  auto [it, fresh] = stats_.try_emplace(id);
  it->second.bound = bound;
  it->second.threshold = threshold;
  ++it->second.skipped;
}

bool SuiteRecorder::passed() const {
  for (const auto& [id, s] : stats_) {
    if (s.failures > 0) return false;
  }
  return true;
}

bool CheckResult::passed() const {
  for (const auto& [name, r] : suites) {
    if (!r.passed()) return false;
  }
  return true;
}

namespace {

enum Stream : std::uint64_t {
  kMetric = 1,
  kTrace = 2,
  kGroup = 3,
  kMeasurement = 4,
  kFrame = 5,
};

Sector random_sector(Rng& rng) {
  return rng.uniform() < 0.5 ? Sector::Plus : Sector::Minus;
}

SectorOperator random_sector_op(Rng& rng, Sector s) {
  return SectorOperator(s, random_mat2(rng));
}

Operator random_block_diagonal(Rng& rng) {
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(0, 0) = random_mat2(rng);
  m.block<2, 2>(2, 2) = random_mat2(rng);
  return Operator(m);
}

double distinct_uniform(Rng& rng, double other) {
  for (;;) {
    const double v = rng.uniform(-3.0, 3.0);
    if (std::abs(v - other) > 1e-3) return v;
  }
}

// Hilbert matrix of eps |x><y|. Products of these are ordinary matrix
// products, which makes them an oracle independent of `compose`.
Mat2 dyad_delta(const SectorVector& x, const SectorVector& y) {
  return x.components().adjoint() * y.components();
}

SectorVector branch_of(const State& s, int mu) {
  Bra2 c = Bra2::Zero();
  c(mu) = s.amplitude(mu);
  return SectorVector(s.sector(), c);
}

}  // namespace

void run_metric_suite(const CheckOptions& o, SuiteRecorder& r) {
  const double tol = o.tol;
  const Operator metric = Operator::metric();
  for (long i = 0; i < o.trials; ++i) {
    Rng rng(derive_seed(o.seed, kMetric, static_cast<std::uint64_t>(i)));
    const CartanVector x(random_bra4(rng));
    const CartanVector y(random_bra4(rng));
    const Operator a(random_mat4(rng));
    const Operator b(random_mat4(rng));
    const Sector s = random_sector(rng);

    r.record("metric-vs-hilbert",
             std::abs(indefinite_inner(x, y) -
                      hilbert_inner(x, apply_metric(y))), tol);
    const CartanVector rebuilt = embed(project(x, Sector::Plus)) +
                                 embed(project(x, Sector::Minus));
    r.record("sector-decomposition",
             max_abs_diff(rebuilt.components(), x.components()), 0.0,
             Bound::Exact);
    r.record("sector-inner-sum",
             std::abs(indefinite_inner(x, y) -
                      sector_inner(project(x, Sector::Plus),
                                   project(y, Sector::Plus)) -
                      sector_inner(project(x, Sector::Minus),
                                   project(y, Sector::Minus))), tol);

    const Operator gdg = compose(compose(metric, dagger(a)), metric);
    r.record("star-is-g-dagger-g",
             max_abs_diff(star(a).entries(), gdg.entries()), tol);
    r.record("star-adjointness",
             std::abs(indefinite_inner(a.apply(x), y) -
                      indefinite_inner(x, star(a).apply(y))), tol);
    r.record("dagger-adjointness",
             std::abs(hilbert_inner(a.apply(x), y) -
                      hilbert_inner(x, dagger(a).apply(y))), tol);
    r.record("star-involution",
             max_abs_diff(star(star(a)).entries(), a.entries()), tol);
    r.record("dagger-involution",
             max_abs_diff(dagger(dagger(a)).entries(), a.entries()), tol);
    r.record("star-antimultiplicative",
             max_abs_diff(star(compose(a, b)).entries(),
                          compose(star(b), star(a)).entries()), tol);
    r.record("dagger-antimultiplicative",
             max_abs_diff(dagger(compose(a, b)).entries(),
                          compose(dagger(b), dagger(a)).entries()), tol);

    const SectorOperator as = random_sector_op(rng, s);
    const Mat2 adj = adjoint_representation(as);
    r.record("star-via-adjoint-entries",
             max_abs_diff(star(as).entries(), Mat2(adj.adjoint())), tol);
    r.record("adjoint-round-trip",
             max_abs_diff(from_adjoint_representation(s, adj).entries(),
                          as.entries()), tol);

    const SectorVector xs = project(x, s);
    const SectorVector ys = project(y, s);
    r.record("adjoint-reflexivity",
             std::abs(sector_inner(xs, ys) -
                      adjoint_sector_inner(adjoint_components(xs),
                                           adjoint_components(ys), s)), tol);
    const auto lowered = adjoint_components(xs);
    r.record("raise-lower",
             max_abs_diff(raise_components(s, lowered).components(),
                          xs.components()), 0.0, Bound::Exact);

    const Operator pp = Operator::projector(Sector::Plus);
    const Operator pm = Operator::projector(Sector::Minus);
    double proj = max_abs_diff((pp + pm).entries(),
                               Operator::identity().entries());
    proj = std::max(proj, max_abs_diff(compose(pp, pp).entries(), pp.entries()));
    proj = std::max(proj, max_abs_diff(compose(pm, pm).entries(), pm.entries()));
    proj = std::max(proj, max_abs(compose(pp, pm).entries()));
    proj = std::max(proj, max_abs_diff(star(pp).entries(), pp.entries()));
    proj = std::max(proj, max_abs_diff(star(pm).entries(), pm.entries()));
    r.record("projector-algebra", proj, 0.0, Bound::Exact);

    const Operator ba = random_block_diagonal(rng);
    const Operator bb = random_block_diagonal(rng);
    const Operator bc = random_block_diagonal(rng);
    const SectorOperator lhs = restrict(compose(compose(ba, bb), bc), s, tol);
    const SectorOperator rhs = compose(
        compose(restrict(ba, s, tol), restrict(bb, s, tol)), restrict(bc, s, tol));
    r.record("restriction-multiplicative",
             max_abs_diff(lhs.entries(), rhs.entries()), tol);
    r.record("block-reassembly",
             max_abs_diff(reassemble(block_decompose(a)).entries(), a.entries()),
             0.0, Bound::Exact);
  }
}

void run_trace_suite(const CheckOptions& o, SuiteRecorder& r) {
  const double tol = o.tol;
  for (Sector s : {Sector::Plus, Sector::Minus}) {
    r.record("identity-sector-trace",
             std::abs(sector_trace(SectorOperator::identity(s)) - 2.0), 0.0,
             Bound::Exact);
  }
  for (long i = 0; i < o.trials; ++i) {
    Rng rng(derive_seed(o.seed, kTrace, static_cast<std::uint64_t>(i)));
    const Sector s = random_sector(rng);
    const SectorOperator a = random_sector_op(rng, s);
    const SectorOperator b = random_sector_op(rng, s);

    r.record("conjugate-trace",
             std::abs(sector_trace(a) - std::conj(sector_trace(star(a)))), tol);
    r.record("sector-cyclicity",
             std::abs(sector_trace(compose(a, b)) - sector_trace(compose(b, a))),
             tol);
    const Mat2 g = sector_metric(s);
    const Mat2 aa = adjoint_representation(a);
    const Mat2 ab = adjoint_representation(b);
    r.record("adjoint-cyclicity",
             std::abs((aa * g * ab * g).trace() - (ab * g * aa * g).trace()), tol);
    r.record("trace-reality",
             std::abs(sector_trace(compose(a, star(a))).imag()), tol);

    const SectorOperator h = a + star(a);
    r.record("pseudo-hermitian-traces",
             std::max(std::abs(sector_trace(h).imag()),
                      std::abs(sector_trace(compose(h, h)).imag())), tol);

    const DynFrameMap frame = dyn_restriction(random_dyn(rng));
    const SectorOperator& u = frame.block(s);
    r.record("pseudo-unitary-trace",
             std::max(std::abs(sector_trace(compose(u, star(u))) - 2.0),
                      std::abs(sector_trace(compose(star(u), u)) - 2.0)), tol);
    r.record("star-dagger-trace",
             std::abs(sector_trace(star(u)) - sector_trace(dagger(u))), tol);
    r.record("star-trace-hilbert-form",
             std::abs(sector_trace(star(u)) - dagger(u).delta().trace()), tol);

    Mat2 dyadic = Mat2::Zero();
    for (int mu = 0; mu < 2; ++mu) {
      for (int nu = 0; nu < 2; ++nu) {
        const SectorVector e_mu = SectorVector::basis(s, mu);
        const SectorVector e_nu = SectorVector::basis(s, nu);
        dyadic += aa(mu, nu) * e_mu.components().adjoint() * e_nu.components();
      }
    }
    r.record("dyadic-trace",
             std::abs(sector_trace(SectorOperator(s, dyadic)) - sector_trace(a)),
             tol);

    const Operator a4(random_mat4(rng));
    const Operator b4(random_mat4(rng));
    r.record("trace-forms", std::abs(trace(a4) - a4.delta().trace()), tol);
    r.record("full-cyclicity",
             std::abs(trace(compose(a4, b4)) - trace(compose(b4, a4))), tol);
  }
}

void run_group_suite(const CheckOptions& o, SuiteRecorder& r) {
  const double tol = o.tol;
  const double group_tol = 10 * tol;
  for (long i = 0; i < o.trials; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const GroupElement u = random_su22(derive_seed(o.seed, kGroup, 2 * idx));
    r.record("random-pseudo-unitary", pseudo_unitarity_residual(u.matrix()),
             tol);
    r.record("random-det", det_residual(u.matrix()), group_tol);
    r.record("block-constraints", check_block_constraints(u).max(), tol);

    const CartanFactors f = cartan_decompose(u, tol);
    const Mat4& um = f.unitary_part.matrix();
    const Mat4& hm = f.positive_part.matrix();
    r.record("cartan-reconstruction", max_abs_diff(um * hm, u.matrix()),
             group_tol);
    r.record("cartan-square",
             max_abs_diff(hm * hm, Mat4(u.matrix().adjoint() * u.matrix())),
             group_tol);
    r.record("cartan-h-positive", f.min_eigenvalue, 0.0, Bound::Above);
    r.record("cartan-u-unitary", unitarity_residual(um), group_tol);
    r.record("cartan-factors-in-group",
             std::max({pseudo_unitarity_residual(um), pseudo_unitarity_residual(hm),
                       det_residual(um), det_residual(hm)}),
             group_tol);

    Rng rng(derive_seed(o.seed, kGroup, 2 * idx + 1));
    const SL2CElement a = random_sl2c(rng);
    const TranslationMatrix w = random_translation(rng);
    const GroupElement p = poincare_matrix(a, w);
    r.record("poincare-pseudo-unitary", pseudo_unitarity_residual(p.matrix()),
             tol);
    r.record("poincare-det", det_residual(p.matrix()), group_tol);
    const GroupElement l = lorentz_matrix(a);
    r.record("lorentz-pseudo-unitary",
             pseudo_unitarity_residual(l.matrix()), tol);

    const GroupElement d = random_dyn(rng);
    r.record("dyn-unitary", unitarity_residual(d.matrix()), tol);
    r.record("dyn-pseudo-unitary", pseudo_unitarity_residual(d.matrix()),
             tol);
    r.record("dyn-block-diagonal",
             std::max(max_abs(d.matrix().block<2, 2>(0, 2)),
                      max_abs(d.matrix().block<2, 2>(2, 0))), 0.0, Bound::Exact);
    r.record("dyn-block-determinants",
             std::abs(d.matrix().block<2, 2>(0, 0).determinant() *
                          d.matrix().block<2, 2>(2, 2).determinant() - 1.0),
             tol);
    const DynFrameMap map = dyn_restriction(d);
    r.record("dyn-restriction-blocks",
             std::max(pseudo_unitarity_residual(map.plus),
                      pseudo_unitarity_residual(map.minus)), tol);
    const CartanFactors fd = cartan_decompose(d, tol);
    r.record("cartan-unitary-input",
             max_abs_diff(fd.positive_part.matrix(), Mat4::Identity()), group_tol);

    r.record("group-closure",
             pseudo_unitarity_residual(Mat4(u.matrix() * d.matrix())), group_tol);
  }
}

void run_measurement_suite(const CheckOptions& o, SuiteRecorder& r) {
  const double tol = o.tol;
  for (Sector s : {Sector::Plus, Sector::Minus}) {
    for (int mu = 0; mu < 2; ++mu) {
      const SectorOperator pi = pi_device(s, mu).realized;
      r.record("pi-trace", std::abs(sector_trace(pi) - 1.0), 0.0, Bound::Exact);
      r.record("pi-idempotent",
               max_abs_diff(compose(pi, pi).entries(), pi.entries()), 0.0,
               Bound::Exact);
    }
  }
  for (long i = 0; i < o.trials; ++i) {
    Rng rng(derive_seed(o.seed, kMeasurement, static_cast<std::uint64_t>(i)));
    const Sector s = random_sector(rng);
    const double eps = sign(s);
    const State a = make_state(random_unit_bra2(rng), s, "A");
    const State b = make_state(random_unit_bra2(rng), s, "B");
    const State c = make_state(random_unit_bra2(rng), s, "C");
    const State d = make_state(random_unit_bra2(rng), s, "D");
    const int mu = rng.uniform() < 0.5 ? 0 : 1;

    r.record("born-sum", std::abs(born(a, 0) + born(a, 1) - 1.0), tol / 100);
    r.record("born-amplitude",
             std::abs(born(a, mu) - std::norm(a.amplitude(mu))), tol);
    const SectorVector rebuilt = apply_pi(a, 0).vector + apply_pi(a, 1).vector;
    r.record("branch-sum",
             max_abs_diff(rebuilt.components(), a.vector().components()), 0.0,
             Bound::Exact);
    r.record("branch-norms",
             std::abs(sector_inner(a.vector(), a.vector()) -
                      sector_inner(apply_pi(a, 0).vector, apply_pi(a, 0).vector) -
                      sector_inner(apply_pi(a, 1).vector, apply_pi(a, 1).vector)),
             tol);
    r.record("branch-annihilation",
             max_abs(apply_device(apply_pi(a, 1 - mu).vector, pi_device(s, mu))
                         .components()), 0.0, Bound::Exact);

    const DensityOperator rho = density(a);
    r.record("density-fixes-state",
             max_abs_diff(rho.op.apply(a.vector()).components(),
                          a.vector().components()), tol);
    r.record("density-pseudo-hermitian",
             max_abs_diff(star(rho.op).entries(), rho.op.entries()), tol);
    r.record("density-trace", std::abs(sector_trace(rho.op) - 1.0), tol);

    const double s0 = rng.uniform(-3.0, 3.0);
    const Observable obs(s, s0, distinct_uniform(rng, s0));
    r.record("expectation-trace-form",
             std::abs(expectation(obs, a) -
                      sector_trace(compose(rho.op, obs.as_operator())).real()),
             tol);

    const ReducedState r0 = apply_pi(a, 0);
    const ReducedState r1 = apply_pi(a, 1);
    if (std::abs(a.amplitude(0)) > tol && std::abs(a.amplitude(1)) > tol) {
      const MeasurementDevice x01 = exchange_device(a, 0, 1, tol);
      const MeasurementDevice x10 = exchange_device(a, 1, 0, tol);
      const Complex pairing = matrix_element(r0.vector, x01.realized, r1.vector);
      r.record("exchange-pairing",
               std::abs(pairing - eps * std::norm(a.amplitude(1))), tol);
      r.record("exchange-star-interchange",
               std::abs(pairing -
                        matrix_element(r1.vector, star(x01.realized), r0.vector)),
               tol);
      r.record("exchange-sum-rule",
               std::abs(pairing +
                        matrix_element(r1.vector, x10.realized, r0.vector) -
                        sector_inner(a.vector(), a.vector())), tol);
      r.record("exchange-action",
               std::max(max_abs_diff(apply_device(r0.vector, x01).components(),
                                     r1.vector.components()),
                        max_abs(apply_device(r1.vector, x01).components())),
               tol);
    } else {
      r.skip("exchange-pairing", tol, Bound::Below);
    }

    const SectorVector am = branch_of(a, mu), bm = branch_of(b, mu),
                       cm = branch_of(c, mu), dm = branch_of(d, mu);
    const Complex ab = sector_inner(am, bm), ba = sector_inner(bm, am),
                  bc = sector_inner(bm, cm),
                  da = sector_inner(dm, am), ac = sector_inner(am, cm),
                  bb = sector_inner(bm, bm);

    const auto pa = big_pi(a, mu), pb = big_pi(b, mu), pc = big_pi(c, mu);
    const auto mad = m_device(a, d, mu), mab = m_device(a, b, mu),
               mcd = m_device(c, d, mu), mac = m_device(a, c, mu);

    auto oracle_check = [&](const char* id,
                            const std::vector<MeasurementDevice>& seq,
                            const Mat2& brute, const Mat2& closed) {
      const SequenceResult res = compose_sequence(seq);
      r.record(id, std::max(max_abs_diff(res.product.delta(), brute),
                            max_abs_diff(brute, closed)), tol);
    };

    oracle_check("sandwich", {pb, pa, pb},
                 dyad_delta(bm, bm) * dyad_delta(am, am) * dyad_delta(bm, bm),
                 std::norm(ba) * dyad_delta(bm, bm));
    const auto pa_cross = big_pi(a, 1 - mu);
    r.record("sandwich-crossed-branches",
             max_abs(compose_sequence({pb, pa_cross, pb}).product.entries()), tol);
    const Mat2 pi_delta = pi_device(s, mu).realized.delta();
    oracle_check("hidden-middle", {pb, pi_device(s, mu), pb},
                 dyad_delta(bm, bm) * pi_delta * dyad_delta(bm, bm),
                 eps * bb * dyad_delta(bm, bm));
    oracle_check("triple-product", {pa, pb, pc},
                 dyad_delta(am, am) * dyad_delta(bm, bm) * dyad_delta(cm, cm),
                 ab * bc * dyad_delta(am, cm));
    oracle_check("m-composition", {mab, mcd},
                 dyad_delta(am, bm) * dyad_delta(cm, dm),
                 eps * bc * dyad_delta(am, dm));
    oracle_check("big-pi-then-m", {pa, mcd},
                 dyad_delta(am, am) * dyad_delta(cm, dm),
                 eps * ac * dyad_delta(am, dm));
    oracle_check("m-then-big-pi", {mab, pc},
                 dyad_delta(am, bm) * dyad_delta(cm, cm),
                 eps * bc * dyad_delta(am, cm));

    r.record("m-product-trace",
             std::abs(sequence_trace({mab, mcd}) - bc * da), tol);
    r.record("big-pi-m-trace",
             std::abs(sequence_trace({pa, mcd}) - da * ac), tol);
    r.record("m-trace",
             std::abs(sector_trace(mac.realized) - eps * sector_inner(cm, am)),
             tol);
    const Complex two_branch = sector_trace(m_device(a, c, 0).realized) +
                               sector_trace(m_device(a, c, 1).realized);
    r.record("m-two-branch-trace",
             std::abs(two_branch - (c.vector().components() *
                                    a.vector().components().adjoint())(0, 0)),
             tol);
    r.record("big-pi-trace-sum",
             std::abs(sector_trace(big_pi(a, 0).realized) +
                      sector_trace(big_pi(a, 1).realized) - 1.0), tol);
    r.record("big-pi-is-diagonal-m",
             max_abs_diff(m_device(a, a, mu).realized.entries(),
                          pa.realized.entries()), 0.0, Bound::Exact);

    const SequenceResult gen = compose_sequence({mad, pi_device(s, mu), pb, mab});
    r.record("sequence-weight-extraction", gen.residual, tol);
  }
}

void run_frame_suite(const CheckOptions& o, SuiteRecorder& r) {
  const double tol = o.tol;
  for (long i = 0; i < o.trials; ++i) {
    Rng rng(derive_seed(o.seed, kFrame, static_cast<std::uint64_t>(i)));
    const FrameTransform f =
        FrameTransform::from_group(random_dyn(rng), "random", tol);
    FrameInputs in;
    for (Sector s : {Sector::Plus, Sector::Plus, Sector::Minus, Sector::Minus}) {
      in.states.push_back(make_state(random_unit_bra2(rng), s));
    }
    for (Sector s : {Sector::Plus, Sector::Minus}) {
      const double s0 = rng.uniform(-3.0, 3.0);
      in.observables.emplace_back(s, s0, distinct_uniform(rng, s0));
    }
    const InvarianceReport rep = invariance_report(in, f, tol);
    for (const auto& [id, c] : rep.claims) {
      if (c.kind == ClaimKind::Informational) continue;
      const Bound bound =
          c.kind == ClaimKind::Invariant ? Bound::Below : Bound::Above;
      if (c.status == ClaimStatus::Skip) {
        r.skip(id, c.threshold, bound);
      } else {
        r.record(id, c.residual, c.threshold, bound);
      }
    }
  }
}

CheckResult run_all_suites(const CheckOptions& o) {
  CheckResult result;
  run_metric_suite(o, result.suites["metric"]);
  run_trace_suite(o, result.suites["trace"]);
  run_group_suite(o, result.suites["group"]);
  run_measurement_suite(o, result.suites["measurement"]);
  run_frame_suite(o, result.suites["frame"]);
  return result;
}

namespace {

const char* bound_name(Bound b) {
  switch (b) {
    case Bound::Below: return "below";
    case Bound::Above: return "above";
    case Bound::Exact: return "exact";
  }
  return "below";
}

}  // namespace

json check_report_json(const CheckOptions& o, const CheckResult& result) {
  json suites = json::object();
  for (const auto& [name, rec] : result.suites) {
    json checks = json::object();
    for (const auto& [id, s] : rec.stats()) {
      checks[id] = {{"bound", bound_name(s.bound)},
                    {"threshold", s.threshold},
                    {"worst", s.worst},
                    {"samples", s.samples},
                    {"failures", s.failures},
                    {"skipped", s.skipped},
                    {"status", s.failures == 0 ? "PASS" : "FAIL"}};
    }
    suites[name] = {{"checks", checks}, {"passed", rec.passed()}};
  }
  return {{"seed", o.seed},
          {"trials", o.trials},
          {"tol", o.tol},
          {"rng", "mt19937_64 seeded per trial via splitmix64"},
          {"suites", suites},
          {"passed", result.passed()}};
}

std::string check_report_text(const CheckOptions& o, const CheckResult& result) {
  std::ostringstream os;
  os << "seed " << o.seed << ", trials " << o.trials << ", tol " << o.tol
     << "\n";
  char buf[256];
  for (const auto& [name, rec] : result.suites) {
    os << "\n[" << name << "]\n";
    for (const auto& [id, s] : rec.stats()) {
      std::snprintf(buf, sizeof buf, "  %-4s %-36s %-5s worst=%.3e threshold=%.1e n=%ld",
                    s.failures == 0 ? "PASS" : "FAIL", id.c_str(),
                    bound_name(s.bound), s.worst, s.threshold, s.samples);
      os << buf;
      if (s.failures > 0) os << " failures=" << s.failures;
      if (s.skipped > 0) os << " skipped=" << s.skipped;
      os << "\n";
    }
  }
  os << "\n" << (result.passed() ? "all checks passed" : "some checks FAILED")
     << "\n";
  return os.str();
}

}  // namespace cartan::cli
