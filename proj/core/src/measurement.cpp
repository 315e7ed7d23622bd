#include "cartan/measurement.hpp"

#include <string>

namespace cartan {

namespace {

void require_branch(int mu, const char* where) {
  if (mu != 0 && mu != 1) {
    throw Error(ErrorCode::Usage, std::string(where) + ": branch must be 0 or 1");
  }
}

SectorVector branch_vector(const SectorVector& v, int mu) {
  Bra2 c = Bra2::Zero();
  c(mu) = v[mu];
  return SectorVector(v.sector(), c);
}

SectorOperator dyad_operator(const Dyad& d) {
  const double eps = sign(d.ket.sector());
  return SectorOperator(d.ket.sector(),
                        Mat2(eps * d.ket.components().adjoint() *
                             d.bra.components()));
}

}  // namespace

State make_state(const Bra2& components, Sector sector, std::string label,
                 double tol) {
  SectorVector v(sector, components);
  const double n2 = components.squaredNorm();
  if (!(std::abs(n2 - 1.0) <= tol)) {
    throw Error(ErrorCode::NotNormalized,
                "state amplitudes must satisfy |S0|^2 + |S1|^2 = 1");
  }
  return State(v, std::move(label));
}

Observable::Observable(Sector sector, double s0, double s1, double tol)
    : sector_(sector), s0_(s0), s1_(s1) {
  if (!std::isfinite(s0) || !std::isfinite(s1)) {
    throw Error(ErrorCode::NonFinite, "observable spectrum is not finite");
  }
  if (!(std::abs(s0 - s1) > tol)) {
    throw Error(ErrorCode::Degenerate, "observable spectrum is degenerate");
  }
}

SectorOperator Observable::as_operator() const {
  const double eps = sign(sector_);
  Mat2 e = Mat2::Zero();
  e(0, 0) = eps * s0_;
  e(1, 1) = eps * s1_;
  return SectorOperator(sector_, e);
}

DensityOperator density(const State& s) {
  return {dyad_operator(Dyad{s.vector(), s.vector()})};
}

double expectation(const Observable& obs, const State& s) {
  if (obs.sector() != s.sector()) {
    throw Error(ErrorCode::SectorMismatch,
                "expectation: observable and state live in different sectors");
  }
  return obs.eigenvalue(0) * std::norm(s.amplitude(0)) +
         obs.eigenvalue(1) * std::norm(s.amplitude(1));
}

ReducedState apply_pi(const State& s, int branch) {
  require_branch(branch, "apply_pi");
  return {branch_vector(s.vector(), branch), branch, s.label()};
}

double born(const State& s, int branch) {
  require_branch(branch, "born");
  const Sector sec = s.sector();
  // The metric g restricted to the sector has entries I2.
  const SectorOperator g(sec, Mat2::Identity());
  const SectorOperator pg = compose(pi_device(sec, branch).realized, g);
  return matrix_element(s.vector(), pg, s.vector()).real();
}

State renormalize(const ReducedState& r, double tol) {
  require_branch(r.branch, "renormalize");
  const Complex amp = r.vector[r.branch];
  if (!(std::abs(amp) > tol)) {
    throw Error(ErrorCode::ZeroBranch, "renormalize: branch amplitude vanishes");
  }
  return make_state(Bra2(r.vector.components() / std::abs(amp)),
                    r.vector.sector(), r.source);
}

std::string_view to_string(DeviceFamily f) noexcept {
  switch (f) {
    case DeviceFamily::PiSmall: return "pi";
    case DeviceFamily::Exchange: return "exchange";
    case DeviceFamily::PiBig: return "big_pi";
    case DeviceFamily::MCreate: return "m";
  }
  return "unknown";
}

MeasurementDevice pi_device(Sector s, int branch) {
  require_branch(branch, "pi_device");
  Mat2 e = Mat2::Zero();
  e(branch, branch) = sign(s);
  return {DeviceFamily::PiSmall, branch, 0, 0, SectorOperator(s, e), std::nullopt};
}

MeasurementDevice exchange_device(const State& s, int from, int to,
                                  double tol) {
  require_branch(from, "exchange_device");
  require_branch(to, "exchange_device");
  if (from == to) {
    throw Error(ErrorCode::Usage, "exchange_device: branches must differ");
  }
  if (!(std::abs(s.amplitude(0)) > tol) || !(std::abs(s.amplitude(1)) > tol)) {
    throw Error(ErrorCode::ZeroBranch,
                "exchange_device: both amplitudes must be nonzero");
  }
  Mat2 e = Mat2::Zero();
  e(from, to) = sign(s.sector()) * s.amplitude(to) / s.amplitude(from);
  return {DeviceFamily::Exchange, 0,         from, to,
          SectorOperator(s.sector(), e), std::nullopt};
}

MeasurementDevice big_pi(const State& s, int branch) {
  require_branch(branch, "big_pi");
  const SectorVector b = branch_vector(s.vector(), branch);
  Dyad d{b, b};
  return {DeviceFamily::PiBig, branch, 0, 0, dyad_operator(d), d};
}

MeasurementDevice m_device(const State& a, const State& c, int branch) {
  require_branch(branch, "m_device");
  if (a.sector() != c.sector()) {
    throw Error(ErrorCode::SectorMismatch,
                "m_device: states live in different sectors");
  }
  Dyad d{branch_vector(a.vector(), branch), branch_vector(c.vector(), branch)};
  return {DeviceFamily::MCreate, branch, 0, 0, dyad_operator(d), d};
}

SectorVector apply_device(const SectorVector& x, const MeasurementDevice& d) {
  return d.realized.apply(x);
}

SequenceResult compose_sequence(const std::vector<MeasurementDevice>& devices) {
  if (devices.empty()) {
    throw Error(ErrorCode::EmptySequence, "compose_sequence: no devices");
  }
  const Sector sec = devices.front().sector();
  for (const auto& d : devices) {
    if (d.realized.domain() != sec || d.realized.range() != sec) {
      throw Error(ErrorCode::SectorMismatch,
                  "compose_sequence: devices act on different sectors");
    }
  }

  SectorOperator product = devices.front().realized;
  for (std::size_t i = 1; i < devices.size(); ++i) {
    product = compose(product, devices[i].realized);
  }

  SequenceResult r{product, std::nullopt, {}, std::nullopt, 0.0,
                   sector_trace(product)};
  if (!devices.front().dyad || !devices.back().dyad) return r;

  const double eps = sign(sec);
  Complex weight = 1.0;
  std::optional<SectorVector> carried;
  for (const auto& d : devices) {
    if (d.dyad) {
      if (carried) {
        const Complex t = sector_inner(*carried, d.dyad->ket);
        r.transmissions.push_back(t);
        weight *= eps * t;
      }
      carried = d.dyad->bra;
    } else {
      carried = d.realized.apply(*carried);
    }
  }
  const Dyad outer{devices.front().dyad->ket, devices.back().dyad->bra};
  r.weight = weight;
  r.predicted = weight * dyad_operator(outer);
  r.residual = max_abs_diff(product.entries(), r.predicted->entries());
  return r;
}

Complex sequence_trace(const std::vector<MeasurementDevice>& devices) {
  return compose_sequence(devices).trace;
}

}  // namespace cartan
