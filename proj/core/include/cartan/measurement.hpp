#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cartan/operators.hpp"

namespace cartan {

/// A normalized sector bra sum_mu |S^mu|^2 = 1.
class State {
 public:
  const SectorVector& vector() const noexcept { return vector_; }
  Sector sector() const noexcept { return vector_.sector(); }
  Complex amplitude(int mu) const { return vector_[mu]; }
  const std::string& label() const noexcept { return label_; }

 private:
  friend State make_state(const Bra2&, Sector, std::string, double);
  State(SectorVector v, std::string label)
      : vector_(std::move(v)), label_(std::move(label)) {}

  SectorVector vector_;
  std::string label_;
};

/// Throws NotNormalized unless the squared amplitudes sum to 1 within tol.
State make_state(const Bra2& components, Sector sector, std::string label = {},
                 double tol = kDefaultTol);

/// S^mu <e_mu|, the branch left behind by a selective measurement.
struct ReducedState {
  SectorVector vector;
  int branch = 0;
  std::string source;
};

class Observable {
 public:
  /// Throws Degenerate when |s0 - s1| <= tol.
  Observable(Sector sector, double s0, double s1, double tol = kDefaultTol);

  Sector sector() const noexcept { return sector_; }
  double eigenvalue(int mu) const { return mu == 0 ? s0_ : s1_; }
  /// g-weighted entries diag(+-s0, +-s1).
  SectorOperator as_operator() const;

 private:
  Sector sector_;
  double s0_;
  double s1_;
};

struct DensityOperator {
  SectorOperator op;
};

/// rho = g |s><s|.
DensityOperator density(const State& s);

/// s0 |S^0|^2 + s1 |S^1|^2. Throws SectorMismatch.
double expectation(const Observable& obs, const State& s);

ReducedState apply_pi(const State& s, int branch);

/// |S^mu|^2, evaluated as <s| pi_mu g || s>_g.
double born(const State& s, int branch);

/// Divides the surviving amplitude by its modulus. Throws ZeroBranch.
State renormalize(const ReducedState& r, double tol = kDefaultTol);

enum class DeviceFamily { PiSmall, Exchange, PiBig, MCreate };

std::string_view to_string(DeviceFamily f) noexcept;

/// eps |ket><bra| with eps the sector sign.
struct Dyad {
  SectorVector ket;
  SectorVector bra;
};

struct MeasurementDevice {
  DeviceFamily family;
  int branch = 0;  // PiSmall, PiBig, MCreate
  int from = 0;    // Exchange
  int to = 0;      // Exchange
  SectorOperator realized;
  std::optional<Dyad> dyad;  // PiBig and MCreate

  Sector sector() const noexcept { return realized.domain(); }
};

/// Canonical projector pi_mu with entries eps E_{mu mu}.
MeasurementDevice pi_device(Sector s, int branch);

/// Device carrying <s_(from)| to <s_(to)| and annihilating <s_(to)|.
/// Throws ZeroBranch when either amplitude is at most tol.
MeasurementDevice exchange_device(const State& s, int from, int to,
                                  double tol = kDefaultTol);

/// Pi_mu(s) = eps |s_(mu)><s_(mu)|.
MeasurementDevice big_pi(const State& s, int branch);

/// M_mu(a, c) = eps |a_(mu)><c_(mu)|. Throws SectorMismatch.
MeasurementDevice m_device(const State& a, const State& c, int branch);

/// Applies a device to a sector bra.
SectorVector apply_device(const SectorVector& x, const MeasurementDevice& d);

struct SequenceResult {
  SectorOperator product;
  /// Present when the first and last devices are dyads. The product then
  /// equals weight * eps |ket_first><bra_last|.
  std::optional<Complex> weight;
  /// <bra_i T | ket_{i+1}>_g between consecutive dyads, T being the
  /// non-dyadic devices sitting between them.
  std::vector<Complex> transmissions;
  std::optional<SectorOperator> predicted;
  /// Max-norm distance between product and predicted (0 if none).
  double residual = 0.0;
  Complex trace;
};

/// Multiplies the devices left to right. Throws EmptySequence or
/// SectorMismatch.
SequenceResult compose_sequence(const std::vector<MeasurementDevice>& devices);

Complex sequence_trace(const std::vector<MeasurementDevice>& devices);

}  // namespace cartan
