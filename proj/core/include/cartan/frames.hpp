#pragma once

#include <map>
#include <string>
#include <vector>

#include "cartan/measurement.hpp"
#include "cartan/su22.hpp"

namespace cartan {

struct FrameTransform {
  DynFrameMap map;
  std::string label;

  static FrameTransform identity();
  static FrameTransform from_group(const GroupElement& u, std::string label,
                                   double tol = kDefaultTol);
};

enum class TransformPolicy { FixedOperator, FixedMatrix };

/// Hilbert matrix of the frame block for sector s. Row mu is the primed basis
/// bra <e'_mu|.
Mat2 frame_matrix(const FrameTransform& f, Sector s);

/// S'^lambda = S^mu u^star_{mu sigma} g*^{sigma lambda}.
Bra2 transform_state_amplitudes(const State& s, const FrameTransform& f);

/// sum_mu S'^mu <e'_mu|, expressed in the unprimed basis.
SectorVector reconstruct(const Bra2& primed, const FrameTransform& f, Sector s);

/// FixedOperator: u S* u^star. FixedMatrix: u^star S u.
SectorOperator transform_observable(const SectorOperator& op,
                                    const FrameTransform& f, TransformPolicy p);
SectorOperator transform_observable(const Observable& obs,
                                    const FrameTransform& f, TransformPolicy p);

SectorOperator transform_device(const SectorOperator& d, const FrameTransform& f);
SectorOperator transform_device(const MeasurementDevice& d,
                                const FrameTransform& f);

enum class ClaimKind { Invariant, NonInvariant, Informational };
enum class ClaimStatus { Pass, Fail, Skip };

std::string_view to_string(ClaimStatus s) noexcept;
std::string_view to_string(ClaimKind k) noexcept;

struct ClaimResult {
  std::string anchor;
  ClaimKind kind = ClaimKind::Invariant;
  double residual = 0.0;
  double threshold = 0.0;
  ClaimStatus status = ClaimStatus::Skip;
};

struct InvarianceReport {
  std::map<std::string, ClaimResult> claims;

  bool passed() const;
  double max_invariant_residual() const;
};

struct FrameInputs {
  std::vector<State> states;
  std::vector<Observable> observables;
};

/// Transports every state and observable through `f` and evaluates each
/// invariance claim. Non-invariance claims are skipped for frames within
/// 100 tol of the identity (amplitudes) or of a diagonal map (branches).
InvarianceReport invariance_report(const FrameInputs& in,
                                   const FrameTransform& f,
                                   double tol = kDefaultTol);

}  // namespace cartan
