#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cartan/frames.hpp"
#include "json_io.hpp"

namespace cartan::cli {

struct SystemSpec {
  std::string label;
  State state;
  std::optional<Observable> observable;
};

struct DeviceSpec {
  DeviceFamily family;
  std::string system;  // pi, exchange, big_pi
  std::string in;      // m
  std::string out;     // m
  int branch = 0;
  int from = 0;
  int to = 1;
  MeasurementDevice device;
};

struct FrameSpec {
  std::string kind;
  json echo;
  std::optional<GroupElement> element;
  /// Set when the element lies in the dynamical intersection.
  std::optional<FrameTransform> transform;
  std::string note;
};

struct Scenario {
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  std::vector<SystemSpec> systems;
  std::vector<DeviceSpec> pipeline;
  std::optional<FrameSpec> frame;

  const SystemSpec* find(const std::string& label) const;
};

/// Validates a scenario document. `tol_override`, when set, wins over the
/// document's own "tol".
Scenario parse_scenario(const Document& doc,
                        std::optional<double> tol_override = std::nullopt);

}  // namespace cartan::cli
