#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "scenario.hpp"
#include "suites.hpp"

namespace cartan::cli {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

enum class Format { Json, Text };

int cmd_check(const CheckOptions& opts, Format fmt, std::ostream& out,
              std::ostream& err);

int cmd_run(const std::string& scenario_path, Format fmt,
            std::optional<double> tol_override, std::ostream& out,
            std::ostream& err);

int cmd_decompose(const std::string& input_path, double tol, Format fmt,
                  std::ostream& out, std::ostream& err);

/// Report for an already parsed scenario; `passed` receives the verdict.
json run_report(const Scenario& sc, bool& passed);

}  // namespace cartan::cli
