#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "json_io.hpp"

namespace cartan::cli {

enum class Bound {
  Below,    // residual must stay under the threshold
  Above,    // difference must exceed the threshold
  Exact,    // residual must be exactly zero
};

struct CheckStat {
  Bound bound = Bound::Below;
  double threshold = 0.0;
  double worst = 0.0;  // max residual, or min difference for Bound::Above
  long samples = 0;
  long failures = 0;
  long skipped = 0;
};

class SuiteRecorder {
 public:
  void record(const std::string& id, double value, double threshold,
              Bound bound = Bound::Below);
  void skip(const std::string& id, double threshold, Bound bound);

  const std::map<std::string, CheckStat>& stats() const { return stats_; }
  bool passed() const;

 private:
  std::map<std::string, CheckStat> stats_;
};

struct CheckOptions {
  std::uint64_t seed = 42;
  long trials = 1000;
  double tol = kDefaultTol;
};

struct CheckResult {
  std::map<std::string, SuiteRecorder> suites;
  bool passed() const;
};

void run_metric_suite(const CheckOptions& o, SuiteRecorder& r);
void run_trace_suite(const CheckOptions& o, SuiteRecorder& r);
void run_group_suite(const CheckOptions& o, SuiteRecorder& r);
void run_measurement_suite(const CheckOptions& o, SuiteRecorder& r);
void run_frame_suite(const CheckOptions& o, SuiteRecorder& r);

CheckResult run_all_suites(const CheckOptions& o);

json check_report_json(const CheckOptions& o, const CheckResult& result);
std::string check_report_text(const CheckOptions& o, const CheckResult& result);

}  // namespace cartan::cli
