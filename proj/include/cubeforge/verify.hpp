#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubeforge/io.hpp"
#include "cubeforge/limits.hpp"

namespace cubeforge {

struct SuiteReport {
  std::string name;
  bool pass = true;
  /// Descriptive suites are reported but never fail the run.
  bool gating = true;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  Json measured = Json::object();
  double seconds = 0.0;
};

struct VerifyReport {
  std::vector<SuiteReport> suites;

  bool pass() const;
};

/// chain, mfold, census, dense-gap, sidon-growth, product-law, gap, freiman.
const std::vector<std::string>& known_suites();

/// Every suite except freiman, with default parameters.
Json default_verify_config();

/// Runs the suites named under config["suites"], in the order of
/// known_suites(). A config without "suites" yields an empty report.
/// ParseError on unknown suite names.
VerifyReport verify_bounds(const Json& config, const Limits& limits = {});

Json to_json(const VerifyReport& report);

}  // namespace cubeforge
