#pragma once

// The verification suite: every structural claim the library implements,
// checked by exhaustive or seeded sampled sweeps at small q, reported as a
// deterministic JSON certificate.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

namespace chaingeom {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "chaingeom-cert/1";

struct CheckResult {
  std::string id;
  std::string title;
  bool passed = true;
  std::size_t assertions = 0;
  std::vector<std::string> failures;
  Json data = Json::object();
  double seconds = 0.0;
};

/// Collects assertions for one check without stopping at the first failure.
class Tally {
 public:
  explicit Tally(CheckResult& r) : r_(r) {}
  bool expect(bool cond, const std::string& what);

 private:
  CheckResult& r_;
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  std::vector<std::string> only;  // empty: all checks
  bool timings = false;
};

/// Shared state of one suite run: the seed and cached geometries.
class SuiteContext;

struct CheckInfo {
  std::string id;
  std::string title;
  std::function<void(CheckResult&, SuiteContext&)> run;
};

/// All checks in execution order.
const std::vector<CheckInfo>& suite_checks();

/// Runs the selected checks. Throws InvalidArgument for an unknown id.
std::vector<CheckResult> run_suite(const SuiteOptions& opts);

Json suite_certificate(const SuiteOptions& opts, const std::vector<CheckResult>& results);

/// std::mt19937_64 with a plain modulo reduction, so sampled sweeps do not
/// depend on the standard library's distribution implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace chaingeom
