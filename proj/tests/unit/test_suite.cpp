#include "chaingeom/error.hpp"
#include "chaingeom/suite.hpp"
#include "doctest.h"

using namespace chaingeom;

TEST_CASE("check ids are unique and filterable") {
  const auto& checks = suite_checks();
  CHECK(checks.size() == 15);
  for (std::size_t i = 0; i < checks.size(); ++i) {
    for (std::size_t j = i + 1; j < checks.size(); ++j) CHECK(checks[i].id != checks[j].id);
  }
  SuiteOptions opts;
  opts.only = {"centralizing-basis"};
  const auto results = run_suite(opts);
  REQUIRE(results.size() == 1);
  CHECK(results[0].id == "centralizing-basis");
  CHECK(results[0].passed);
  CHECK(results[0].assertions > 0);
  opts.only = {"no-such-check"};
  CHECK_THROWS_AS(run_suite(opts), InvalidArgument);
}

TEST_CASE("certificates are deterministic and omit timings by default") {
  SuiteOptions opts;
  opts.only = {"field-axioms", "distant-preserving-maps"};
  const Json a = suite_certificate(opts, run_suite(opts));
  const Json b = suite_certificate(opts, run_suite(opts));
  CHECK(a.dump() == b.dump());
  CHECK(a["schema_version"] == "chaingeom-cert/1");
  CHECK(a["summary"]["failed"] == 0);
  CHECK_FALSE(a["checks"][0].contains("seconds"));
  opts.timings = true;
  CHECK(suite_certificate(opts, run_suite(opts))["checks"][0].contains("seconds"));
}

TEST_CASE("seeded generator") {
  SeededRng a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 20; ++i) {
    const auto x = a.below(1000);
    CHECK(x == b.below(1000));
    CHECK(x < 1000);
    differs = differs || x != c.below(1000);
  }
  CHECK(differs);
}
