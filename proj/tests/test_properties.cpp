// ============================================================================
// test_properties.cpp -- every registered property at its default case count
// ============================================================================
#include "doctest.h"
#include "properties.hpp"

TEST_CASE("property suites") {
  for (const props::Property& p : props::all()) {
    const props::Result r = props::run(p, 20240601);
    INFO(r.module << "/" << r.name << ": " << r.first_failure);
    CHECK(r.cases >= 1000);
    CHECK(r.failures == 0);
  }
}
