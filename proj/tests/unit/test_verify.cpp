#include "doctest.h"

#include <nlohmann/json.hpp>

#include "dcm/graph.hpp"
#include "dcm/verify.hpp"

using namespace dcm;

TEST_CASE("suite on a small range passes and skips what it cannot check") {
  SuiteOptions o;
  o.k_min = 3;
  o.k_max = 3;
  const auto results = run_suite(o);
  REQUIRE(results.size() == 13);
  for (std::size_t i = 0; i < results.size(); ++i) {
    CHECK(results[i].id == static_cast<int>(i) + 1);
    CHECK(results[i].status != CheckStatus::kFail);
  }
  // k=3 is odd, so the even-k census and the medium template have nothing to do
  CHECK(results[2].status == CheckStatus::kSkip);
  CHECK(results[7].status == CheckStatus::kSkip);
  CHECK(all_passed(results));
}

TEST_CASE("quick mode stops graph builds at the cap") {
  SuiteOptions o;
  o.k_min = 9;
  o.k_max = 10;
  o.quick = true;
  const auto results = run_suite(o);
  // criterion 1 only needs graphs, so nothing is left for it
  CHECK(results[0].status == CheckStatus::kSkip);
  CHECK(results[11].status == CheckStatus::kPass);
}

TEST_CASE("suite json summary") {
  SuiteOptions o;
  o.k_min = 2;
  o.k_max = 4;
  const auto results = run_suite(o);
  const auto j = nlohmann::json::parse(suite_json(o, results));
  CHECK(j["k_range"] == nlohmann::json::array({2, 4}));
  CHECK(j["checks"].size() == 13);
  CHECK(j["passed"] == true);
  CHECK(j["checks"][3]["detail"] == "classes 1,2,2");
}

TEST_CASE("iso classes through k=8 in one pass") {
  SuiteOptions o;
  o.k_min = 1;
  o.k_max = 8;
  const auto results = run_suite(o);
  CHECK(results[3].status == CheckStatus::kPass);
  CHECK(results[3].detail == "classes 1,1,2,2,3,3,4,4");
  CHECK(all_passed(results));
}

TEST_CASE("resource errors are not turned into failures") {
  SuiteOptions o;
  o.k_min = 10;
  o.k_max = 10;
  o.memory_cap_mb = 1;
  CHECK_THROWS_AS(run_suite(o), ResourceError);
}
