#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bosent/error.hpp"
#include "bosent/io.hpp"
#include "support.hpp"

using namespace bosent;

TEST_CASE("density round trip is exact") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = random_density(build_basis(2 + seed % 2, {3, 1 + seed % 2}), 2, seed);
    const auto text = io::serialize_state(rho);
    const auto back = io::parse_state(text);
    CHECK_FALSE(back.is_pure());
    CHECK(back.density().dense() == rho.dense());
    CHECK(io::serialize_state(back) == text);
  }
}

TEST_CASE("pure round trip") {
  const auto psi = random_pure_state(build_basis(3, {4, 2}), 4);
  const auto back = io::parse_state(io::serialize_state(psi));
  REQUIRE(back.is_pure());
  CHECK(std::get<PureState>(back.state).amplitudes() == psi.amplitudes());
  CHECK(back.basis() == psi.basis());
}

TEST_CASE("hand-written document") {
  const std::string doc = R"({
    "N": 2, "M": 2, "m": 1, "kind": "pure",
    "entries": [{"row": [2, 0], "re": 0.7071067811865476, "im": 0},
                {"row": [0, 2], "re": 0.7071067811865476, "im": 0}]
  })";
  const auto f = io::parse_state(doc);
  REQUIRE(f.is_pure());
  CHECK(std::abs(f.density().block(2, 0)(0, 0) - 0.5) < 1e-15);
}

TEST_CASE("schema errors") {
  const char* bad[] = {
      "not json",
      R"([])",
      R"({"M": 2, "m": 1, "kind": "pure", "entries": []})",
      R"({"N": 2, "M": 2, "m": 3, "kind": "pure", "entries": [{"row": [2,0], "re": 1}]})",
      R"({"N": 2, "M": 2, "m": 1, "kind": "mixed", "entries": []})",
      R"({"N": 2, "M": 2, "m": 1, "kind": "pure", "entries": [{"row": [1,0], "re": 1}]})",
      R"({"N": 2, "M": 2, "m": 1, "kind": "pure", "entries": [{"row": [2,0], "re": 0.5}]})",
      R"({"N": 2, "M": 2, "m": 1, "kind": "pure", "entries": [{"row": [2,0], "re": "x"}]})",
      R"({"N": 2, "M": 2, "m": 1, "kind": "pure", "entries": [{"row": [2,0], "col": [2,0], "re": 1}]})",
      R"({"N": 2, "M": 2, "m": 1, "kind": "pure", "entries": [{"row": [2,0], "re": 0.6}, {"row": [2,0], "re": 0.8}]})",
      R"({"N": 2, "M": 2, "m": 1, "kind": "density", "entries": [{"row": [2,0], "re": 1}]})",
      R"({"N": 2, "M": 2, "m": 1, "kind": "density", "entries": [{"row": [2,0], "col": [0,2], "re": 1}]})",
      R"({"N": 1, "M": 2, "m": 1, "kind": "density", "entries": [{"row": [1,0], "col": [1,0], "re": 1.5}, {"row": [0,1], "col": [0,1], "re": -0.5}]})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(io::parse_state(text), InvalidInput);
  }
  CHECK_THROWS_AS(io::load_state("/nonexistent/state.json"), InvalidInput);
}

TEST_CASE("trajectory CSV") {
  std::vector<TrajectoryPoint> pts{{0.0, 0.5, 0.5}, {0.25, 0.5 * std::exp(-1.0), 0.0}};
  const auto csv = io::trajectory_csv(pts);
  CHECK(csv.rfind("t,negativity\n", 0) == 0);
  CHECK(csv.find("0.25,0.18393972058572117") != std::string::npos);
  CHECK(io::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("reports") {
  const auto rep = negativity_general(pure_to_density(noon_state(2)));
  const auto text = io::negativity_report_json(rep);
  CHECK(text.find("\"total\"") != std::string::npos);
  CHECK(text.find("\"sector\"") != std::string::npos);

  CHECK(io::digest("") == "cbf29ce484222325");
  CHECK(io::digest("a") == "af63dc4c8601ec8c");
}
