#include <filesystem>
#include <functional>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "halfline/errors.hpp"
#include "halfline/fluctuation.hpp"
#include "halfline/generate.hpp"
#include "halfline/serialize.hpp"

using namespace halfline;

namespace {

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("measure JSON round trip") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto m = generate_measure(MeasureKind::random_signed, -4, 4, seed);
    CHECK(measure_from_json(to_json(m)) == m);
    CHECK(measure_from_json(Json::parse(to_json(m).dump())) == m);
    const auto t = traces(m, 4);
    CHECK(trace_set_from_json(Json::parse(to_json(t).dump())) == t);
  }
  const LatticeMeasure stepped(0.25, -3, {Rational(1, 3), 0, Rational(-2, 7)});
  CHECK(measure_from_json(to_json(stepped)) == stepped);
  CHECK(measure_from_json(to_json(LatticeMeasure())).is_zero());
}

TEST_CASE("measure JSON accepts numbers that are exact short decimals") {
  const auto m = measure_from_json(Json::parse(R"({"step": 1, "min_index": -1, "coeffs": [0.5, 0, "1/2"]})"));
  CHECK(m == LatticeMeasure(1.0, -1, {Rational(1, 2), 0, Rational(1, 2)}));
  CHECK(measure_from_json(Json::parse(R"({"step": 1, "min_index": 0, "coeffs": [3]})")) == LatticeMeasure::dirac(0, 3));
  const auto msg = message_of([] { measure_from_json(Json::parse(R"({"step": 1, "min_index": 0, "coeffs": [0.1]})")); });
  CHECK(msg.find("coeffs[0]") != std::string::npos);
}

TEST_CASE("measure JSON errors name the field") {
  CHECK(message_of([] { measure_from_json(Json::parse(R"({"min_index": 0, "coeffs": []})")); }).find("'step'") !=
        std::string::npos);
  CHECK(message_of([] { measure_from_json(Json::parse(R"({"step": 1, "coeffs": []})")); }).find("'min_index'") !=
        std::string::npos);
  CHECK(message_of([] { measure_from_json(Json::parse(R"({"step": 1, "min_index": 0})")); }).find("'coeffs'") !=
        std::string::npos);
  CHECK(message_of([] {
          measure_from_json(Json::parse(R"({"step": 1, "min_index": 0, "coeffs": ["1/2", "x"]})"));
        }).find("coeffs[1]") != std::string::npos);
  CHECK(message_of([] { measure_from_json(Json::parse(R"({"step": -1, "min_index": 0, "coeffs": [1]})")); })
            .find("'step'") != std::string::npos);
  CHECK(message_of([] { trace_set_from_json(Json::parse(R"({"step": 1})")); }).find("'entries'") != std::string::npos);
  CHECK_THROWS_AS(trace_set_from_json(Json::parse(R"({"step": 1, "entries": [{"step": 1, "min_index": 0, "coeffs": [1]}]})")),
                  InvalidInput);
}

TEST_CASE("read_json_file errors") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/halfline.json"), InvalidInput);
  const auto path = std::filesystem::temp_directory_path() / "halfline_bad.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(read_json_file(path.string()), InvalidInput);
  std::ofstream(path) << R"({"step": 1, "min_index": 0, "coeffs": ["1"]})";
  CHECK(measure_from_json(read_json_file(path.string())) == LatticeMeasure::dirac(0));
  std::filesystem::remove(path);
}

TEST_CASE("CSV writers") {
  const LatticeMeasure simple(1.0, -1, {Rational(1, 2), 0, Rational(1, 2)});
  std::ostringstream pmf;
  write_csv(pmf, running_max_dist(simple, 2));
  CHECK(pmf.str() == "site,probability\n0,0.5\n1,0.25\n2,0.25\n");

  std::ostringstream ladder;
  write_csv(ladder, ladder_joint_dist(simple, 3));
  CHECK(ladder.str().rfind("epoch,height,probability\n1,1,0.5\n", 0) == 0);
  CHECK(ladder.str().find("3,1,0.125") != std::string::npos);

  const WHPoint p = wh_factor_from_traces(traces(simple, 40), 0.5, 1.0, 1e-8);
  std::ostringstream wh;
  const WHPoint pts[] = {p};
  write_wh_csv(wh, pts);
  CHECK(wh.str().rfind("q,re_w,im_w,re_val,im_val,tail_bound\n0.5,1,0,", 0) == 0);
}

TEST_CASE("JSON for results carries the expected fields") {
  const LatticeMeasure simple(1.0, -1, {Rational(1, 2), 0, Rational(1, 2)});
  const auto pj = to_json(running_max_dist(simple, 3));
  CHECK(pj.at("pmf").size() == 4);
  CHECK(pj.at("exact").get<bool>());
  const auto lj = to_json(verify_lemma(simple, simple, 3));
  CHECK(lj.at("premise_holds").get<bool>());
}
