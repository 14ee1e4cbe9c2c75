#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "halfline/serialize.hpp"

using namespace halfline;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("generate and traces") {
  const auto g = run({"generate", "--kind", "simple_walk"});
  REQUIRE(g.code == 0);
  const auto m = measure_from_json(Json::parse(g.out));
  CHECK(m == LatticeMeasure(1.0, -1, {Rational(1, 2), 0, Rational(1, 2)}));

  const auto t = run({"traces", "--measure", "simple", "--n", "2"});
  REQUIRE(t.code == 0);
  const auto ts = trace_set_from_json(Json::parse(t.out));
  CHECK(ts.at(2) == LatticeMeasure::dirac(2, Rational(1, 4)));

  const auto csv = run({"traces", "--measure", "simple", "--n", "2", "--format", "csv"});
  CHECK(csv.out == "n,site,mass\n1,1,1/2\n2,2,1/4\n");
}

TEST_CASE("measure files and output files") {
  const auto in = temp_file("halfline_cli_measure.json");
  const auto out = temp_file("halfline_cli_out.csv");
  std::ofstream(in) << R"({"step": 1, "min_index": -1, "coeffs": ["1/2", "0", "1/2"]})";
  const auto r = run({"runmax", "--measure", in.string(), "--n", "2", "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out);
  std::stringstream body;
  body << f.rdbuf();
  CHECK(body.str() == "site,probability\n0,0.5\n1,0.25\n2,0.25\n");
  std::filesystem::remove(in);
  std::filesystem::remove(out);
}

TEST_CASE("maxdist and ladder") {
  const auto md = run({"maxdist", "--measure", "simple", "--n", "2"});
  CHECK(md.code == 0);
  CHECK(md.out == "site,probability\n0,0.75\n1,0\n2,0.25\n");
  const auto lad = run({"ladder", "--measure", "simple", "--horizon", "3"});
  CHECK(lad.code == 0);
  CHECK(lad.out.find("1,1,0.5") != std::string::npos);
}

TEST_CASE("whfactor from traces and ladder agree") {
  const auto a = run({"whfactor", "--measure", "simple", "--q", "0.5", "--w-count", "1", "--format", "json"});
  const auto b = run({"whfactor", "--measure", "simple", "--q", "0.5", "--w-count", "1", "--format", "json",
                      "--source", "ladder"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  const double expected = (1 - std::sqrt(1 - 0.25)) / 0.5;
  CHECK(std::abs(Json::parse(a.out)[0]["value"][0].get<double>() - expected) <= 1e-8);
  CHECK(std::abs(Json::parse(b.out)[0]["value"][0].get<double>() - expected) <= 1e-8);
  CHECK(run({"whfactor", "--q", "0.5"}).code == 1);
  CHECK(run({"whfactor", "--measure", "simple", "--q", "1.5"}).code == 1);
}

TEST_CASE("factorize") {
  const auto r = run({"factorize", "--num-root", "0,-2", "--den-root", "0,1", "--eval", "0.5,-1", "--bound", "2.1"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j.at("bounded").get<bool>());
  CHECK(j.at("evaluations")[0].at("difference").get<double>() <= 1e-6);
  CHECK(run({"factorize", "--den-root", "0,-1"}).code == 1);
  CHECK(run({"factorize", "--num-root", "zero"}).code == 1);
}

TEST_CASE("phi") {
  const auto r = run({"phi", "--measure", "simple", "--z", "0,-1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("1.35914") != std::string::npos);
  const auto in = temp_file("halfline_cli_phi.json");
  std::ofstream(in) << R"({"step": 1, "min_index": -2, "coeffs": ["1/4", "1/4", "0", "1/2"]})";
  const auto sing = run({"phi", "--measure", in.string(), "--z", "3.141592653589793,0"});
  CHECK(sing.code == 2);
  std::filesystem::remove(in);
}

TEST_CASE("reconstruct") {
  const auto in = temp_file("halfline_cli_traces.json");
  std::ofstream(in) << run({"traces", "--measure", "simple", "--n", "6"}).out;
  const auto r = run({"reconstruct", "--traces", in.string(), "--window", "-2..0"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out).at("verdict") == "unique");
  CHECK(run({"reconstruct", "--traces", in.string(), "--window", "-3..0", "--n", "7"}).code == 1);
  CHECK(run({"reconstruct", "--traces", in.string(), "--window", "1..2"}).code == 1);

  std::ofstream(in) << R"({"step": 1, "entries": [{"step": 1, "min_index": 0, "coeffs": []}, {"step": 1, "min_index": 0, "coeffs": []}]})";
  const auto degenerate = run({"reconstruct", "--traces", in.string(), "--window", "-1..0", "--n", "2"});
  CHECK(degenerate.code == 0);
  CHECK(degenerate.err.find("warning") != std::string::npos);
  std::filesystem::remove(in);
}

TEST_CASE("counterexample and verify") {
  const auto scan = run({"counterexample", "--scan", "real", "--from", "0.01", "--to", "1", "--points", "3"});
  CHECK(scan.code == 0);
  CHECK(scan.out.rfind("t,re_z,im_z,abs_value\n", 0) == 0);
  const auto ratio = run({"counterexample", "--ratio-check", "100", "--seed", "1"});
  CHECK(ratio.code == 0);
  CHECK(Json::parse(ratio.out).at("passed").get<bool>());

  const auto v = run({"verify", "--measure", "random", "--count", "5", "--max-power", "3", "--lemma-n", "3"});
  CHECK(v.code == 0);
  CHECK(Json::parse(v.out).at("passed").get<bool>());
}

TEST_CASE("exit codes for bad input") {
  CHECK(run({}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({"traces", "--measure", "/nonexistent.json", "--n", "2"}).code == 1);
  CHECK(run({"traces", "--measure", "simple"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}
