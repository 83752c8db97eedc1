#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eulerprod/cli.hpp"

using namespace eulerprod;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "eulerprod");
  args.push_back("--zeros-file");
  args.push_back(std::string(EULERPROD_TEST_DATA) + "/zeta_zeros.txt");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("documented examples") {
  const Run c = cli({"classify", "--poly", "1 - X1*X2", "--n", "2", "--c", "1"});
  CHECK(c.code == 0);
  CHECK(c.out.find("verdict: EntireMeromorphic") != std::string::npos);

  const Run ig = cli({"igusa", "--n", "2", "--format", "json"});
  REQUIRE(ig.code == 0);
  const auto doc = nlohmann::json::parse(ig.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["results"]["igusa"]["verdict"] == "StrongBoundary");
  CHECK(doc["results"]["igusa"]["consistency"] == true);
  CHECK(doc["results"]["igusa"]["identity"]["residual"].get<double>() <= 1e-3);

  const Run ev = cli({"evaluate", "--poly", "1 - X1*X2", "--n", "2", "--c", "1", "--point", "0.3,0.4", "--delta",
                      "0.1", "--format", "json"});
  REQUIRE(ev.code == 0);
  const auto v = nlohmann::json::parse(ev.out)["results"]["continued"]["value"];
  CHECK(std::abs(v["re"].get<double>() + 0.359920874851145) < 1e-10);
  CHECK(std::abs(v["im"].get<double>()) < 1e-10);
}

TEST_CASE("exit codes") {
  CHECK(cli({"classify", "--poly", "1 +* X1", "--n", "1"}).code == 2);
  CHECK(cli({"classify", "--n", "1"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"evaluate", "--poly", "1 - X1*X3 - X2*X3 + X1*X2*X3", "--n", "2", "--point", "-0.9,-0.9", "--delta",
             "0.5"})
            .code == 3);
  CHECK(cli({"evaluate", "--poly", "1 - X1*X2", "--n", "2", "--point", "0.3", "--delta", "0.1"}).code == 2);
  CHECK(cli({"zeros", "--poly", "1 - X1*X3 - X2*X3 + X1*X2*X3", "--n", "2", "--face", "7"}).code == 2);
  CHECK(cli({"zeros", "--poly", "1 - X1*X3 - X2*X3 + X1*X2*X3", "--n", "2", "--face", "(1,0,1)", "--sigma",
             "-1/2,7/10"})
            .code == 3);
  CHECK(cli({"igusa", "--n", "9"}).code == 2);
}

TEST_CASE("json errors are structured") {
  const Run r = cli({"classify", "--poly", "1 + X1 + X1", "--n", "1", "--format", "json"});
  CHECK(r.code == 2);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["error"]["kind"] == "RepeatedExponent");
  CHECK(doc["error"]["exit_code"] == 2);
}

TEST_CASE("identical configuration gives identical output") {
  const std::vector<std::string> zeros{"zeros", "--poly", "1 - X1*X3 - X2*X3 + X1*X2*X3", "--n", "2", "--face",
                                       "(1,0,1)", "--sigma", "-1,7/10", "--theta", "2,1", "--m-range", "0,3",
                                       "--format", "json"};
  const Run a = cli(zeros), b = cli(zeros);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto parallel = zeros;
  parallel.push_back("--parallel");
  CHECK(cli(parallel).out == a.out);

  const std::vector<std::string> expand{"expand", "--poly", "1 + 3*X1*X3 - X2*X3", "--n", "2", "--format", "json"};
  CHECK(cli(expand).out == cli(expand).out);
}

TEST_CASE("zeros report for the fixture") {
  const Run r = cli({"zeros", "--poly", "1 - X1*X3 - X2*X3 + X1*X2*X3", "--n", "2", "--face", "(1,0,1)", "--sigma",
                     "-1,0.7", "--theta", "2,1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& analysis = doc["results"]["analysis"];
  CHECK(analysis["e_prime"] == 2);
  CHECK(analysis["interference"]["flagged"] == false);
  for (const auto& pa : analysis["primes"]) {
    for (const auto& z : pa["zeros"]) CHECK(z["residual"].get<double>() <= 1e-10);
  }
}

TEST_CASE("plot file and poly file") {
  const std::string poly = "eulerprod_test_poly.txt", plot = "eulerprod_test_plot.txt";
  std::ofstream(poly) << "1 - X1*X3 - X2*X3 + X1*X2*X3\n";
  const Run r = cli({"zeros", "--poly-file", poly, "--n", "2", "--face", "0", "--m-range", "0,2", "--plot", plot});
  REQUIRE(r.code == 0);
  std::ifstream in(plot);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "# p m re_t im_t");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 9);
  std::remove(poly.c_str());
  std::remove(plot.c_str());
}
