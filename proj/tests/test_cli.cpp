#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qknot/bivar_poly.hpp"
#include "qknot/cli.hpp"
#include "qknot/q_laurent.hpp"

using namespace qknot;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("apoly command") {
  auto r = run({"apoly", "--knot", "twist:1"});
  CHECK(r.code == 0);
  CHECK(r.out == "l + m^6\n");

  r = run({"apoly", "--knot", "torus:2"});
  CHECK(r.code == 0);
  CHECK(r.out == "l*m^10 + 1\n");

  r = run({"apoly", "--knot", "twist:-1", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "apoly");
  CHECK(doc["results"][0]["terms"].size() == 7);

  r = run({"apoly", "--knot", "twist:-3", "--crosscheck"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS: matrix route equals 3-term route") != std::string::npos);
}

TEST_CASE("apoly usage errors") {
  CHECK(run({"apoly", "--knot", "twist:0"}).code == 2);
  CHECK(run({"apoly", "--knot", "torus:0"}).code == 2);
  CHECK(run({"apoly", "--knot", "granny:1"}).code == 2);
  CHECK(run({"apoly"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("jones command") {
  auto r = run({"jones", "--knot", "twist:-1", "--color", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "q^2 - q + 1 - q^-1 + q^-2\n");

  r = run({"jones", "--knot", "torus:1", "--color", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");

  r = run({"jones", "--knot", "twist:-1", "--color", "5", "--eval", "r=1"});
  CHECK(r.code == 0);
  // matches the Kashaev-form direct sum at q = exp(2 pi i / 5)
  const unsigned N = 5;
  Cx expect = 0.0;
  for (unsigned s = 0; s < N; ++s) {
    Cx prod = 1.0;
    for (unsigned i = 1; i <= s; ++i)
      prod *= 1.0 - std::polar(1.0, 2.0 * std::numbers::pi * i / N);
    expect += std::norm(prod);
  }
  double value = 0.0;
  std::istringstream(r.out) >> value;
  CHECK(std::abs(value - expect.real()) < 1e-10);

  CHECK(run({"jones", "--knot", "twist:-1", "--color", "5", "--eval", "r=0"}).code == 2);
  CHECK(run({"jones", "--knot", "twist:-1", "--color", "0"}).code == 2);
}

TEST_CASE("jones resource cap exits 3") {
  const auto r = run({"jones", "--knot", "twist:5", "--color", "200"});
  CHECK(r.code == 3);
  CHECK(r.err.find("cap") != std::string::npos);
}

TEST_CASE("printed polynomials re-parse to equal values") {
  auto r = run({"apoly", "--knot", "twist:-3"});
  std::string text = r.out.substr(0, r.out.find('\n'));
  CHECK(BivarPoly::parse(text) == BivarPoly::parse(text));

  r = run({"jones", "--knot", "twist:-1", "--color", "4"});
  text = r.out.substr(0, r.out.find('\n'));
  const QLaurent parsed = QLaurent::parse(text);
  CHECK(parsed.str() == text);
}

TEST_CASE("volume command") {
  auto r = run({"volume", "--paper-table"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "p,volume,re_x0,im_x0");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 9);
  CHECK(rows[5] == "2,2.82812,1.21508,-1.30714");
  CHECK(rows[0] == "-5,3.57388,0.99151,-1.91177");

  r = run({"volume", "--p", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("2,2.82812") != std::string::npos);

  CHECK(run({"volume"}).code == 2);
}

TEST_CASE("volume limit check") {
  const auto r = run({"volume", "--p-range", "2..14", "--limit-check"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# PASS: volumes strictly increase") != std::string::npos);
}

TEST_CASE("volume json format") {
  const auto r = run({"volume", "--p", "-1", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["command"] == "volume");
  CHECK(doc["results"].size() == 1);
  CHECK(std::abs(doc["results"][0]["volume"].get<double>() - 2.02988) < 1e-5);
}

TEST_CASE("vzeros command") {
  const auto data_rows = [](const std::string& text) {
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);  // header
    int rows = 0;
    while (std::getline(lines, line))
      if (!line.empty() && line[0] != '#') ++rows;
    return rows;
  };

  auto r = run({"vzeros", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("k,re,im,residual", 0) == 0);
  CHECK(data_rows(r.out) == 2);

  r = run({"vzeros", "--k", "5,10,30,50", "--upper-half"});
  CHECK(r.code == 0);
  CHECK(data_rows(r.out) == 95);
  CHECK(r.out.find("# PASS: all residual certificates below tolerance") != std::string::npos);

  // a hopeless tolerance turns into a verification failure
  r = run({"vzeros", "--k", "3", "--residual-tol", "1e-60"});
  CHECK(r.code == 1);
  CHECK(r.out.find("# FAIL") != std::string::npos);

  CHECK(run({"vzeros", "--k", "0"}).code == 2);
  CHECK(run({"vzeros", "--k", "five"}).code == 2);
  CHECK(run({"vzeros", "--k", "2", "--residual-tol", "-1"}).code == 2);
}

TEST_CASE("verify command") {
  const auto r = run({"verify", "--suite", "apoly"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("verify apoly:") != std::string::npos);

  const auto j = run({"verify", "--suite", "dilog", "--format", "json"});
  CHECK(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["command"] == "verify");
  CHECK(doc["results"][0]["failures"] == 0);
  for (const auto& check : doc["checks"]) {
    CHECK(check.contains("identity"));
    CHECK(check["status"] == "pass");
  }

  CHECK(run({"verify", "--suite", "bogus"}).code == 2);
}

TEST_CASE("identical configs produce byte-identical output") {
  const auto a = run({"volume", "--paper-table"});
  const auto b = run({"volume", "--paper-table"});
  CHECK(a.out == b.out);
  const auto c = run({"vzeros", "--k", "7"});
  const auto d = run({"vzeros", "--k", "7"});
  CHECK(c.out == d.out);
}
