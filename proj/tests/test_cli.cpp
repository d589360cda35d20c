#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bohrlab/cli.hpp"

using namespace bohrlab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "bohrlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("radius prints the estimate and the closed form") {
  const auto r = run({"radius", "--theorem", "fr", "--gamma", "0.5"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "functional_id,gamma,lambda,r_star,closed_form,difference");
  CHECK(l[1].find(",0.4285") != std::string::npos);
  CHECK(l[1].find("0.42857142857142855") != std::string::npos);
  const auto j = run({"radius", "--theorem", "thm_fr", "--format", "json"});
  CHECK(nlohmann::json::parse(j.out)["closed_form"].get<double>() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("gadget tabulation") {
  const auto r = run({"gadget", "--name", "F2", "--grid", "200"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 201);
  CHECK(l[1] == "0,0.58333333333333337");
  CHECK(l[200] == "1,0");
  CHECK(lines(run({"gadget", "--name", "J", "--m", "2", "--gamma", "0.5", "--grid", "10"}).out).size() == 11);
  CHECK(run({"gadget", "--name", "Q"}).code == 2);
}

TEST_CASE("verify campaigns") {
  const auto r = run({"verify", "--theorem", "harmonic_quad", "--gamma", "0", "--samples", "500", "--r", "0.3333"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 501);
  CHECK(r.err.find("holds=500") != std::string::npos);

  const auto v = run({"verify", "--theorem", "fr", "--family", "extremal", "--samples", "20", "--r", "0.34"});
  CHECK(v.code == 0);
  CHECK(v.err.find("first violation") != std::string::npos);
  CHECK(v.err.find(" a=0.9") != std::string::npos);

  const auto j = run({"verify", "--theorem", "fr", "--samples", "3", "--format", "json"});
  CHECK(lines(j.out).size() == 3);
  CHECK(nlohmann::json::parse(lines(j.out)[0])["functional_id"] == "fr");
}

TEST_CASE("seed comes from the environment by default") {
  ::setenv("BOHRLAB_SEED", "4242", 1);
  const auto env = run({"verify", "--samples", "5"});
  ::unsetenv("BOHRLAB_SEED");
  const auto flag = run({"verify", "--samples", "5", "--seed", "4242"});
  const auto other = run({"verify", "--samples", "5"});
  CHECK(env.out == flag.out);
  CHECK(env.out != other.out);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"verify", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "--theorem", "nope"}).code == 2);
  CHECK(run({"verify", "--format", "xml"}).code == 2);
  CHECK(run({"verify", "--theorem", "fr_sq_a0", "--gamma", "0.5"}).code == 2);
  const auto u = run({"radius", "--what"});
  CHECK(u.err.find("Usage") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sharpness subcommand") {
  const auto w = run({"sharpness", "--theorem", "fr", "--r", "0.34"});
  CHECK(w.code == 0);
  CHECK(lines(w.out).size() == 2);
  const auto none = run({"sharpness", "--theorem", "fr", "--r", "0.3333333333333333"});
  CHECK(none.code == 0);
  CHECK(none.err.find("no violator") != std::string::npos);
}

TEST_CASE("show replays a saved descriptor") {
  const auto dir = std::filesystem::temp_directory_path() / "bohrlab_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "worst.json").string();
  const auto v = run({"verify", "--theorem", "q_corrected", "--gamma", "0.25", "--samples", "50", "--seed", "3",
                      "--descriptor-out", path});
  CHECK(v.code == 0);
  std::ifstream in(path);
  const auto d = nlohmann::json::parse(in);
  const auto s = run({"show", path, "--format", "json"});
  CHECK(s.code == 0);
  const auto rep = nlohmann::json::parse(s.out);
  CHECK(std::abs(rep["value"].get<double>() - d["value"].get<double>()) <= 1e-12);
  CHECK(run({"show", (dir / "missing.json").string()}).code == 2);
}

TEST_CASE("the installed binary reports exit codes") {
  const std::string bin = BOHRLAB_CLI_PATH;
  CHECK(std::system((bin + " gadget --name A --grid 3 > /dev/null").c_str()) == 0);
  const int code = std::system((bin + " verify --nope > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(code) == 2);
}
