#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string path = "cli_test_output.txt";
  const std::string cmd = env + " " QHFPT_CLI " " + args + " > " + path + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(path.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, ss.str()};
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

std::string join(const json& arr) {
  std::string out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) out += ",";
    out += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
  }
  return out;
}

} // namespace

TEST_CASE("fpt of the cusp") {
  Run r = run("fpt --poly 'x*y^2+x^4' --vars x,y --weights 2,3 --prime 17");
  CHECK(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["fpt"] == "5/8");
  CHECK(j["kind"] == "exact");
  CHECK(j["certificate"] == "Lifting-3.7(1)");
  CHECK(j["mu_ladder"] == json::parse("[[1,17,11]]"));
  CHECK(j["assumptions"]["isolated"] == "verified");
}

TEST_CASE("ordinary") {
  Run r = run("ordinary --poly 'x^3+y^3+z^3' --vars x,y,z --weights 1,1,1 --prime 5");
  CHECK(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["coefficient"] == 0);
  CHECK(j["verdict"] == "supersingular");
  CHECK(j["fpt"] == "4/5");
}

TEST_CASE("exit codes") {
  Run qh = run("fpt --poly 'x+y^2' --vars x,y --weights 1,1 --prime 5");
  CHECK(qh.status == 2);
  CHECK(json::parse(qh.out)["error"]["kind"] == "not-quasi-homogeneous");
  Run prime = run("fpt --poly 'x' --vars x --prime 9");
  CHECK(prime.status == 2);
  CHECK(json::parse(prime.out)["error"]["kind"] == "not-prime");
  Run parse = run("fpt --poly 'x^-1' --vars x --prime 7");
  CHECK(parse.status == 3);
  CHECK(json::parse(parse.out)["error"]["kind"] == "parse-error");
  Run usage = run("fpt --vars x --prime 7");
  CHECK(usage.status == 3);
  Run family = run("sweep --family 'x^2+L^2*y' --vars x,y --prime 7");
  CHECK(family.status == 3);
  CHECK(json::parse(family.out)["error"]["kind"] == "unsupported-family");
  Run guard = run("mu --poly 'x+y+z' --vars x,y,z --prime 101 --e 3", "QHFPT_MAX_TERMS=50");
  CHECK(guard.status == 4);
  CHECK(json::parse(guard.out)["error"]["kind"] == "resource-limit");
  Run hasse = run("hasse-order --poly 'x*y^2+x^4' --vars x,y --weights 2,3 --prime 7");
  CHECK(hasse.status == 2);
}

TEST_CASE("echoed input reproduces the output") {
  for (const std::string args : {"fpt --poly 'x^4+x*y^2' --vars x,y --weights 2,3 --prime 7",
                                 "mu --poly 'y^3 + x^3 + z^3 + 9*x*y*z' --vars x,y,z --prime 7 --e 2",
                                 "isolated --poly 'x^3+y^3+z^3' --vars x,y,z --prime 7",
                                 "milnor --poly 'x^2+y^3+z^6' --vars x,y,z --weights 3,2,1 --prime 11"}) {
    Run first = run(args);
    REQUIRE(first.status == 0);
    json in = json::parse(first.out)["input"];
    const std::string cmd = args.substr(0, args.find(' '));
    std::string again = cmd + " --poly " + quoted(in["poly"]) + " --vars " + join(in["vars"]) + " --weights " +
                        join(in["weights"]) + " --prime " + std::to_string(in["prime"].get<unsigned>());
    if (cmd == "mu") again += " --e 2";
    Run second = run(again);
    CHECK(second.status == 0);
    Run third = run(again);
    CHECK(second.out == third.out);
    CHECK(first.out == second.out);
  }
}

TEST_CASE("sweep output") {
  Run csv = run("sweep --family 'x^3+y^3+z^3+L*x*y*z' --prime 7 --csv");
  CHECK(csv.status == 0);
  CHECK(csv.out ==
        "lambda,status,fpt_num,fpt_den,phi_value\n"
        "0,ordinary,1,1,6\n"
        "1,singular-member,,,1\n"
        "2,singular-member,,,1\n"
        "3,ordinary,1,1,6\n"
        "4,singular-member,,,1\n"
        "5,ordinary,1,1,6\n"
        "6,ordinary,1,1,6\n");
  Run kind = run("sweep --kind E6 --prime 7 --csv");
  CHECK(kind.out == csv.out);
  Run j = run("sweep --kind E7 --prime 5");
  json doc = json::parse(j.out);
  CHECK(doc["kind"] == "E7");
  CHECK(doc["phi_polynomial"] == "L^4 + 2");
  CHECK(doc["members"].size() == 5);
}

TEST_CASE("oracle-check and text output") {
  Run r = run("oracle-check --poly 'x^3+y^3+z^3+2*x*y*z' --vars x,y,z --prime 5 --e 2");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["agree"] == true);
  Run t = run("hasse-order --poly 'x^3+y^3+z^3' --vars x,y,z --prime 5 --format text");
  CHECK(t.status == 0);
  CHECK(t.out.find("h: 1\n") != std::string::npos);
  Run d = run("diagonal --poly 'x^2+y^3+z^7+x*y*z' --vars x,y,z --prime 5");
  CHECK(d.status == 0);
  CHECK(json::parse(d.out)["certificate"] == "Coefficient-4.1");
}
