#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;

  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = ffgeom::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::string kData = FFGEOM_TEST_DATA;
const std::string kSuites = FFGEOM_SUITES;

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("census on a product file") {
  const auto r = run({"census", "--input", kData + "/grid3.json", "--k", "1"});
  REQUIRE(r.code == 0);
  const auto j = r.report();
  CHECK(j["support_size"] == "3");
  CHECK(j["total"] == "81");
}

TEST_CASE("lemma ids") {
  const auto ok = run({"verify-lemma", "2.2", "--q", "3", "--m", "3"});
  CHECK(ok.code == 0);
  CHECK(ok.report()["pass"] == true);
  const auto bad = run({"verify-lemma", "9.9"});
  CHECK(bad.code == 2);
  CHECK(bad.out.empty());
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"nu", "--q", "4", "--grid"}).code == 2);
  CHECK(run({"nu", "--q", "3"}).code == 2);
  CHECK(run({"nu", "--input", kData + "/missing.csv"}).code == 2);
  CHECK(run({"census", "--q", "13", "--grid", "--k", "4"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
}

TEST_CASE("version and help exit 0") {
  const auto v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out == ffgeom::cli::version() + "\n");
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("a corrupted lambda declaration fails with exit 1") {
  const auto r = run({"spectrum", "--graph", "er", "--q", "3", "--m", "3", "--declared-lambda", "1/2"});
  CHECK(r.code == 1);
  CHECK(r.report()["pass"] == false);
}

TEST_CASE("suites") {
  CHECK(run({"suite", "--config", kSuites + "/empty.json"}).code == 0);
  const auto neg = run({"suite", "--config", kSuites + "/negative_control.json"});
  CHECK(neg.code == 1);
  CHECK(neg.report()["failed"] == json::array({"er-q3-m3-corrupted-lambda"}));
}

TEST_CASE("reports do not depend on the thread count") {
  const std::vector<std::vector<std::string>> cmds{
      {"nu", "--q", "7", "--random", "30", "--seed", "4"},
      {"census", "--q", "5", "--grid", "--k", "2"},
      {"dds", "--q", "11", "--random", "60", "--seed", "2"},
      {"verify-lemma", "eq-2-chain", "--q", "3", "--grid", "--k", "2"},
  };
  for (auto cmd : cmds) {
    auto one = cmd, four = cmd;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const auto a = run(one), b = run(four);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("the checked-in flag reference is current") {
  std::ifstream in(std::string(FFGEOM_DOCS) + "/cli-reference.md");
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == ffgeom::cli::flag_reference());
}

}

TEST_SUITE("cli") {

// Every chain cell trips the halved second-moment display and nothing else.
TEST_CASE("default suite outcome") {
  const auto r = run({"suite", "--config", kSuites + "/default.json"});
  REQUIRE(r.code == 1);
  const auto j = r.report();
  REQUIRE_FALSE(j["failed"].empty());
  for (const auto& cell : j["cells"]) {
    const std::string name = cell["cell"];
    const bool chain = name.find("chain") != std::string::npos;
    CHECK_MESSAGE(cell["pass"] == !chain, name);
    if (chain) CHECK(cell["check"] == "second_moment_printed");
  }
}

}
