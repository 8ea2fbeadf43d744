#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "cofinex/fixtures.hpp"
#include "cofinex/io.hpp"
#include "support.hpp"

using namespace cofinex;

namespace {

struct Run {
  std::string out;
  int code = -1;
};

Run cli(const std::string& args) {
  const std::string cmd =
      std::string("cd ") + COFINEX_TEST_DATA + " && " + COFINEX_CLI + " " + args + " 2>/dev/null";
  Run run;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) run.out.append(buf.data(), n);
  const int status = pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

io::json json_of(const Run& run) { return io::parse(run.out); }

}  // namespace

TEST_CASE("validate") {
  const auto ok = cli("validate p2.json");
  CHECK(ok.code == 0);
  CHECK(ok.out == "valid\n");
  const auto fixed = cli("validate fixed_edge.json --format json");
  CHECK(fixed.code == 1);
  const auto doc = json_of(fixed);
  CHECK(doc["valid"] == false);
  bool found = false;
  for (const auto& v : doc["violations"]) found = found || v.dump().find("FixedEdge") != std::string::npos;
  CHECK(found);
  CHECK(cli("validate dangling.json").code == 2);
  CHECK(cli("validate malformed.json").code == 2);
  CHECK(cli("validate missing.json").code == 2);
}

TEST_CASE("close") {
  const auto p2 = cli("close --law compatible --pairs pairs_p2.json p2.json --format json");
  CHECK(p2.code == 0);
  CHECK(p2.out == "{\"classes\":[[\"0\",\"1\",\"2\"],[\"e01\",\"e12\"]],\"valid\":true,\"witness\":[]}\n");
  const auto z4 = cli("close --law congruence --pairs pairs_z4.json z4.json --format json");
  CHECK(z4.code == 0);
  CHECK(json_of(z4)["classes"] == io::parse(R"([["0","2"],["1","3"]])"));
  CHECK(cli("close --law congruence --pairs pairs_p2.json p2.json").code == 2);
  CHECK(cli("close --law sideways --pairs pairs_p2.json p2.json").code == 2);
  CHECK(cli("close --law compatible --pairs pairs_z4.json p2.json").code == 2);
}

TEST_CASE("quotient") {
  const auto two_cycle = cli("quotient p2.json rel_p2_ends.json --format json");
  CHECK(two_cycle.code == 0);
  const auto q = json_of(two_cycle)["quotient"];
  CHECK(q["vertices"] == io::parse(R"(["0","1"])"));
  CHECK(q["src"]["e12"] == "1");
  CHECK(q["tgt"]["e12"] == "0");
  CHECK(cli("quotient p2.json rel_p2_bad.json").code == 1);
  const auto z2 = cli("quotient z4.json rel_z4_half.json --format json");
  CHECK(z2.code == 0);
  CHECK(json_of(z2)["quotient"]["elements"] == io::parse(R"(["0","1"])"));
  CHECK(cli("quotient pair2.json rel_pair_ab.json --law congruence").code == 1);
}

TEST_CASE("hausdorff") {
  CHECK(cli("hausdorff fb_p2_separating.json").code == 0);
  CHECK(cli("hausdorff fb_p2_full.json").code == 1);
  const auto incomparable = cli("hausdorff fb_p2_incomparable.json --format json");
  CHECK(incomparable.code == 1);
  CHECK(json_of(incomparable)["filter_base"]["witness"] == io::parse(R"(["0","1"])"));
}

TEST_CASE("separate") {
  const auto at1 = cli("separate p2.json --at 1 --format json");
  CHECK(at1.code == 0);
  CHECK(at1.out == "{\"classes\":[[\"0\",\"2\"]],\"index\":4}\n");
  const auto at_e = cli("separate p2.json --at e01 --format json");
  CHECK(at_e.out == "{\"classes\":[[\"0\",\"1\",\"2\",\"e12\"]],\"index\":2}\n");
  CHECK(cli("separate p2.json --at nope").code == 2);
  CHECK(cli("separate z4.json --at 0").code == 2);
}

TEST_CASE("complete") {
  const auto circles = cli("complete --system zline-circles --depth 4 --report ends");
  CHECK(circles.code == 0);
  CHECK(circles.out.rfind("status         Exact(1)\nper-level      (1,1,1,1)\n", 0) == 0);
  const auto arcs = cli("complete --system zline-arcs --depth 4 --report ends --format json");
  CHECK(arcs.code == 0);
  const auto doc = json_of(arcs);
  CHECK(doc["status"] == "Exact(2)");
  CHECK(doc["per_level"] == io::parse("[2,2,2,2]"));
  CHECK(cli("complete --system zline-circles --depth 1 --report ends").code == 1);
  CHECK(cli("complete --system zline-arcs --depth 4 --report quotient-check").code == 0);
  CHECK(cli("complete --system zline-circles --depth 4 --report census --level 2").code == 0);
  CHECK(cli("complete --system zline-arcs --depth 4 --report nonsense").code == 2);
  CHECK(cli("complete --system zline-arcs --depth 99 --report ends").code == 2);
  CHECK(cli("complete --system no-such-file.json --depth 4").code == 2);

  const auto chain = cli("complete --system system_p2_chain.json --depth 3 --format json");
  CHECK(chain.code == 0);
  CHECK(json_of(chain)["status"] == "Exact(0)");
}

TEST_CASE("rigid") {
  const auto half = cli("rigid c2_z4.json --normal normal_z4_half.json --at 0.0.0 --format json");
  CHECK(half.code == 0);
  const auto doc = json_of(half);
  CHECK(doc["index"] == 8);
  CHECK(doc["subgroups"]["1.0.1"] == io::parse(R"(["1.0.1","1.2.1"])"));
  CHECK(cli("rigid c2_s3.json --normal normal_s3_order2.json --at 0.0.0").code == 1);
  CHECK(cli("rigid c2_z4.json --normal normal_z4_half.json --at 0.1.0").code == 2);
  CHECK(cli("rigid c2_z4.json --at 0.0.0").code == 2);
}

TEST_CASE("gen output is canonical and round-trips bit-exactly") {
  for (const auto& [name, params] : std::vector<std::pair<std::string, std::string>>{
           {"path", "3"},
           {"delta-graph", ""},
           {"discrete-space", "2"},
           {"cyclic", "4"},
           {"pair-groupoid", "3"},
           {"connected-groupoid", "2 klein"}}) {
    const auto run = cli("gen " + name + " " + params);
    REQUIRE(run.code == 0);
    const auto back = io::structure_from_json(io::parse(run.out));
    CHECK(io::canonical(io::to_json(back)) == run.out);
    CHECK(validate(back).ok());
  }
  CHECK(cli("gen p2 0").code == 2);
  CHECK(cli("gen path -3").code == 2);
  const auto z = cli("gen zline-arcs 3");
  CHECK(z.code == 0);
  CHECK(z.out == "{\"generator\":\"zline-arcs\",\"max_level\":3}\n");

  // Checked-in data files are canonical.
  for (const char* file : {"p2.json", "z4.json", "pair2.json", "c2_z4.json"}) {
    const auto text = cli(std::string("validate ") + file + " --format json");
    CHECK(text.code == 0);
    const auto doc = io::load_file(std::string(COFINEX_TEST_DATA) + "/" + file);
    CHECK(io::canonical(io::to_json(io::structure_from_json(doc))) == io::canonical(doc));
  }
}

TEST_CASE("verify") {
  const auto ok = cli("verify --suite core --max-size 6 --seed 7");
  CHECK(ok.code == 0);
  const auto faulty = cli("verify --suite core --max-size 6 --seed 7 --fault skip-product-closure");
  CHECK(faulty.code == 1);
  CHECK(faulty.out.find("cyclic(4)") != std::string::npos);
  CHECK(cli("verify --suite unknown").code == 2);
}

TEST_CASE("usage errors") {
  CHECK(cli("").code == 2);
  CHECK(cli("no-such-command").code == 2);
  CHECK(cli("validate").code == 2);
  CHECK(cli("validate p2.json --format yaml").code == 2);
}
