#include <doctest.h>

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "asmbij/cli.hpp"
#include "asmbij/json_io.hpp"
#include "asmbij/subsets.hpp"

using namespace asmbij;

TEST_CASE("run config invariants") {
  RunConfig c;
  c.command = "counts";
  c.n = 3;
  c.i = 2;
  CHECK_NOTHROW(c.validate());
  c.i = 4;
  CHECK_THROWS(c.validate());  // needs 1 <= i <= n
  c.i = 0;
  CHECK_THROWS(c.validate());
  c.i = 1;
  c.budget_sec = 0;
  CHECK_THROWS(c.validate());  // budget > 0
  c.budget_sec = 10;
  c.command = "plot";
  CHECK_THROWS(c.validate());
}

TEST_CASE("zero budget is a usage error") {
  RunConfig c;
  c.command = "selftest";
  c.budget_sec = 0;
  std::ostringstream os;
  CHECK(run_command(c, os) == 2);
  CHECK(os.str().find("usage error") != std::string::npos);
}

TEST_CASE("parti implementation selector is not built") {
  RunConfig c;
  c.command = "counts";
  c.impl = "parti";
  std::ostringstream os;
  CHECK(run_command(c, os) == 2);
}

TEST_CASE("counts command") {
  RunConfig c;
  c.command = "counts";
  c.n = 1;
  std::ostringstream os;
  CHECK(run_command(c, os) == 0);
  CHECK(os.str().find("|ASM_1|   = 1") != std::string::npos);

  c.n = 4;
  c.format = "json";
  std::ostringstream os2;
  CHECK(run_command(c, os2) == 0);
  auto j = nlohmann::json::parse(os2.str());
  CHECK(j["asm"] == 42);
  CHECK(j["asm_i"] == std::vector<i64>({7, 14, 14, 7}));
  CHECK(j["cross_checks_ok"] == true);
}

TEST_CASE("table command: line counts and determinism") {
  RunConfig c;
  c.command = "table";
  c.problem = "main";
  c.n = 3;
  c.i = 2;
  c.x = 0;
  std::ostringstream a, b;
  CHECK(run_command(c, a) == 0);
  CHECK(run_command(c, b) == 0);
  std::string sa = a.str(), sb = b.str();
  CHECK(sa == sb);
  CHECK(std::count(sa.begin(), sa.end(), '\n') == 36 + 1);  // header + pairs

  c.n = 1;
  c.i = 1;
  std::ostringstream d;
  CHECK(run_command(c, d) == 0);
  std::string sd = d.str();
  CHECK(std::count(sd.begin(), sd.end(), '\n') == 1 + 1);

  // json schema sanity
  c.n = 3;
  c.i = 2;
  c.format = "json";
  std::ostringstream e;
  CHECK(run_command(c, e) == 0);
  auto j = nlohmann::json::parse(e.str());
  CHECK(j["pairs"].size() == 36);
  CHECK(j["pairs"][0]["left"].contains("s"));
}

TEST_CASE("asmdpp table at n=4 has 98 lines") {
  RunConfig c;
  c.command = "table";
  c.problem = "asmdpp";
  c.n = 4;
  c.i = 2;
  std::ostringstream os;
  CHECK(run_command(c, os) == 0);
  std::string s = os.str();
  CHECK(std::count(s.begin(), s.end(), '\n') == 98 + 1);
}

TEST_CASE("verify command") {
  RunConfig c;
  c.command = "verify";
  c.target = "alpha";
  std::ostringstream os;
  CHECK(run_command(c, os) == 0);
  CHECK(os.str().find("pass") != std::string::npos);

  c.target = "corrupted";
  std::ostringstream os2;
  CHECK(run_command(c, os2) == 1);
  CHECK(os2.str().find("counterexample") != std::string::npos);

  c.target = "main";
  c.n = 2;
  std::ostringstream os3;
  CHECK(run_command(c, os3) == 0);

  c.target = "bogus";
  std::ostringstream os4;
  CHECK(run_command(c, os4) == 2);
}

TEST_CASE("element json encoding") {
  Elem e = in_left(pair_elem(tuple_elem({1, 2}), at_index(tuple_elem({3}), tuple_elem({}))));
  auto j = elem_to_json_bare(e);
  CHECK(j.contains("L"));
  CHECK(j["L"]["p"][0]["i"] == std::vector<i64>({1, 2}));
  CHECK(j["L"]["p"][1]["x"]["t"]["i"] == std::vector<i64>({3}));

  SSet s = opp(interval(1, 2));
  auto js = elem_to_json(tuple_elem({1}), s);
  CHECK(js["s"] == -1);
  CHECK(js["i"] == std::vector<i64>({1}));
}

TEST_CASE("renderers") {
  CHECK(render_bset(tuple_elem({2, 3, 4, 5, 7})) == "23457");
  CHECK(render_bset(tuple_elem({2, 3, 10})) == "2,3,10");
  CHECK(render_dpp(tuple_elem({})) == "-");
  CHECK(render_dpp(tuple_elem({3, 4, 2, 1, 1, 2})) == "4 2 1 / 2");
  CHECK(render_asm(tuple_elem({0, 1, 1, 0})) == "[0 1 / 1 0]");
  std::string t = mt_pretty({{1}, {1, 2}, {1, 2, 3}});
  CHECK(t.find("1 2 3") != std::string::npos);
  CHECK(t[0] == ' ');  // the top row is indented
}

TEST_CASE("golden table at n=2") {
  // pins the canonical enumeration order and the text rendering
  RunConfig c;
  c.command = "table";
  c.problem = "main";
  c.n = 2;
  c.i = 2;
  std::ostringstream os;
  REQUIRE(run_command(c, os) == 0);
  CHECK(os.str() ==
        "# main n=2 i=2 x=0 impl=fallback\n"
        "(-, 123, [0 1 / 1 0])  <->  (-, [1 0 / 0 1], 234)\n"
        "(-, 124, [0 1 / 1 0])  <->  (-, [1 0 / 0 1], 134)\n");

  c.problem = "asmdpp";
  c.i = 1;
  std::ostringstream os2;
  REQUIRE(run_command(c, os2) == 0);
  CHECK(os2.str() ==
        "# asmdpp n=2 i=1 x=0 impl=fallback\n"
        "(-, [1 0 / 0 1])  <->  ([1 0 / 0 1], -)\n");
}
