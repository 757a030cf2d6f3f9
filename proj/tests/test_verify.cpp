#include "verify.hpp"

#include "support.hpp"

using namespace ag;

TEST_CASE("verification report") {
  verify::Setup s;
  s.params = ag::test::P(2, 3, 1, 3);
  auto r = verify::run("all", s);
  CHECK(r.at("schema") == "alphagamma.report/1");
  CHECK(r.at("alpha") == "2/3");
  CHECK(r.at("checks").size() == verify::check_names().size());
  CHECK(r.at("pass").get<bool>());
  for (const auto& c : r.at("checks")) CHECK_MESSAGE(c.at("pass").get<bool>(), c.at("check"));
}

TEST_CASE("both replacement laws are reported") {
  auto rows = verify::tilde_law_table(5, ag::test::P(2, 3, 1, 3));
  CHECK(rows.size() == 3 + 4 + 5);
  for (const auto& row : rows) {
    CHECK(row.contains("derived"));
    CHECK(row.contains("printed"));
    CHECK(row.at("derived").at("sum") == "1");
  }
}

TEST_CASE("independence report flags the (1, 2) entry") {
  verify::Setup s;
  s.n = 5;
  s.params = ag::test::P(2, 3, 1, 3);
  auto r = verify::independence(s);
  CHECK(r.at("pass").get<bool>());
  CHECK_FALSE(r.at("matches_stated_formula").get<bool>());
  for (const auto& e : r.at("entries"))
    if (e.at("i") == 1 && e.at("i_tilde") == 2) {
      CHECK(e.at("probability") == "1/10");
      CHECK(e.at("stated_formula") == "3/10");
    }
}

TEST_CASE("setup errors") {
  verify::Setup s;
  s.n = 12;
  CHECK_THROWS_AS(verify::run("all", s), std::invalid_argument);
  s.n = 4;
  CHECK_THROWS_AS(verify::run("everything", s), std::invalid_argument);
  s.k = 4;
  CHECK_THROWS_AS(verify::run("stationarity", s), std::invalid_argument);
}
