#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "mmcbrace/errors.hpp"
#include "mmcbrace/families.hpp"
#include "mmcbrace/json_io.hpp"

using namespace mmc;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mmcbrace_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("value round trips") {
  GroupShape s(2, {1, 4});
  CHECK(shape_from_json(to_json(s)) == s);
  CHECK(to_json(s) == Json("2,16"));
  GroupElement v(s, {1, 13});
  CHECK(element_from_json(s, to_json(v)) == v);
  AutMatrix a(EndoMatrix::canonicalize(s, {{1, 1}, {8, 5}}));
  CHECK(aut_from_json(s, to_json(a)) == a);
  HolElement g(a, v);
  CHECK(hol_from_json(s, to_json(g)) == g);
}

TEST_CASE("cocycle and brace round trips") {
  for (const auto& d : all_descriptors(3)) {
    auto c = descriptor_cocycle(d);
    auto back = cocycle_from_json(to_json(c));
    CHECK(back.S() == c.S());
    CHECK(back.T() == c.T());
    CHECK(back.gamma_a() == c.gamma_a());
    CHECK(back.gamma_b() == c.gamma_b());
    CHECK(to_json(back) == to_json(c));
    auto t = brace_from_cocycle(c);
    CHECK(brace_from_json(to_json(t)) == t);
  }
}

TEST_CASE("census export and import are exact") {
  auto c = enumerate_mmc_regular(GroupShape(2, {1, 4}), 3);
  auto p1 = temp_path("c1.json");
  auto p2 = temp_path("c2.json");
  export_census(c, p1);
  auto back = import_census(p1);
  CHECK(back == c);
  export_census(back, p2);
  CHECK(slurp(p1) == slurp(p2));
  auto again = enumerate_mmc_regular(GroupShape(2, {1, 4}), 3);
  CHECK(dump_json(to_json(again)) == slurp(p1));
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("empty census round trip") {
  auto c = enumerate_mmc_regular(GroupShape(2, {2, 3}), 3);
  REQUIRE(c.records.empty());
  auto j = to_json(c);
  CHECK(j.at("records").empty());
  CHECK(census_from_json(Json::parse(dump_json(j))) == c);
}

TEST_CASE("keys are sorted in output") {
  auto text = dump_json(Json{{"zeta", 1}, {"alpha", 2}});
  CHECK(text.find("alpha") < text.find("zeta"));
  CHECK(text.back() == '\n');
}

TEST_CASE("tampered census is rejected") {
  auto c = enumerate_mmc_regular(GroupShape(2, {1, 4}), 3);
  auto j = to_json(c);
  j["records"][0]["subgroup_key"] = "0123456789abcdef";
  CHECK_THROWS(census_from_json(j));
  auto k = to_json(c);
  k["records"][0]["socle_desc"] = "<b>";
  CHECK_THROWS(census_from_json(k));
}

TEST_CASE("io errors") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/dir/x.json"), IoError);
  CHECK_THROWS_AS(write_json_file("/nonexistent/dir/x.json", Json::object()), IoError);
  auto p = temp_path("bad.json");
  {
    std::ofstream out(p);
    out << "{not json";
  }
  CHECK_THROWS(read_json_file(p));
  std::filesystem::remove(p);
}
