#include <catch_amalgamated.hpp>

#include <random>

#include "nc/instance.hpp"
#include "nc/io.hpp"

using namespace nc;

namespace {

std::filesystem::path golden(const std::string& rel) {
  return std::filesystem::path(NC_GOLDEN_DIR) / rel;
}

Instance lawful_instance_a() {
  return io::load_instance_dir(builtin_schema("A"), golden("instance_a"));
}

}  // namespace

TEST_CASE("the actant table loads as an instance of A_prime", "[instance]") {
  Instance inst = load_instance(builtin_schema("A_prime"),
                                {{"a", io::read_file(golden("actants.csv"))}});
  CHECK(inst.table("a").row_ids.size() == 18);
  CHECK(inst.table("a").has_row("Tortoise_SubjectDoing"));
  CHECK(inst.table("a").has_row("perseverance_Helper"));
}

TEST_CASE("all-empty files give a valid empty instance", "[instance]") {
  Instance inst = load_instance(builtin_schema("A"), {});
  CHECK(inst.tables.size() == 6);
  for (const auto& [v, table] : inst.tables) CHECK(table.row_ids.empty());
  CHECK(check_functoriality(inst).findings.empty());
}

TEST_CASE("referential integrity is enforced at load", "[instance]") {
  // The sender contractualizes a challenge that the object table lost.
  std::map<std::string, std::string> files{
      {"A", "ID,a1\nTortoise,challenge\n"},
      {"B", "ID\nrace win\n"},
  };
  CHECK_THROWS_WITH(load_instance(builtin_schema("A"), files),
                    Catch::Matchers::ContainsSubstring("references missing row 'challenge'"));
}

TEST_CASE("load rejects malformed tables", "[instance]") {
  Schema a = builtin_schema("A");
  CHECK_THROWS_WITH(load_instance(a, {{"B", "ID\nx\nx\n"}}),
                    Catch::Matchers::ContainsSubstring("duplicate row id"));
  CHECK_THROWS_WITH(load_instance(a, {{"A", "ID\nTortoise\n"}}),
                    Catch::Matchers::ContainsSubstring("missing column 'a1'"));
  CHECK_THROWS_WITH(load_instance(a, {{"B", "ID,a1\nx,y\n"}}),
                    Catch::Matchers::ContainsSubstring("extra column 'a1'"));
  CHECK_THROWS_WITH(
      load_instance(a, {{"A", "ID,a1\nTortoise,x;y\n"}, {"B", "ID\nx\ny\n"}}),
      Catch::Matchers::ContainsSubstring("malformed cell"));
  CHECK_THROWS_WITH(load_instance(a, {{"A", "ID,a1\nTortoise,*\n"}}),
                    Catch::Matchers::ContainsSubstring("malformed cell"));
}

TEST_CASE("monadic columns parse list and absence cells", "[instance]") {
  Schema n = builtin_schema("N");
  std::map<std::string, std::string> files{
      {"P",
       "ID,actorializes,hasJunctionType,isDiscoursivizationOf,dependsOn\n"
       "NP1,x_1;y_1,cap,src,*\n"
       "NP2,y_1,cap,src,NP1\n"},
      {"a", "ID\nx_1\ny_1\n"},
      {"M", "ID\ncap\ncup\n"},
      {"S", "ID\nsrc\n"},
  };
  Instance inst = load_instance(n, files);
  CHECK(inst.table("P").cell("actorializes", "NP1") == std::vector<std::string>{"x_1", "y_1"});
  CHECK(inst.table("P").cell("dependsOn", "NP1").empty());
  CHECK(inst.table("P").cell("dependsOn", "NP2") == std::vector<std::string>{"NP1"});

  files["P"] =
      "ID,actorializes,hasJunctionType,isDiscoursivizationOf,dependsOn\n"
      "NP1,z_9,cap,src,*\n";
  CHECK_THROWS_WITH(load_instance(n, files),
                    Catch::Matchers::ContainsSubstring("references missing row 'z_9'"));
}

TEST_CASE("spelling aliases normalize at load", "[instance]") {
  Instance inst = load_instance(builtin_schema("A_prime"), {{"a", "ID\nperserverence_Helper\n"}});
  CHECK(inst.table("a").has_row("perseverance_Helper"));
}

TEST_CASE("the shipped instance of A is a lawful functor", "[instance]") {
  Instance inst = lawful_instance_a();
  CHECK(check_functoriality(inst).findings.empty());
}

TEST_CASE("one redirected cell yields exactly one finding at that row", "[instance]") {
  Instance inst = lawful_instance_a();
  inst.tables["E"].cells["a6"]["fairness"] = {"challenge"};
  auto report = check_functoriality(inst);
  REQUIRE(report.findings.size() == 1);
  CHECK(report.findings[0].location == "E.fairness");
}

TEST_CASE("functoriality is vacuous without equivalences", "[instance]") {
  Instance inst = lawful_instance_a();
  inst.schema.equivalences.clear();
  inst.tables["E"].cells["a6"]["fairness"] = {"challenge"};
  CHECK(check_functoriality(inst).findings.empty());
}

TEST_CASE("eval_path chases foreign keys", "[instance]") {
  Instance inst = lawful_instance_a();
  // helper --assists--> subject --seeks to conjoin with--> object
  CHECK(eval_path(inst, {"a4", "a3"}, "fairness") == "race win");
  CHECK(eval_path(inst, {}, "anything") == "anything");
  CHECK_THROWS_WITH(eval_path(inst, {"a4", "a3"}, "ghost"),
                    Catch::Matchers::ContainsSubstring("no row 'ghost'"));
  CHECK_THROWS_WITH(eval_path(inst, {"a3", "a4"}, "Tortoise"),
                    Catch::Matchers::ContainsSubstring("not composable"));

  Schema n = builtin_schema("N");
  Instance ninst = load_instance(
      n, {{"P", "ID,actorializes,hasJunctionType,isDiscoursivizationOf,dependsOn\n"
                "NP1,x_1,cap,src,*\n"},
          {"a", "ID\nx_1\n"},
          {"M", "ID\ncap\n"},
          {"S", "ID\nsrc\n"}});
  CHECK_THROWS_WITH(eval_path(ninst, {"actorializes"}, "NP1"),
                    Catch::Matchers::ContainsSubstring("monadic arrow"));
}

TEST_CASE("instances round-trip through canonical CSV", "[instance]") {
  Instance inst = lawful_instance_a();
  auto files = serialize_instance(inst);
  Instance back = load_instance(inst.schema, files);
  CHECK(back.tables.size() == inst.tables.size());
  for (const auto& [v, table] : inst.tables) {
    CHECK(back.table(v).row_ids == table.row_ids);
    CHECK(back.table(v).cells == table.cells);
  }
  CHECK(serialize_instance(back) == files);
}

TEST_CASE("adding rows never removes findings about existing rows", "[instance]") {
  Instance base = lawful_instance_a();
  base.tables["E"].cells["a6"]["fairness"] = {"challenge"};  // one standing violation
  auto before = check_functoriality(base).findings;
  REQUIRE(before.size() == 1);

  std::mt19937 rng(7);
  const std::vector<std::string> objects{"race win", "challenge", "justification"};
  for (int trial = 0; trial < 20; ++trial) {
    Instance grown = base;
    std::string id = "helper" + std::to_string(trial);
    grown.tables["E"].row_ids.push_back(id);
    grown.tables["E"].cells["a4"][id] = {rng() % 2 ? "Tortoise" : "Hare"};
    grown.tables["E"].cells["a6"][id] = {objects[rng() % objects.size()]};
    auto after = check_functoriality(grown).findings;
    for (const auto& f : before)
      CHECK(std::count(after.begin(), after.end(), f) == 1);
    for (const auto& f : after)
      if (!std::count(before.begin(), before.end(), f)) CHECK(f.location == "E." + id);
  }
}
