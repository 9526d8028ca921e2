#include <catch_amalgamated.hpp>

#include "nc/io.hpp"
#include "nc/narrative.hpp"

using namespace nc;

namespace {

std::filesystem::path golden(const std::string& rel) {
  return std::filesystem::path(NC_GOLDEN_DIR) / rel;
}

NPCorpus fable_corpus() { return io::load_corpus(golden("np_table.csv"), golden("actants.csv")); }

}  // namespace

TEST_CASE("the actant table derives 18 role-indexed actants", "[narrative]") {
  auto actants = io::load_actants(golden("actants.csv"));
  CHECK(actants.size() == 18);
  CHECK(actants.count({"Tortoise", Role::SubjectDoing}) == 1);
  CHECK(actants.count({"fairness", Role::Helper}) == 1);
  CHECK(actants.count({"race win", Role::Object}) == 1);

  Instance empty = load_instance(builtin_schema("A_prime"), {});
  CHECK(derive_actants(empty).empty());
}

TEST_CASE("unknown roles and shapeless row ids are rejected", "[narrative]") {
  CHECK_THROWS_WITH(
      derive_actants(load_instance(builtin_schema("A_prime"), {{"a", "ID\nHare_Villain\n"}})),
      Catch::Matchers::ContainsSubstring("unknown role 'Villain'"));
  CHECK_THROWS_WITH(
      derive_actants(load_instance(builtin_schema("A_prime"), {{"a", "ID\nHare\n"}})),
      Catch::Matchers::ContainsSubstring("unparseable actant id"));
}

TEST_CASE("the fable NP table parses to NP1..NP7", "[narrative]") {
  NPCorpus corpus = fable_corpus();
  REQUIRE(corpus.programs.size() == 7);
  CHECK(corpus.require("NP4").depends_on == "NP2");
  CHECK(corpus.require("NP5").depends_on == "NP7");
  CHECK(corpus.require("NP7").junction == Junction::Disjunction);
  CHECK(corpus.require("NP1").junction == Junction::Conjunction);
  CHECK(corpus.require("NP4").participant_count() == 3);
  CHECK(corpus.require("NP7").actorializes[3] ==
        RoleIndexedActant{"perseverance", Role::Helper});
  CHECK(corpus.require("NP1").source == "Aesop226");
}

TEST_CASE("canonical form violations are rejected", "[narrative]") {
  auto actants = io::load_actants(golden("actants.csv"));
  std::string header = "ID,isDiscoursivizationOf,hasJunctionType,dependsOn,actorializes\n";
  CHECK_THROWS_WITH(
      parse_np_table(header +
                         "NPx,Aesop226,cap,*,Hare_SubjectState;Hare_SubjectDoing;nap_Opponent\n",
                     actants),
      Catch::Matchers::ContainsSubstring("element 0 must be SubjectDoing"));
  CHECK_THROWS_WITH(
      parse_np_table(header + "NPx,Aesop226,cap,*,Hare_SubjectDoing;Hare_SubjectState\n",
                     actants),
      Catch::Matchers::ContainsSubstring("at least one participant"));
  CHECK_THROWS_WITH(
      parse_np_table(
          header + "NPx,Aesop226,cap,*,Hare_SubjectDoing;Hare_SubjectState;ghost_Object\n",
          actants),
      Catch::Matchers::ContainsSubstring("unknown actant 'ghost_Object'"));
  CHECK_THROWS_WITH(
      parse_np_table(
          header + "NPx,Aesop226,xor,*,Hare_SubjectDoing;Hare_SubjectState;nap_Opponent\n",
          actants),
      Catch::Matchers::ContainsSubstring("junction must be cap or cup"));
  CHECK_THROWS_WITH(parse_np_table("ID,a,b\n", actants),
                    Catch::Matchers::ContainsSubstring("header"));
}

TEST_CASE("dependency errors: duplicates, dangling, cycles", "[narrative]") {
  auto actants = io::load_actants(golden("actants.csv"));
  std::string header = "ID,isDiscoursivizationOf,hasJunctionType,dependsOn,actorializes\n";
  std::string row_a = "NPa,src,cap,NPb,Hare_SubjectDoing;Hare_SubjectState;nap_Opponent\n";
  std::string row_b = "NPb,src,cap,NPa,Hare_SubjectDoing;Hare_SubjectState;nap_Opponent\n";
  CHECK_THROWS_WITH(parse_np_table(header + row_a + row_b, actants),
                    Catch::Matchers::ContainsSubstring("dependency cycle"));
  CHECK_THROWS_WITH(parse_np_table(header + row_a, actants),
                    Catch::Matchers::ContainsSubstring("depends on unknown NP"));
  CHECK_THROWS_WITH(parse_np_table(header + row_b + row_b, actants),
                    Catch::Matchers::ContainsSubstring("duplicate NP id"));
}

TEST_CASE("junction symbols accept UTF-8 aliases", "[narrative]") {
  auto actants = io::load_actants(golden("actants.csv"));
  std::string csv =
      "ID,isDiscoursivizationOf,hasJunctionType,dependsOn,actorializes\n"
      "NPx,src,∩,*,Hare_SubjectDoing;Hare_SubjectState;nap_Opponent\n"
      "NPy,src,∪,*,Hare_SubjectDoing;Hare_SubjectState;nap_Opponent\n";
  NPCorpus corpus = parse_np_table(csv, actants);
  CHECK(corpus.require("NPx").junction == Junction::Conjunction);
  CHECK(corpus.require("NPy").junction == Junction::Disjunction);
}

TEST_CASE("dependency order is a stable topological sort", "[narrative]") {
  NPCorpus corpus = fable_corpus();
  auto order = dependency_order(corpus);
  CHECK(order == std::vector<std::string>{"NP1", "NP2", "NP3", "NP4", "NP6", "NP7", "NP5"});

  auto index = [&](const std::string& id) {
    return std::find(order.begin(), order.end(), id) - order.begin();
  };
  CHECK(index("NP2") < index("NP4"));
  CHECK(index("NP7") < index("NP5"));

  // basic NPs only: table order
  NPCorpus basics = corpus;
  for (auto& p : basics.programs) p.depends_on.reset();
  auto flat = dependency_order(basics);
  CHECK(flat == std::vector<std::string>{"NP1", "NP2", "NP3", "NP4", "NP5", "NP6", "NP7"});

  // chain: NPb depends on NPa, NPc on NPb
  auto actants = corpus.actants;
  std::string csv =
      "ID,isDiscoursivizationOf,hasJunctionType,dependsOn,actorializes\n"
      "NPc,src,cap,NPb,Hare_SubjectDoing;Hare_SubjectState;nap_Opponent\n"
      "NPb,src,cap,NPa,Hare_SubjectDoing;Hare_SubjectState;nap_Opponent\n"
      "NPa,src,cap,*,Hare_SubjectDoing;Hare_SubjectState;nap_Opponent\n";
  CHECK(dependency_order(parse_np_table(csv, actants)) ==
        std::vector<std::string>{"NPa", "NPb", "NPc"});
}

TEST_CASE("formula emission matches the worked equations", "[narrative]") {
  NPCorpus corpus = fable_corpus();
  CHECK(emit_formula(corpus, "NP1") == "{Tortoise → (Tortoise ∩ challenge)}");
  CHECK(emit_formula(corpus, "NP4") ==
        "{NP2 {Hare → (Hare ∩ {nap, laziness, overconfidence})}}");
  CHECK(emit_formula(corpus, "NP7") ==
        "{Hare → (Hare ∪ {consistency, perseverance})}");
  CHECK_THROWS_WITH(emit_formula(corpus, "NP9"),
                    Catch::Matchers::ContainsSubstring("unknown NP id"));
}

TEST_CASE("formula variants: inline expansion and ASCII", "[narrative]") {
  NPCorpus corpus = fable_corpus();
  CHECK(emit_formula(corpus, "NP4", {true, false}) ==
        "{{Hare → (Hare ∩ underestimation)} "
        "{Hare → (Hare ∩ {nap, laziness, overconfidence})}}");
  CHECK(emit_formula(corpus, "NP1", {false, true}) == "{Tortoise -> (Tortoise cap challenge)}");
}

TEST_CASE("NP tables round-trip through canonical CSV", "[narrative]") {
  NPCorpus corpus = fable_corpus();
  NPCorpus back = parse_np_table(serialize_np_table(corpus), corpus.actants);
  REQUIRE(back.programs.size() == corpus.programs.size());
  for (size_t i = 0; i < corpus.programs.size(); ++i) {
    CHECK(back.programs[i].id == corpus.programs[i].id);
    CHECK(back.programs[i].junction == corpus.programs[i].junction);
    CHECK(back.programs[i].depends_on == corpus.programs[i].depends_on);
    CHECK(back.programs[i].actorializes == corpus.programs[i].actorializes);
  }
  CHECK(serialize_np_table(back) == serialize_np_table(corpus));
}
