#include <catch_amalgamated.hpp>

#include "nc/kleisli.hpp"
#include "support/mutant_joins.hpp"

using namespace nc;

TEST_CASE("list Kleisli composition flattens in order", "[kleisli]") {
  FinSet x = FinSet::of({"x"}), y = FinSet::of({"y1", "y2"}), z = FinSet::of({"z1", "z2", "z3"});
  KleisliFun<ListMonad> f{x, y, {{"x", {"y1", "y2"}}}};
  KleisliFun<ListMonad> g{y, z, {{"y1", {"z1"}}, {"y2", {"z2", "z3"}}}};
  auto gf = kleisli_compose<ListMonad>(f, g);
  CHECK(gf.at("x") == std::vector<Atom>{"z1", "z2", "z3"});

  // multiplicity and order are preserved
  KleisliFun<ListMonad> dup{x, y, {{"x", {"y1", "y1"}}}};
  CHECK(kleisli_compose<ListMonad>(dup, g).at("x") == std::vector<Atom>{"z1", "z1"});

  KleisliFun<ListMonad> wrong{x, x, {{"x", {"x"}}}};
  CHECK_THROWS_AS(kleisli_compose<ListMonad>(wrong, g), error);
}

TEST_CASE("absence absorbs through Maybe composition", "[kleisli]") {
  FinSet x = FinSet::of({"x"}), y = FinSet::of({"y1", "y2"});
  KleisliFun<MaybeMonad> f{x, y, {{"x", std::nullopt}}};
  for (const auto& g : enumerate_kleisli<MaybeMonad>(y, y, 1))
    CHECK(kleisli_compose<MaybeMonad>(f, g).at("x") == std::nullopt);
}

TEST_CASE("unit is the right identity pointwise", "[kleisli]") {
  FinSet x = FinSet::of({"x1", "x2"}), y = FinSet::of({"y1", "y2"});
  auto unit_y = kleisli_unit_arrow<ListMonad>(y);
  for (const auto& f : enumerate_kleisli<ListMonad>(x, y, 2))
    CHECK(kleisli_compose<ListMonad>(f, unit_y) == f);
}

TEST_CASE("unit constructors", "[kleisli]") {
  CHECK(monad_unit<ListMonad>("a") == std::vector<Atom>{"a"});
  CHECK(monad_unit<MaybeMonad>("a") == std::optional<Atom>("a"));
}

TEST_CASE("join undoes unit on both sides, exhaustively", "[kleisli]") {
  for (int size = 1; size <= 3; ++size) {
    auto carrier = default_carriers(size).back();
    for (const auto& t : ListMonad::enumerate(carrier.elements, 3)) {
      CHECK(ListMonad::Join{}(ListMonad::unit(t)) == t);
      CHECK(ListMonad::Join{}(ListMonad::map([](const Atom& a) { return ListMonad::unit(a); },
                                             t)) == t);
    }
    for (const auto& t : MaybeMonad::enumerate(carrier.elements, 1)) {
      CHECK(MaybeMonad::Join{}(MaybeMonad::unit(t)) == t);
      CHECK(MaybeMonad::Join{}(MaybeMonad::map(
                [](const Atom& a) { return MaybeMonad::unit(a); }, t)) == t);
    }
  }
}

TEST_CASE("maybe lifts a carrier to exactly one extra value", "[kleisli]") {
  auto carrier = FinSet::of({"a", "b", "c"});
  CHECK(MaybeMonad::enumerate(carrier.elements, 1).size() == 4);
}

TEST_CASE("builtin monads satisfy every law on small carriers", "[kleisli]") {
  auto list_report = check_monad_laws<ListMonad>({FinSet::of({"a", "b"})}, 2);
  CHECK(list_report.ok());
  CHECK(list_report.checks > 0);
  auto maybe_report = check_monad_laws<MaybeMonad>({FinSet::of({"a"})}, 2);
  CHECK(maybe_report.ok());
}

TEST_CASE("broken joins are caught by the harness", "[kleisli]") {
  auto carriers = default_carriers(2);

  auto dropped = check_monad_laws<ListMonad>(carriers, 3, nc_test::DropLastListJoin{});
  CHECK_FALSE(dropped.ok());
  bool names_assoc = false;
  for (const auto& v : dropped.violations) names_assoc |= v.law == "associativity";
  CHECK(names_assoc);

  // Truncation survives both unit laws; only associativity exposes it.
  auto truncated = check_monad_laws<ListMonad>(carriers, 3, nc_test::TruncatingListJoin{});
  CHECK_FALSE(truncated.ok());
  for (const auto& v : truncated.violations)
    CHECK((v.law == "associativity" || v.law.rfind("kleisli", 0) == 0));

  auto absorbed = check_monad_laws<MaybeMonad>(carriers, 3, nc_test::AbsorbingMaybeJoin{});
  CHECK_FALSE(absorbed.ok());
}
