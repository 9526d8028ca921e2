#include <catch_amalgamated.hpp>

#include "nc/render.hpp"
#include "support/fable.hpp"

using namespace nc;

namespace {

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

int count_box_to_box_edges(const std::string& dot) {
  int n = 0;
  std::istringstream in(dot);
  std::string line;
  while (std::getline(in, line))
    if (line.find(" -> ") != std::string::npos) {
      auto arrow = line.find(" -> ");
      auto lhs = line.rfind('b', arrow);
      bool from_box = line.find("  b") == 0;
      bool to_box = line.compare(arrow + 4, 1, "b") == 0;
      (void)lhs;
      n += from_box && to_box;
    }
  return n;
}

}  // namespace

TEST_CASE("the causing-to-be diagram renders with the expected counts", "[render]") {
  NPCorpus corpus = nc_test::fable_corpus();
  std::string dot = render_dot(evaluate(nc_test::w1_term(corpus)));
  CHECK(count_occurrences(dot, "shape=box") == 2);
  CHECK(count_occurrences(dot, "shape=point") == 0);
  CHECK(count_occurrences(dot, "in0 [shape=plaintext") == 1);
  CHECK(count_occurrences(dot, "in1 [shape=plaintext") == 0);
  CHECK(count_occurrences(dot, "out3 [shape=plaintext") == 1);
  CHECK(count_occurrences(dot, "out4 [shape=plaintext") == 0);
  CHECK(count_box_to_box_edges(dot) == 2);
}

TEST_CASE("the empty diagram renders with no nodes", "[render]") {
  std::string dot = render_dot(evaluate(identity({})));
  CHECK(count_occurrences(dot, "shape=") == 0);
  CHECK(count_occurrences(dot, " -> ") == 0);
}

TEST_CASE("the trajectory renders five boxes and three join dots", "[render]") {
  NPCorpus corpus = nc_test::fable_corpus();
  TermPtr nu = build_trajectory(corpus, nc_test::fable_plan());
  std::string dot = render_dot(evaluate(nu));
  CHECK(count_occurrences(dot, "shape=box") == 5);
  CHECK(count_occurrences(dot, "shape=point") == 3);
  CHECK(count_occurrences(dot, "∩NP1") == 1);
  CHECK(count_occurrences(dot, "∪NP6") == 1);
  CHECK(count_occurrences(dot, "rank=source") == 1);
  CHECK(count_occurrences(dot, "rank=sink") == 1);
}

TEST_CASE("equal diagrams from different terms render byte-identically", "[render]") {
  const RoleIndexedActant t{"t", Role::Object}, u{"u", Role::Helper};
  auto sig = [](const std::string& id, TensorWord dom, TensorWord cod) {
    GeneratorSig s;
    s.id = id;
    s.kind = GenKind::Np;
    s.dom = std::move(dom);
    s.cod = std::move(cod);
    return s;
  };
  TermPtr f = generator(sig("f", {t}, {u}));
  TermPtr g = generator(sig("g", {u}, {t}));
  TermPtr h = generator(sig("h", {u}, {u}));
  TermPtr k = generator(sig("k", {t}, {t}));

  TermPtr one = compose(tensor(f, g), tensor(h, k));
  TermPtr two = tensor(compose(f, h), compose(g, k));
  REQUIRE(iso(one, two));
  CHECK(render_dot(evaluate(one)) == render_dot(evaluate(two)));
  CHECK(render_dot(evaluate(one)) == render_dot(evaluate(one)));
}

TEST_CASE("render options: roles, ascii, rank direction", "[render]") {
  NPCorpus corpus = nc_test::fable_corpus();
  OpenHypergraph g = evaluate(nc_test::w1_term(corpus));

  RenderOptions opts;
  opts.show_roles = true;
  std::string dot = render_dot(g, opts);
  CHECK(count_occurrences(dot, "Hare_SubjectDoing") > 0);
  std::string plain = render_dot(g);
  CHECK(count_occurrences(plain, "Hare_SubjectDoing") == 0);
  CHECK(count_occurrences(plain, "Hare") > 0);

  opts.ascii = true;
  opts.rank_direction = RankDirection::TopToBottom;
  dot = render_dot(g, opts);
  CHECK(count_occurrences(dot, "rankdir=TB") == 1);
  CHECK(count_occurrences(dot, "capNP2") == 1);
}

TEST_CASE("SVG output is self-contained and layered", "[render]") {
  NPCorpus corpus = nc_test::fable_corpus();
  TermPtr nu = build_trajectory(corpus, nc_test::fable_plan());
  std::string svg = render_svg(evaluate(nu));
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count_occurrences(svg, "<svg") == 1);
  CHECK(count_occurrences(svg, "<rect") == 5);
  CHECK(count_occurrences(svg, "<circle") == 3);
  CHECK(count_occurrences(svg, "</svg>") == 1);
}

TEST_CASE("degree-1 wires render as stub dots", "[render]") {
  NPCorpus corpus = nc_test::fable_corpus();
  TermPtr np1 = generator(np_generator(corpus.require("NP1")));
  TermPtr term =
      compose(np1, tensor(identity({nc_test::actant("Tortoise_SubjectState")}),
                          frobenius_discard(nc_test::actant("challenge_Object"))));
  std::string dot = render_dot(evaluate(term));
  CHECK(count_occurrences(dot, "shape=point") == 1);
  CHECK(count_occurrences(dot, "-> w") == 1);  // one edge into the stub, none out
}

TEST_CASE("text output lists boundaries, boxes and wire degrees", "[render]") {
  NPCorpus corpus = nc_test::fable_corpus();
  std::string text = render_text(evaluate(nc_test::w1_term(corpus)));
  CHECK(text.find("inputs: Hare_SubjectDoing") != std::string::npos);
  CHECK(text.find("causing-to-be") != std::string::npos);
  CHECK(text.find("degree 2") != std::string::npos);
}
