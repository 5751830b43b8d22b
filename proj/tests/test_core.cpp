#include <random>

#include "doctest.h"
#include "gbs/examples.hpp"
#include "gbs/io.hpp"
#include "gbs/lipschitz.hpp"
#include "gbs/moves.hpp"

using namespace gbs;

namespace {

  bool has_violation(ValidityReport const& r, std::string const& kind) {
    for (auto const& v : r.violations) {
      if (v.kind == kind) {
        return true;
      }
    }
    return false;
  }

  MarkedGraph reduce_fully(MarkedGraph m) {
    while (true) {
      auto st = graph_stats(m.graph());
      if (st.collapsible_edges.empty()) {
        return m;
      }
      m = collapse(m, st.collapsible_edges.front());
    }
  }

}  // namespace

TEST_CASE("validate_graph on BS(2,4)") {
  auto p = bs24();
  CHECK(validate_graph(p->graph()).valid());
  CHECK(betti_number(p->graph()) == 1);
  auto st = graph_stats(p->graph());
  CHECK(st.volume == doctest::Approx(1.0));
  CHECK(st.big_vertex_count == 1);
  CHECK(st.collapsible_edges.empty());
}

TEST_CASE("validate_graph violations") {
  GbsGraph g;
  VertexId a = g.add_vertex("a");
  EdgeId   e = g.add_edge("t", "t'", a, a, 2, 0, 1.0);
  CHECK(has_violation(validate_graph(g), "zero label"));
  g.set_label(GbsGraph::reverse(e), 4);
  CHECK(validate_graph(g).valid());
  g.set_oriented_length(GbsGraph::reverse(e), 2.0);
  CHECK(has_violation(validate_graph(g), "asymmetric length"));
}

TEST_CASE("betti numbers") {
  auto ex = traintrack_example();
  CHECK(betti_number(ex.f.graph()) == 3);
  GbsGraph tree;
  VertexId a = tree.add_vertex("a");
  VertexId b = tree.add_vertex("b");
  VertexId c = tree.add_vertex("c");
  tree.add_edge("x", "x'", a, b, 3, 1, 1.0);
  tree.add_edge("y", "y'", b, c, 2, 5, 1.0);
  CHECK(betti_number(tree) == 0);
}

TEST_CASE("single (1,n) edge is collapsible") {
  GbsGraph g;
  VertexId a = g.add_vertex("a");
  VertexId b = g.add_vertex("b");
  EdgeId   e = g.add_edge("x", "x'", a, b, 3, 1, 1.0);
  auto     st = graph_stats(g);
  REQUIRE(st.collapsible_edges.size() == 1);
  CHECK(st.collapsible_edges[0] == e);
}

TEST_CASE("normalize_volume") {
  auto m  = MarkedGraph::reference_point(rose());
  auto n  = normalize_volume(m);
  CHECK(n.graph().volume() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(n.graph().length(0) == doctest::Approx(1.0 / 3));
  auto nn = normalize_volume(n);
  CHECK(nn.graph() == n.graph());

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    GroupWord w = random_reference_word(*m.reference, rng);
    CHECK(translation_length_ref(n, w)
          == doctest::Approx(translation_length_ref(m, w) / 3.0));
  }
}

TEST_CASE("big vertex count is the same for all reduced forms") {
  auto   ex  = traintrack_example();
  auto   ref = reduce_fully(ex.f.domain);
  size_t big = graph_stats(ref.graph()).big_vertex_count;
  for (uint64_t s = 0; s < 20; ++s) {
    auto m = reduce_fully(random_deform(ex.f.domain, 6, s));
    CHECK(graph_stats(m.graph()).big_vertex_count == big);
  }
}

TEST_CASE("json round trips") {
  auto ex = traintrack_example();
  for (auto const& m : {MarkedGraph::reference_point(bs24()),
                        MarkedGraph::reference_point(rose()), ex.f.domain,
                        random_deform(ex.f.domain, 5, 9)}) {
    json j = marked_to_json(m);
    CHECK(j["schema"] == "gbs-graph.v1");
    json k = marked_to_json(marked_from_json(j));
    CHECK(j.dump() == k.dump());
  }
  for (auto const& tt : {ex.f, ex.f_minus}) {
    json j = tt_to_json(tt);
    CHECK(tt_to_json(tt_from_json(j)).dump() == j.dump());
  }
}

TEST_CASE("graph json validation reports instead of throwing") {
  json j = marked_to_json(MarkedGraph::reference_point(bs24()));
  j["edges"][0]["label_at_t"] = 0;
  ValidityReport r = validate_graph_json(j);
  CHECK_FALSE(r.valid());
  CHECK_THROWS_AS(marked_from_json(j), DomainError);
}
