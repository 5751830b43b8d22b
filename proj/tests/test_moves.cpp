#include <random>

#include "doctest.h"
#include "gbs/examples.hpp"
#include "gbs/lipschitz.hpp"
#include "gbs/moves.hpp"

using namespace gbs;

namespace {

  std::vector<GroupWord> probes(MarkedGraph const& m, size_t n, uint64_t seed) {
    std::mt19937_64        rng(seed);
    std::vector<GroupWord> out;
    while (out.size() < n) {
      out.push_back(random_reference_word(*m.reference, rng));
    }
    return out;
  }

  void same_spectrum(MarkedGraph const& a, MarkedGraph const& b, double scale = 1) {
    for (auto const& w : probes(a, 20, 17)) {
      CHECK(translation_length_ref(b, w)
            == doctest::Approx(scale * translation_length_ref(a, w)));
    }
    for (auto const& c : enumerate_candidates(a).candidates) {
      CHECK(translation_length_ref(b, c.reference) == doctest::Approx(scale * c.length));
    }
  }

}  // namespace

TEST_CASE("subdivide the BS(2,4) loop") {
  auto        m = MarkedGraph::reference_point(bs24());
  auto const& g = m.graph();
  auto        s = subdivide(m, g.edge_index("t"), 0.5, 0.5);
  auto const& h = s.graph();
  CHECK(h.number_of_vertices() == 2);
  CHECK(betti_number(h) == 1);
  std::vector<std::pair<int64_t, int64_t>> labels;
  for (EdgeId e = 0; e < static_cast<EdgeId>(h.number_of_edges()); e += 2) {
    labels.push_back({h.label(e), h.label(GbsGraph::reverse(e))});
  }
  std::sort(labels.begin(), labels.end());
  CHECK(labels == std::vector<std::pair<int64_t, int64_t>>{{1, 4}, {2, 1}});
  CHECK(translation_length_ref(s, parse_word(g, std::string("t"))) == doctest::Approx(1.0));
  CHECK(validate_marking(s).empty());
  same_spectrum(m, s);
}

TEST_CASE("double subdivision then collapses is an isometry") {
  auto ex = traintrack_example();
  auto m  = ex.f.domain;
  auto ea = m.graph().edge_index("ea");
  auto s1 = subdivide(m, ea, m.graph().length(ea) / 3, 2 * m.graph().length(ea) / 3);
  auto eb = s1.graph().edge_index("eb");
  auto s2 = subdivide(s1, eb, s1.graph().length(eb) / 2, s1.graph().length(eb) / 2);
  CHECK(betti_number(s2.graph()) == 3);
  same_spectrum(m, s2);
  // collapse the first halves, moving their length to the second halves
  auto c1 = s2;
  for (std::string name : {"ea_1", "eb_1"}) {
    EdgeId   e = c1.graph().edge_index(name);
    GbsGraph h = c1.graph();
    EdgeId   other = h.edge_index(name == "ea_1" ? "ea_2" : "eb_2");
    h.set_length(other, h.length(other) + h.length(e));
    c1 = collapse(c1.with_lengths(h), e);
  }
  CHECK(c1.graph().number_of_vertices() == 2);
  same_spectrum(m, c1);
}

TEST_CASE("collapse") {
  auto ex = traintrack_example();
  auto m  = ex.f.domain;
  auto const& g = m.graph();
  EdgeId ee = g.edge_index("ee");
  auto   c  = collapse(m, ee);
  CHECK(c.graph().number_of_vertices() == 1);
  CHECK(c.graph().number_of_unoriented_edges() == 3);
  CHECK(betti_number(c.graph()) == 3);
  CHECK(validate_marking(c).empty());
  for (auto const& w : probes(m, 100, 5)) {
    CHECK(translation_length_ref(c, w) <= translation_length_ref(m, w) + 1e-12);
  }
  auto b = MarkedGraph::reference_point(bs24());
  CHECK_THROWS_AS(collapse(b, b.graph().edge_index("t")), DomainError);
}

TEST_CASE("expand BS(2,4) and collapse back") {
  auto        m = MarkedGraph::reference_point(bs24());
  auto const& g = m.graph();
  auto        x = expand(m, g.vertex_index("a"), {g.edge_index("t")}, 2);
  CHECK(x.graph().number_of_vertices() == 2);
  CHECK(validate_marking(x).empty());
  CHECK(betti_number(x.graph()) == 1);
  EdgeId d = -1;
  for (EdgeId e = 0; e < static_cast<EdgeId>(x.graph().number_of_edges()); e += 2) {
    if (!x.graph().is_loop(e)) {
      d = e;
    }
  }
  REQUIRE(d >= 0);
  auto back = collapse(x, d);
  CHECK(back.graph().number_of_vertices() == 1);
  auto const& bg = back.graph();
  std::vector<int64_t> labels{bg.label(0), bg.label(1)};
  std::sort(labels.begin(), labels.end());
  CHECK(labels == std::vector<int64_t>{2, 4});
  for (auto const& w : probes(m, 50, 3)) {
    // the collapsed tree has the loop only, so lengths agree with BS(2,4)
    CHECK(translation_length_ref(back, w) == doctest::Approx(translation_length_ref(m, w)));
    CHECK((translation_length_ref(x, w) == 0) == (translation_length_ref(m, w) == 0));
  }
  CHECK_THROWS_AS(expand(m, g.vertex_index("a"), {g.edge_index("t")}, 1), DomainError);
}

TEST_CASE("rescale changes lengths only by the metric") {
  auto ex = traintrack_example();
  auto m  = ex.f.domain;
  auto r  = rescale(m, std::vector<double>(m.graph().number_of_unoriented_edges(), 2.0));
  same_spectrum(m, r, 2.0);
}

TEST_CASE("random_deform") {
  auto ex = traintrack_example();
  auto m  = ex.f.domain;
  auto z  = random_deform(m, 0, 1);
  CHECK(z.graph() == normalize_volume(m).graph());
  auto a = random_deform(m, 6, 42);
  auto b = random_deform(m, 6, 42);
  CHECK(a.graph() == b.graph());
  size_t big = graph_stats(m.graph()).big_vertex_count;
  for (uint64_t s = 0; s < 50; ++s) {
    auto d = random_deform(m, 8, s);
    CHECK(validate_graph(d.graph()).valid());
    CHECK(betti_number(d.graph()) == 3);
    CHECK(validate_marking(d).empty());
    CHECK(d.graph().volume() == doctest::Approx(1.0));
    CHECK(graph_stats(d.graph()).big_vertex_count <= big);
  }
}
