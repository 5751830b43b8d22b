#include <random>

#include "doctest.h"
#include "gbs/examples.hpp"
#include "gbs/lamination.hpp"
#include "gbs/lipschitz.hpp"
#include "gbs/whitehead.hpp"
#include "oracles.hpp"

using namespace gbs;

namespace {

  WhiteheadGraph abstract(size_t n, std::vector<std::pair<size_t, size_t>> edges) {
    WhiteheadGraph w;
    w.nodes.resize(n);
    w.edges = std::move(edges);
    return w;
  }

  void agrees_with_oracle(WhiteheadGraph const& w) {
    auto a = cut_analysis(w);
    auto b = oracle::brute_force_cuts(w.nodes.size(), w.edges);
    CHECK(a.connected == b.connected);
    auto cuts = a.cut_vertices;
    std::sort(cuts.begin(), cuts.end());
    CHECK(cuts == b.cut_vertices);
  }

}  // namespace

TEST_CASE("cut analysis on small graphs") {
  auto p3 = abstract(3, {{0, 1}, {1, 2}});
  auto a  = cut_analysis(p3);
  CHECK(a.connected);
  CHECK(a.cut_vertices == std::vector<size_t>{1});
  auto k4 = abstract(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  auto b  = cut_analysis(k4);
  CHECK(b.connected);
  CHECK(b.cut_vertices.empty());
}

TEST_CASE("cut analysis agrees with brute force") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    size_t n = 1 + rng() % 9;
    std::vector<std::pair<size_t, size_t>> es;
    size_t m = rng() % (2 * n + 1);
    for (size_t k = 0; k < m; ++k) {
      size_t a = rng() % n, b = rng() % n;
      if (a != b) {
        es.push_back({a, b});
      }
    }
    agrees_with_oracle(abstract(n, es));
  }
}

TEST_CASE("Whitehead graph of t in BS(2,4)") {
  auto        m = MarkedGraph::reference_point(bs24());
  auto const& g = m.graph();
  auto        c = cyclic_reduce(g, parse_word(g, std::string("t"))).first;
  auto        w = whitehead_graph(g, std::vector<CyclicWord>{c}, g.vertex_index("a"));
  CHECK(w.nodes.size() == 6);
  CHECK(w.edges.size() == 4);
  auto ca = cut_analysis(w);
  // two residues at the label 4 end are only reached through the other
  // two, so the graph is a pair of paths
  CHECK_FALSE(ca.connected);
  CHECK(ca.cut_vertices.size() == 2);
  agrees_with_oracle(w);

  auto e = whitehead_graph(g, std::vector<CyclicWord>{}, g.vertex_index("a"));
  CHECK(e.edges.empty());
}

TEST_CASE("Whitehead graphs of the attracting lamination are connected") {
  auto        ex = traintrack_example();
  auto const& g  = ex.f.graph();
  LeafLibrary lib(ex.f, 8);
  for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices()); ++v) {
    auto w = whitehead_graph(g, lib.turns(), v);
    CHECK(cut_analysis(w).connected);
    agrees_with_oracle(w);
  }
}

TEST_CASE("invariance under conjugation and powers") {
  auto            ex = traintrack_example();
  auto const&     m  = ex.f.domain;
  auto const&     g  = m.graph();
  auto const&     rg = ex.reference->graph();
  std::mt19937_64 rng(6);
  for (int i = 0; i < 30; ++i) {
    GroupWord w = random_reference_word(*ex.reference, rng, 8);
    GroupWord h = random_reference_word(*ex.reference, rng, 4);
    auto c   = cyclic_reduce(g, m.from_reference(w)).first;
    if (c.is_elliptic()) {
      continue;
    }
    auto hw  = multiply(rg, multiply(rg, h, w), inverse(rg, h));
    auto ch  = cyclic_reduce(g, m.from_reference(hw)).first;
    auto c2  = cyclic_power(g, c, 2);
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices()); ++v) {
      auto a = whitehead_graph(g, std::vector<CyclicWord>{c}, v);
      auto b = whitehead_graph(g, std::vector<CyclicWord>{ch}, v);
      auto d = whitehead_graph(g, std::vector<CyclicWord>{c2}, v);
      std::sort(a.edges.begin(), a.edges.end());
      std::sort(b.edges.begin(), b.edges.end());
      std::sort(d.edges.begin(), d.edges.end());
      a.edges.erase(std::unique(a.edges.begin(), a.edges.end()), a.edges.end());
      b.edges.erase(std::unique(b.edges.begin(), b.edges.end()), b.edges.end());
      d.edges.erase(std::unique(d.edges.begin(), d.edges.end()), d.edges.end());
      CHECK(a.edges == b.edges);
      CHECK(a.edges == d.edges);
    }
  }
}

TEST_CASE("nonsimplicity certificates") {
  auto        ex = traintrack_example();
  auto const& m  = ex.f.domain;
  auto const& g  = m.graph();
  GroupWord   legal = to_loop(
      g, iterate_tighten(ex.f, cyclic_reduce(g, parse_word(g, std::string("ea"))).first, 6));
  // Wh of the legal axis alone has the cut vertex ee:0 at v; adding ea
  // joins the ea' directions to the rest.
  CHECK_FALSE(nonsimplicity_certificate(m, {legal}).has_value());
  CHECK(nonsimplicity_certificate(m, {legal, parse_word(g, std::string("ea'"))}).has_value());
  CHECK_FALSE(nonsimplicity_certificate(m, {parse_word(g, std::string("ea"))}).has_value());

  // two candidates that avoid the edge ef: the ef directions are isolated
  std::vector<GroupWord> avoid;
  for (auto const& c : enumerate_candidates(m).candidates) {
    if (c.crossings[static_cast<size_t>(g.edge_index("ef")) / 2] == 0) {
      avoid.push_back(to_loop(g, c.word));
    }
    if (avoid.size() == 2) {
      break;
    }
  }
  REQUIRE(avoid.size() == 2);
  CHECK_FALSE(nonsimplicity_certificate(m, avoid).has_value());
}
