#include <random>

#include "doctest.h"
#include "gbs/examples.hpp"
#include "gbs/lipschitz.hpp"
#include "oracles.hpp"

using namespace gbs;

namespace {

  std::vector<PresentationPtr> bundled() {
    return {bs24(), rose(), traintrack_example().reference,
            traintrack_example().f.domain.presentation};
  }

}  // namespace

TEST_CASE("BS(2,4) relation") {
  auto        pres = bs24();
  auto const& g = pres->graph();
  GroupWord   w = britton_reduce(g, parse_word(g, std::string("t a^2 t'")));
  CHECK(w == GroupWord::syllable(g.vertex_index("a"), 4));
  CHECK(britton_reduce(g, GroupWord(0)) == GroupWord(0));
}

TEST_CASE("britton_reduce agrees with the rewriting oracle") {
  std::mt19937_64 rng(11);
  for (auto const& p : bundled()) {
    GbsGraph const& g = p->graph();
    for (int i = 0; i < 2000; ++i) {
      GroupWord w  = oracle::random_path_word(g, rng);
      GroupWord nf = britton_reduce(g, w);
      REQUIRE(nf == oracle::naive_normal_form(g, w, rng));
      CHECK(britton_reduce(g, nf) == nf);
      CHECK(is_reduced(g, nf));
    }
  }
}

TEST_CASE("cyclic_reduce") {
  auto        pres = bs24();
  auto const& g = pres->graph();
  GroupWord   w = parse_word(g, std::string("a^1 t a^-1"));
  auto [c, p]   = cyclic_reduce(g, w);
  REQUIRE(c.size() == 1);
  CHECK(c.edges[0] == g.edge_index("t"));
  GroupWord back = multiply(g, multiply(g, p, to_loop(g, c)), inverse(g, p));
  CHECK(back == britton_reduce(g, w));

  auto [c2, p2] = cyclic_reduce(g, parse_word(g, std::string("t")));
  CHECK(p2.is_trivial());
  CHECK(c2.size() == 1);

  auto [c3, p3] = cyclic_reduce(g, parse_word(g, std::string("t a^2 t'")));
  CHECK(c3.is_elliptic());
  CHECK(c3.syllables[0] == 4);
}

TEST_CASE("cyclic_reduce re-multiplies to the input") {
  std::mt19937_64 rng(5);
  for (auto const& p : bundled()) {
    GbsGraph const& g = p->graph();
    for (int i = 0; i < 300; ++i) {
      GroupWord w = oracle::random_path_word(g, rng);
      if (w.end(g) != w.start) {
        continue;
      }
      auto [c, q] = cyclic_reduce(g, w);
      GroupWord loop = to_loop(g, c);
      if (c.is_elliptic()) {
        loop = GroupWord::syllable(c.vertex, c.syllables[0]);
      }
      CHECK(multiply(g, multiply(g, q, loop), inverse(g, q)) == britton_reduce(g, w));
    }
  }
}

TEST_CASE("translation lengths in BS(2,4)") {
  auto        m = MarkedGraph::reference_point(bs24());
  auto const& g = m.graph();
  CHECK(translation_length(m, parse_word(g, std::string("a^1"))) == 0);
  CHECK(translation_length(m, parse_word(g, std::string("t"))) == 1);
  GbsGraph h = g;
  h.scale_lengths(3);
  auto m3 = m.with_lengths(h);
  auto n3 = normalize_volume(m3);
  CHECK(translation_length(n3, parse_word(g, std::string("t a^1 t"))) == doctest::Approx(2.0));
}

TEST_CASE("axis turns") {
  auto        m = MarkedGraph::reference_point(bs24());
  auto const& g = m.graph();
  GroupWord   t = parse_word(g, std::string("t"));
  auto        ts = axis_turns(m, t);
  REQUIRE(ts.size() == 1);
  CHECK(ts[0] == make_turn(g, make_direction(g, g.edge_index("t'"), 0),
                           make_direction(g, g.edge_index("t"), 0)));

  std::mt19937_64 rng(2);
  auto            r = MarkedGraph::reference_point(rose());
  for (int i = 0; i < 100; ++i) {
    GroupWord w = random_reference_word(*r.reference, rng);
    if (translation_length(r, w) == 0) {
      continue;
    }
    GroupWord h  = random_reference_word(*r.reference, rng);
    GroupWord hw = multiply(r.graph(), multiply(r.graph(), h, w), inverse(r.graph(), h));
    CHECK(axis_turns(r, w) == axis_turns(r, hw));
    auto once  = axis_turns(r, w);
    auto twice = axis_turns(r, multiply(r.graph(), w, w));
    std::vector<TurnKey> doubled;
    for (auto const& k : once) {
      doubled.push_back(k);
      doubled.push_back(k);
    }
    std::sort(doubled.begin(), doubled.end());
    CHECK(twice == doubled);
  }
}

TEST_CASE("substitutions of the train track example") {
  auto        ex = traintrack_example();
  auto const& g  = ex.reference->graph();
  CHECK(apply_substitution(ex.phi, parse_word(g, std::string("r")))
        == parse_word(g, std::string("s")));
  auto            id = Substitution::identity(ex.reference);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    GroupWord w = random_reference_word(*ex.reference, rng);
    CHECK(apply_substitution(id, w) == britton_reduce(g, w));
    CHECK(apply_substitution(ex.phi_inverse, apply_substitution(ex.phi, w))
          == britton_reduce(g, w));
    CHECK(apply_substitution(ex.phi, apply_substitution(ex.phi_inverse, w))
          == britton_reduce(g, w));
  }
}

TEST_CASE("length identities") {
  auto            ex = traintrack_example();
  auto const&     m  = ex.f.domain;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    GroupWord w = random_reference_word(*ex.reference, rng);
    GroupWord h = random_reference_word(*ex.reference, rng);
    auto const& rg = ex.reference->graph();
    double    l = translation_length_ref(m, w);
    GroupWord hw = multiply(rg, multiply(rg, h, w), inverse(rg, h));
    CHECK(translation_length_ref(m, hw) == doctest::Approx(l));
    CHECK(translation_length_ref(m, multiply(rg, multiply(rg, w, w), w))
          == doctest::Approx(3 * l));
    CHECK(translation_length_ref(m, inverse(rg, w)) == doctest::Approx(l));
    // ellipticity is invariant under phi
    CHECK((translation_length_ref(m, apply_substitution(ex.phi, w)) == 0) == (l == 0));
  }
}
