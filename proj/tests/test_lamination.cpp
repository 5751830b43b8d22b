#include <cmath>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "gbs/axis.hpp"
#include "gbs/examples.hpp"
#include "gbs/lamination.hpp"
#include "gbs/lipschitz.hpp"
#include "oracles.hpp"

using namespace gbs;

namespace {

  struct Fixture {
    TrainTrackExample ex  = traintrack_example();
    LeafLibrary       lib = LeafLibrary(ex.f, 6);
  };

  Fixture const& fixture() {
    static Fixture f;
    return f;
  }

  double min_edge(GbsGraph const& g) {
    double m = 1e300;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); ++e) {
      m = std::min(m, g.length(e));
    }
    return m;
  }

}  // namespace

TEST_CASE("generations 0 and 1") {
  auto const& fx  = fixture();
  auto const& g   = fx.ex.f.graph();
  auto const& gen0 = fx.lib.generation(0);
  for (size_t i = 0; i < gen0.size(); ++i) {
    CHECK(gen0[i] == GroupWord::letter(g, static_cast<EdgeId>(2 * i)));
  }
  GroupWord ee1 = fx.lib.generation(1)[static_cast<size_t>(g.edge_index("ee")) / 2];
  CHECK(ee1.edges == std::vector<EdgeId>{g.edge_index("eb")});
}

TEST_CASE("later generations contain the earlier ones") {
  auto const& fx = fixture();
  for (auto const& w : fx.lib.generation(1)) {
    auto needle = fx.lib.path_code(w);
    bool found  = false;
    for (auto const& big : fx.lib.generation(3)) {
      found = found || oracle::contains_subsequence(fx.lib.path_code(big), needle);
      auto rev = fx.lib.path_code(inverse(fx.ex.f.graph(), big));
      found    = found || oracle::contains_subsequence(rev, needle);
    }
    CHECK(found);
    CHECK(fx.lib.contains(w));
  }
  CHECK(fx.lib.quasi_periodic(3, 1));
}

TEST_CASE("pieces on legal axes") {
  auto const& fx = fixture();
  auto const& g  = fx.ex.f.graph();
  double      lambda = pf_metric(fx.ex.f).lambda;
  CyclicWord  ax = iterate_tighten(
      fx.ex.f, cyclic_reduce(g, parse_word(g, std::string("ea"))).first, 4);
  double L = std::pow(lambda, 2) * min_edge(g);
  CHECK_FALSE(detect_pieces(ax, fx.lib, L).empty());
  CHECK(lamination_ratio(ax, fx.lib, L) == doctest::Approx(1.0));

  auto   all     = detect_pieces(ax, fx.lib, 0);
  size_t covered = 0;
  for (auto const& p : all) {
    covered += p.edges;
  }
  CHECK(covered == ax.size());
}

TEST_CASE("pieces negative control and monotonicity") {
  auto const&     fx = fixture();
  auto const&     g  = fx.ex.f.graph();
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    GroupWord  w = random_reference_word(*fx.ex.reference, rng, 8);
    CyclicWord c = cyclic_reduce(g, fx.ex.f.domain.from_reference(w)).first;
    if (c.is_elliptic()) {
      continue;
    }
    double len = cyclic_length(g, c);
    CHECK(detect_pieces(c, fx.lib, len + 1).empty());
    CHECK(lamination_ratio(c, fx.lib, len + 1) == 0);
    double prev = 1.0;
    for (double L : {0.0, 0.1, 0.3, 0.6, 1.0, 2.0}) {
      double r = lamination_ratio(c, fx.lib, L);
      CHECK(r <= prev + 1e-12);
      prev = r;
    }
  }
}

TEST_CASE("cache round trip") {
  auto const& fx   = fixture();
  std::string path = "lamination_cache_test.bin";
  fx.lib.save(path, map_hash(fx.ex.f));
  auto back = LeafLibrary::load(path, fx.ex.f.graph(), map_hash(fx.ex.f));
  CHECK(back.generation(6) == fx.lib.generation(6));
  CHECK_THROWS_AS(LeafLibrary::load(path, fx.ex.f.graph(), map_hash(fx.ex.f) + 1), DomainError);
  std::remove(path.c_str());
}

TEST_CASE("lamination ratio of forward iterates") {
  auto const& fx = fixture();
  auto const& g  = fx.ex.f.graph();
  AxisConfig  cfg;
  cfg.workers = 1;
  Axis   ax(fx.ex.f, fx.ex.f_minus, cfg);
  auto   sample = ax.sample_elements(30, 5);
  double eps    = ax.estimate_epsilon0(sample).epsilon0;
  double L      = 1.0;
  int    n1     = 0;
  for (auto const& w : sample) {
    CyclicWord c = cyclic_reduce(g, fx.ex.f.domain.from_reference(w)).first;
    int        n = 0;
    while (lamination_ratio(c, fx.lib, L) <= eps / 4) {
      REQUIRE(n < 8);
      c = fx.ex.f.image(c);
      ++n;
    }
    // once above the threshold it stays there
    for (int k = 0; k < 3; ++k) {
      c = fx.ex.f.image(c);
      CHECK(lamination_ratio(c, fx.lib, L) > eps / 4);
    }
    n1 = std::max(n1, n);
  }
  MESSAGE("N1(L=1) = " << n1);
}

TEST_CASE("the two laminations share only short segments") {
  auto const& fx = fixture();
  auto const& g  = fx.ex.f.graph();
  LeafLibrary minus(fx.ex.f_minus, 6);
  auto        h = morphism_from_substitution(transport(fx.ex.f_minus.domain, fx.ex.f.domain));
  LeafLibrary minus_t(g, transport_leaves(minus, h, g, 2));
  double      common = fx.lib.longest_common_segment(minus_t);
  MESSAGE("longest common segment = " << common);
  CHECK(common < 2.0);
}
