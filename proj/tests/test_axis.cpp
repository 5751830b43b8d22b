#include <cmath>

#include "doctest.h"
#include "gbs/axis.hpp"
#include "gbs/examples.hpp"
#include "gbs/moves.hpp"

using namespace gbs;

namespace {

  struct Fixture {
    TrainTrackExample      ex = traintrack_example();
    Axis                   ax{ex.f, ex.f_minus, config()};
    std::vector<GroupWord> sample;

    static AxisConfig config() {
      AxisConfig c;
      c.workers = 1;
      return c;
    }

    Fixture() {
      sample = ax.sample_elements(50, 11);
      ax.set_epsilon0(ax.estimate_epsilon0(ax.sample_elements(200, 3)).epsilon0);
    }
  };

  Fixture& fixture() {
    static Fixture f;
    return f;
  }

  MarkedGraph twist(MarkedGraph m, TrainTrackExample const& ex, int k) {
    for (int i = 0; i < std::abs(k); ++i) {
      m = k > 0 ? m.twisted(ex.phi, ex.phi_inverse) : m.twisted(ex.phi_inverse, ex.phi);
    }
    return m;
  }

  // Reference element whose axis in T is the closed legal word f^n(ea).
  GroupWord legal_element(TrainTrackExample const& ex, size_t n) {
    auto const& m = ex.f.domain;
    auto const& g = m.graph();
    CyclicWord  c = iterate_tighten(
        ex.f, cyclic_reduce(g, parse_word(g, std::string("ea"))).first, n);
    GroupWord loop = to_loop(g, c);
    GroupWord p    = m.presentation->tree_path(loop.start);
    return m.to_reference(multiply(g, multiply(g, p, loop), inverse(g, p)));
  }

}  // namespace

TEST_CASE("lengths along the axis are lengths of iterates") {
  auto& fx = fixture();
  for (size_t i = 0; i < 10; ++i) {
    Orbit o = fx.ax.orbit(fx.sample[i]);
    for (int n = -3; n <= 3; ++n) {
      MarkedGraph tn = twist(fx.ex.f.domain, fx.ex, n);
      CHECK(fx.ax.step_length(o, n)
            == doctest::Approx(translation_length_ref(tn, fx.sample[i])).epsilon(1e-9));
    }
  }
}

TEST_CASE("legal elements") {
  auto&     fx = fixture();
  GroupWord g  = legal_element(fx.ex, 4);
  Orbit     o  = fx.ax.orbit(g);
  CHECK(fx.ax.leg_plus(o, 0) == 1.0);
  CHECK(fx.ax.legality_exponents(o).k_plus <= 0);
  auto e = fx.ax.estimate_epsilon0({g});
  CHECK(e.epsilon0 == 1.0);
}

TEST_CASE("epsilon0 estimate") {
  auto& fx = fixture();
  CHECK(fx.ax.epsilon0() > 0);
  double prev = 1.0;
  for (size_t n : {5u, 20u, 50u}) {
    std::vector<GroupWord> part(fx.sample.begin(), fx.sample.begin() + static_cast<long>(n));
    double e = fx.ax.estimate_epsilon0(part).epsilon0;
    CHECK(e <= prev + 1e-12);
    prev = e;
  }
  auto e = fx.ax.estimate_epsilon0(fx.ax.sample_elements(200, 3));
  CHECK(e.epsilon0 > 0);
  CHECK(e.n <= 6);
}

TEST_CASE("exponents, growth and low legality in the past") {
  auto&  fx = fixture();
  int    n  = 0;
  int    mm = 0;
  double eps = fx.ax.epsilon0();
  for (auto const& g : fx.sample) {
    Orbit o  = fx.ax.orbit(g);
    auto  le = fx.ax.legality_exponents(o);
    n        = std::max(n, std::abs(le.k_plus - le.k_minus));
    // ||phi^m(phi^k g)|| > ||phi^k g|| for m >= 1 once legal
    double base = fx.ax.step_length(o, le.k_plus);
    int    M    = 1;
    for (int m = 1; m <= 6; ++m) {
      if (fx.ax.step_length(o, le.k_plus + m) <= base) {
        M = m + 1;
      }
    }
    mm = std::max(mm, M);
    // LEG_f(phi^-m g) < eps0 for all m >= m_g inside the window
    int last_high = 0;
    for (int m = 0; m <= 8; ++m) {
      if (fx.ax.leg_plus(o, -m) >= eps) {
        last_high = m;
      }
    }
    CHECK(last_high < 8);
    // pseudo-atoroidality
    double prev = 0;
    for (int k = 4; k <= 8; ++k) {
      double s = fx.ax.step_length(o, k) + fx.ax.step_length(o, -k);
      CHECK(s > prev);
      prev = s;
    }
  }
  MESSAGE("N = " << n << ", M = " << mm);
  CHECK(n <= 10);
  CHECK(mm <= 6);
}

TEST_CASE("Theta of elements stays near t0") {
  auto&  fx = fixture();
  double s  = 0;
  for (auto const& g : fx.sample) {
    Orbit o  = fx.ax.orbit(g);
    auto  le = fx.ax.legality_exponents(o);
    auto  th = fx.ax.theta_of_element(o);
    for (double t : th.minimizers) {
      s = std::max(s, std::abs(t - le.t0));
    }
  }
  MESSAGE("s = " << s);
  CHECK(s <= 6 * fx.ax.log_lambda());
}

TEST_CASE("t0 of candidates of a tree are close") {
  auto&  fx = fixture();
  double s2 = 0;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    auto   x  = random_deform(fx.ex.f.domain, 6, seed);
    double lo = 1e300, hi = -1e300;
    for (auto const& c : enumerate_candidates(x).candidates) {
      Orbit o = fx.ax.orbit(c.reference);
      double t = fx.ax.legality_exponents(o).t0;
      lo       = std::min(lo, t);
      hi       = std::max(hi, t);
    }
    s2 = std::max(s2, hi - lo);
  }
  MESSAGE("s'' = " << s2);
  CHECK(s2 < 24 * fx.ax.log_lambda());
}

TEST_CASE("simple pairs have close t0") {
  // pairs of candidates of T avoiding a common edge orbit
  auto&       fx = fixture();
  auto const& g  = fx.ex.f.graph();
  auto        cs = enumerate_candidates(fx.ex.f.domain).candidates;
  double      s1 = 0;
  size_t      pairs = 0;
  for (size_t i = 0; i < cs.size(); ++i) {
    for (size_t j = i + 1; j < cs.size(); ++j) {
      bool share = false;
      for (size_t e = 0; e < g.number_of_unoriented_edges(); ++e) {
        share = share || (cs[i].crossings[e] == 0 && cs[j].crossings[e] == 0);
      }
      if (!share) {
        continue;
      }
      Orbit a = fx.ax.orbit(cs[i].reference);
      Orbit b = fx.ax.orbit(cs[j].reference);
      s1      = std::max(s1, std::abs(fx.ax.legality_exponents(a).t0
                                      - fx.ax.legality_exponents(b).t0));
      ++pairs;
    }
  }
  MESSAGE("s' = " << s1 << " over " << pairs << " pairs");
  CHECK(pairs > 0);
  CHECK(s1 < 24 * fx.ax.log_lambda());
}

TEST_CASE("projection of axis points") {
  auto& fx = fixture();
  for (int k = -2; k <= 2; ++k) {
    auto p = fx.ax.project_tree(twist(fx.ex.f.domain, fx.ex, k));
    CHECK(std::abs(p.t - k * fx.ax.log_lambda()) <= fx.ax.delta() + 1e-9);
    CHECK(std::abs(p.distance) < 1e-9);
  }
  double s = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto p = fx.ax.project_tree(random_deform(fx.ex.f.domain, 6, seed));
    CHECK(p.distance >= -1e-9);
    s = std::max(s, p.diameter);
  }
  MESSAGE("diam Theta_X <= " << s);
  CHECK(s <= 6 * fx.ax.log_lambda());
}

TEST_CASE("axis distance between grid points") {
  auto& fx = fixture();
  CHECK(fx.ax.axis_distance(0, 0) == doctest::Approx(0.0));
  CHECK(fx.ax.axis_distance(0, 8) == doctest::Approx(fx.ax.log_lambda()));
  CHECK(fx.ax.axis_distance(16, 24) == doctest::Approx(fx.ax.log_lambda()));
}

TEST_CASE("sandwich fit") {
  auto& fx  = fixture();
  auto  fit = fx.ax.sandwich_fit(fx.sample);
  MESSAGE("C = " << fit.c);
  CHECK(fit.c <= 1000);
  CHECK(fit.log_residuals.size() == fx.sample.size());
}

TEST_CASE("contraction experiment is deterministic") {
  auto& fx = fixture();
  auto  a  = fx.ax.contraction_experiment(6, 3);
  auto  b  = fx.ax.contraction_experiment(6, 3);
  REQUIRE(a.balls.size() == b.balls.size());
  CHECK(a.c1 == b.c1);
  CHECK(a.c2 == b.c2);
  for (size_t i = 0; i < a.balls.size(); ++i) {
    CHECK(a.balls[i].diameter == b.balls[i].diameter);
    CHECK(a.balls[i].radius < a.balls[i].axis_distance);
    CHECK(a.balls[i].diameter >= 0);
  }
}

TEST_CASE("windows are never clamped silently") {
  auto&      fx  = fixture();
  AxisConfig cfg = Fixture::config();
  cfg.k_min      = -1;
  cfg.k_max      = 1;
  cfg.epsilon0   = 1.0;
  Axis  small(fx.ex.f, fx.ex.f_minus, cfg);
  Orbit o = small.orbit(fx.sample[0]);
  CHECK_THROWS_AS(small.step_length(o, 2), DomainError);
}
