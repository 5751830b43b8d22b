// Acceptance criteria: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "gbs/axis.hpp"
#include "gbs/examples.hpp"
#include "gbs/lamination.hpp"
#include "gbs/lipschitz.hpp"
#include "gbs/moves.hpp"
#include "gbs/whitehead.hpp"
#include "oracles.hpp"

using namespace gbs;

namespace {

  using Clock = std::chrono::steady_clock;

  double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
  }

  int failures = 0;

  void report(int n, bool ok, std::string const& what, std::string const& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << " ("
              << detail << ")" << std::endl;
    if (!ok) {
      ++failures;
    }
  }

  template <typename F>
  void run(int n, std::string const& what, F&& body) {
    std::ostringstream detail;
    bool               ok = false;
    try {
      ok = body(detail);
    } catch (std::exception const& e) {
      detail << "exception: " << e.what();
    }
    report(n, ok, what, detail.str());
  }

  MarkedGraph twist(MarkedGraph m, TrainTrackExample const& ex, int k) {
    for (int i = 0; i < std::abs(k); ++i) {
      m = k > 0 ? m.twisted(ex.phi, ex.phi_inverse) : m.twisted(ex.phi_inverse, ex.phi);
    }
    return m;
  }

}  // namespace

int main() {
  TrainTrackExample const ex = traintrack_example();
  GbsGraph const&         g  = ex.f.graph();

  run(1, "train track certification", [&](std::ostream& d) {
    auto t0 = Clock::now();
    auto e  = traintrack_example();
    bool ok = true;
    for (auto const* tt : {&e.f, &e.f_minus}) {
      GateStructure gs(*tt);
      ok = ok && gates_and_legality(*tt, gs).train_track;
    }
    GateStructure gs(e.f);
    auto const&   eg    = e.f.graph();
    TurnKey       start = make_turn(eg, make_direction(eg, eg.edge_index("ea'"), 0),
                                    make_direction(eg, eg.edge_index("ee"), 0));
    TurnKey       ea_ee = make_turn(eg, make_direction(eg, eg.edge_index("ea"), 0),
                                    make_direction(eg, eg.edge_index("ee"), 0));
    auto tr = turn_orbit_trace(gs, start);
    bool legal = true;
    for (auto const& t : tr.turns) {
      legal = legal && gs.is_legal(t);
    }
    double secs = seconds_since(t0);
    d << "both maps train tracks: " << ok << ", trace length " << tr.turns.size() - 1
      << " steps, re-entry at step " << tr.reentry << " on {ea,ee}: "
      << (tr.turns[tr.reentry] == ea_ee) << ", all legal: " << legal << ", " << secs << " s";
    return ok && tr.turns.size() == 6 && tr.reentry == 2 && tr.turns[2] == ea_ee && legal
           && secs < 1.0;
  });

  run(2, "PF metric", [&](std::ostream& d) {
    // counted from the printed edge images; row i, column j: e_i in f(e_j)
    Matrix counted{{0, 1, 0, 0}, {0, 1, 1, 0}, {1, 2, 0, 1}, {1, 2, 0, 0}};
    PfResult pf = pf_metric(ex.f);
    double   res = 0;
    for (size_t j = 0; j < 4; ++j) {
      double s = 0;
      for (size_t i = 0; i < 4; ++i) {
        s += static_cast<double>(counted[i][j]) * pf.lengths[i];
      }
      res = std::max(res, std::abs(s - pf.lambda * pf.lengths[j]));
    }
    double rel = 0;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); e += 2) {
      double img = path_length(g, ex.f.image(GroupWord::letter(g, e)));
      rel        = std::max(rel, std::abs(img - pf.lambda * g.length(e)) / img);
    }
    double eig = oracle::spectral_radius(counted);
    d << "lambda " << pf.lambda << ", eigensolver " << eig << ", residual " << res
      << ", max relative edge error " << rel;
    return pf.matrix == counted && res <= 1e-9 && rel <= 1e-9
           && std::abs(eig - pf.lambda) <= 1e-9;
  });

  run(3, "legal growth", [&](std::ostream& d) {
    GateStructure gs(ex.f);
    Constants     c      = cancellation_constants(ex.f, gs, pf_metric(ex.f).lambda);
    double        lambda = c.lambda;
    std::mt19937_64            rng(31);
    std::set<std::vector<Int>> seen;
    std::vector<CyclicWord>    legal;
    while (legal.size() < 20) {
      GroupWord  w  = random_reference_word(*ex.reference, rng, 6);
      CyclicWord cw = cyclic_reduce(g, ex.f.domain.from_reference(w)).first;
      if (cw.is_elliptic()) {
        continue;
      }
      for (int k = 0; k < 6 && illegal_turn_count(g, gs, cw) > 0; ++k) {
        cw = ex.f.image(cw);
      }
      if (illegal_turn_count(g, gs, cw) == 0 && seen.insert(conjugacy_key(g, cw)).second) {
        legal.push_back(cw);
      }
    }
    double worst = 0;
    for (auto cw : legal) {
      double l0 = cyclic_length(g, cw);
      for (int n = 1; n <= 10; ++n) {
        cw    = ex.f.image(cw);
        worst = std::max(worst, std::abs(cyclic_length(g, cw) / (std::pow(lambda, n) * l0) - 1));
      }
    }
    size_t tested = 0, violations = 0;
    while (tested < 50) {
      GroupWord  w  = random_reference_word(*ex.reference, rng, 10);
      CyclicWord cw = cyclic_reduce(g, ex.f.domain.from_reference(w)).first;
      if (cw.is_elliptic()) {
        continue;
      }
      double eps = legality_ratio(g, gs, c.kappa, cw);
      if (eps <= 0) {
        continue;
      }
      ++tested;
      double l0 = cyclic_length(g, cw);
      for (int n = 1; n <= 10; ++n) {
        cw = ex.f.image(cw);
        if (cyclic_length(g, cw) < eps / 2 * std::pow(lambda, n) * l0 * (1 - 1e-12)) {
          ++violations;
        }
      }
    }
    d << "20 legal words, max relative error " << worst << "; 50 words with LEG > 0, "
      << violations << " violations";
    return worst <= 1e-6 && violations == 0;
  });

  run(4, "normal form oracle equivalence", [&](std::ostream& d) {
    std::mt19937_64 rng(4);
    size_t          agree = 0, total = 0;
    for (auto const& p : {bs24(), rose(), ex.reference, ex.f.domain.presentation}) {
      for (int i = 0; i < 10000; ++i) {
        GroupWord w = oracle::random_path_word(p->graph(), rng, 12);
        ++total;
        if (britton_reduce(p->graph(), w) == oracle::naive_normal_form(p->graph(), w, rng)) {
          ++agree;
        }
      }
    }
    d << agree << "/" << total << " agree";
    return agree == total;
  });

  run(5, "metric axioms", [&](std::ostream& d) {
    double min_d = 1e300, worst = -1e300;
    for (uint64_t s = 0; s < 50; ++s) {
      auto   a  = random_deform(ex.f.domain, 6, 1000 + 3 * s);
      auto   b  = random_deform(ex.f.domain, 6, 1001 + 3 * s);
      auto   c  = random_deform(ex.f.domain, 6, 1002 + 3 * s);
      double ab = lipschitz_distance(a, b).d_lip;
      double bc = lipschitz_distance(b, c).d_lip;
      double ac = lipschitz_distance(a, c).d_lip;
      min_d     = std::min({min_d, ab, bc, ac});
      worst     = std::max(worst, ac - ab - bc);
    }
    double dphi = lipschitz_distance(ex.f.domain, twist(ex.f.domain, ex, 1)).d_lip;
    double err  = std::abs(dphi - std::log(pf_metric(ex.f).lambda));
    d << "min d_lip " << min_d << ", max triangle excess " << worst << ", |d(T,T.phi) - log lambda| "
      << err;
    return min_d >= -1e-9 && worst <= 1e-9 && err <= 1e-9;
  });

  run(6, "candidate supremacy", [&](std::ostream& d) {
    double worst = -1e300;
    for (uint64_t s = 0; s < 20; ++s) {
      auto   x   = random_deform(ex.f.domain, 5, 2000 + s);
      int    k   = static_cast<int>(s % 5) - 2;
      auto   y   = twist(x, ex, k == 0 ? 1 : k);
      double lip = lipschitz_distance(x, y).lip;
      worst      = std::max(worst, sup_check_random(x, y, 1000, 3000 + s) - lip);
    }
    d << "max (sampled sup - candidate max) " << worst;
    return worst <= 1e-9;
  });

  run(7, "illegal turn monotonicity", [&](std::ostream& d) {
    GateStructure   gs(ex.f);
    std::mt19937_64 rng(7);
    size_t          tested = 0, violations = 0;
    while (tested < 200) {
      GroupWord w = britton_reduce(g, oracle::random_path_word(g, rng, 12, 3));
      if (w.edges.empty()) {
        continue;
      }
      ++tested;
      if (illegal_turn_count(g, gs, ex.f.image(w)) > illegal_turn_count(g, gs, w)) {
        ++violations;
      }
    }
    d << tested << " paths, " << violations << " violations";
    return violations == 0;
  });

  run(8, "Whitehead graphs of the attracting lamination", [&](std::ostream& d) {
    LeafLibrary lib(ex.f, 8);
    bool        ok = true;
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices()); ++v) {
      auto w  = whitehead_graph(g, lib.turns(), v);
      auto ca = cut_analysis(w);
      auto bf = oracle::brute_force_cuts(w.nodes.size(), w.edges);
      ok      = ok && ca.connected && bf.connected;
      d << g.vertex_name(v) << ": " << w.nodes.size() << " directions, " << w.edges.size()
        << " edges, connected " << ca.connected << "; ";
    }
    return ok;
  });

  AxisConfig cfg;
  cfg.seed = 1;
  Axis ax(ex.f, ex.f_minus, cfg);

  run(9, "exponent coherence", [&](std::ostream& d) {
    auto e = ax.estimate_epsilon0(ax.sample_elements(200, 1));
    if (e.epsilon0 <= 0) {
      d << "epsilon0 estimate is 0";
      return false;
    }
    ax.set_epsilon0(e.epsilon0);
    int n = 0;
    for (auto const& w : ax.sample_elements(50, 2)) {
      Orbit o  = ax.orbit(w);
      auto  le = ax.legality_exponents(o);
      n        = std::max(n, std::abs(le.k_plus - le.k_minus));
    }
    d << "epsilon0 " << e.epsilon0 << " at N = " << e.n << ", max |k_plus - k_minus| = " << n;
    return e.n <= 6 && n <= 10;
  });

  run(10, "sandwich fit", [&](std::ostream& d) {
    auto   fit   = ax.sandwich_fit(ax.sample_elements(50, 2));
    double worst = 0;
    for (double r : fit.log_residuals) {
      worst = std::max(worst, r);
    }
    d << "C = " << fit.c << ", max |log residual| " << worst << " over "
      << fit.log_residuals.size() << " elements";
    return fit.c <= 1000 && fit.log_residuals.size() == 50;
  });

  run(11, "contraction report", [&](std::ostream& d) {
    auto t0   = Clock::now();
    auto a    = ax.contraction_experiment(200, 4);
    auto b    = ax.contraction_experiment(200, 4);
    double secs = seconds_since(t0) / 2;
    bool same = a.balls.size() == b.balls.size() && a.c1 == b.c1 && a.c2 == b.c2;
    for (size_t i = 0; same && i < a.balls.size(); ++i) {
      same = a.balls[i].diameter == b.balls[i].diameter && a.balls[i].radius == b.balls[i].radius;
    }
    bool disjoint = true;
    double max_diam = 0;
    for (auto const& r : a.balls) {
      disjoint = disjoint && r.radius < r.axis_distance;
      max_diam = std::max(max_diam, r.diameter);
    }
    d << a.balls.size() << " balls, deterministic " << same << ", " << secs
      << " s per run, c1 = " << a.c1 << ", c2 = " << a.c2 << ", max projected diameter "
      << max_diam;
    return a.balls.size() >= 200 && same && disjoint && secs < 600
           && std::isfinite(a.c1) && std::isfinite(a.c2);
  });

  return failures == 0 ? 0 : 1;
}
