#include "gbs/axis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include "gbs/moves.hpp"

namespace gbs {

  namespace {

    int floor_div(int a, int b) {
      int q = a / b;
      return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
    }

    double min_edge_length(GbsGraph const& g) {
      double m = std::numeric_limits<double>::infinity();
      for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); e += 2) {
        m = std::min(m, g.length(e));
      }
      return m;
    }

    uint64_t mix(uint64_t a, uint64_t b) {
      uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
      z          = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z          = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      return z ^ (z >> 31);
    }

    // Per-candidate data for distances from a tree X to points of the axis.
    struct TreeData {
      std::vector<Orbit>  orbits;
      std::vector<double> own_lengths;
      double              log_vol;
    };

  }  // namespace

  void parallel_for(size_t n, unsigned workers, std::function<void(size_t)> const& fn) {
    if (workers == 0) {
      workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<size_t>(workers, n));
    if (workers <= 1) {
      for (size_t i = 0; i < n; ++i) {
        fn(i);
      }
      return;
    }
    std::atomic<size_t>      next{0};
    std::exception_ptr       error;
    std::mutex               error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) {
              error = std::current_exception();
            }
          }
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    if (error) {
      std::rethrow_exception(error);
    }
  }

  Axis::Axis(TrainTrackMap f, TrainTrackMap f_minus, AxisConfig cfg)
      : _f(std::move(f)),
        _fm(std::move(f_minus)),
        _cfg(cfg),
        _gates_plus(_f),
        _gates_minus(_fm) {
    if (_cfg.grid_per_step < 1 || _cfg.k_min > 0 || _cfg.k_max < 0) {
      throw DomainError("invalid axis configuration");
    }
    PfResult pp = pf_metric(_f);
    PfResult pm = pf_metric(_fm);
    if (pp.lambda <= 1 || pm.lambda <= 1) {
      throw DomainError("stretch factors must exceed 1");
    }
    _plus       = cancellation_constants(_f, _gates_plus, pp.lambda);
    _minus      = cancellation_constants(_fm, _gates_minus, pm.lambda);
    _log_lambda = std::log(_plus.lambda);
    _to_t       = morphism_from_substitution(transport(_fm.domain, _f.domain));
    _to_tminus  = morphism_from_substitution(transport(_f.domain, _fm.domain));
    _t_candidates = enumerate_candidates(_f.domain);
  }

  void Axis::check_size(CyclicWord const& c) const {
    if (c.size() > _cfg.max_edges) {
      throw DomainError("orbit word exceeds max_edges",
                        {"size " + std::to_string(c.size())});
    }
  }

  Orbit Axis::orbit(GroupWord const& reference_word) const {
    Orbit o;
    o._fwd.push_back(
        cyclic_reduce(_f.graph(), _f.domain.from_reference(reference_word)).first);
    o._bwd.push_back(
        cyclic_reduce(_fm.graph(), _fm.domain.from_reference(reference_word)).first);
    return o;
  }

  CyclicWord Axis::word_in_t(Orbit& o, int k) const {
    if (k < _cfg.k_min || k > _cfg.k_max) {
      throw DomainError("exponent outside the search window",
                        {"k " + std::to_string(k)});
    }
    if (k >= 0) {
      while (static_cast<int>(o._fwd.size()) <= k) {
        o._fwd.push_back(_f.image(o._fwd.back()));
        check_size(o._fwd.back());
      }
      return o._fwd[static_cast<size_t>(k)];
    }
    auto it = o._in_t.find(k);
    if (it != o._in_t.end()) {
      return it->second;
    }
    size_t m = static_cast<size_t>(-k);
    while (o._bwd.size() <= m) {
      o._bwd.push_back(_fm.image(o._bwd.back()));
      check_size(o._bwd.back());
    }
    CyclicWord c = _to_t.apply_cyclic(_fm.graph(), _f.graph(), o._bwd[m]);
    check_size(c);
    return o._in_t.emplace(k, std::move(c)).first->second;
  }

  double Axis::step_length(Orbit& o, int n) const {
    return cyclic_length(_f.graph(), word_in_t(o, n));
  }

  double Axis::grid_length(Orbit& o, int j) const {
    int    n = floor_div(j, _cfg.grid_per_step);
    int    r = j - n * _cfg.grid_per_step;
    double a = step_length(o, n);
    if (r == 0) {
      return a;
    }
    double b = step_length(o, n + 1);
    double s = static_cast<double>(r) / _cfg.grid_per_step;
    return std::exp((1 - s) * std::log(a) + s * std::log(b));
  }

  double Axis::leg_plus(Orbit& o, int k) const {
    return legality_ratio(_f.graph(), _gates_plus, _plus.kappa, word_in_t(o, k));
  }

  double Axis::leg_minus(Orbit& o, int k) const {
    if (k < _cfg.k_min || k > _cfg.k_max) {
      throw DomainError("exponent outside the search window",
                        {"k " + std::to_string(k)});
    }
    CyclicWord const* c;
    if (k <= 0) {
      size_t m = static_cast<size_t>(-k);
      while (o._bwd.size() <= m) {
        o._bwd.push_back(_fm.image(o._bwd.back()));
        check_size(o._bwd.back());
      }
      c = &o._bwd[m];
    } else {
      auto it = o._in_tminus.find(k);
      if (it == o._in_tminus.end()) {
        CyclicWord w = _to_tminus.apply_cyclic(_f.graph(), _fm.graph(), word_in_t(o, k));
        check_size(w);
        it = o._in_tminus.emplace(k, std::move(w)).first;
      }
      c = &it->second;
    }
    return legality_ratio(_fm.graph(), _gates_minus, _minus.kappa, *c);
  }

  double Axis::epsilon0() const {
    if (!_cfg.epsilon0) {
      throw DomainError("epsilon0 is not set");
    }
    return *_cfg.epsilon0;
  }

  LegalityExponents Axis::legality_exponents(Orbit& o) const {
    if (!o.loxodromic()) {
      throw DomainError("element is elliptic");
    }
    double eps  = epsilon0();
    double lmin = min_edge_length(_f.graph());
    double g    = cyclic_length(_f.graph(), o._fwd.front());
    int    m    = static_cast<int>(std::floor(std::log(g / (eps / 2 * lmin)) / _log_lambda));
    int    kp   = std::numeric_limits<int>::min();
    for (int k = std::max(_cfg.k_min, -std::max(m, 0)); k <= _cfg.k_max; ++k) {
      if (leg_plus(o, k) >= eps) {
        kp = k;
        break;
      }
    }
    if (kp == std::numeric_limits<int>::min()) {
      throw DomainError("no legal exponent in the window");
    }
    double lmin_m = min_edge_length(_fm.graph());
    double gm     = cyclic_length(_fm.graph(), o._bwd.front());
    int    mm     = static_cast<int>(
        std::floor(std::log(gm / (eps / 2 * lmin_m)) / std::log(_minus.lambda)));
    int km = std::numeric_limits<int>::max();
    for (int k = std::min(_cfg.k_max, std::max(mm, 0)); k >= _cfg.k_min; --k) {
      if (leg_minus(o, k) >= eps) {
        km = k;
        break;
      }
    }
    if (km == std::numeric_limits<int>::max()) {
      throw DomainError("no legal exponent for the inverse in the window");
    }
    return {kp, km, kp * _log_lambda};
  }

  ThetaResult Axis::theta_of_element(Orbit& o) const {
    LegalityExponents le = legality_exponents(o);
    int               g  = _cfg.grid_per_step;
    int               lo = std::max(_cfg.k_min, le.k_plus - 4) * g;
    int               hi = std::min(_cfg.k_max - 1, le.k_plus + 4) * g;
    while (true) {
      double best = std::numeric_limits<double>::infinity();
      int    arg  = lo;
      for (int j = lo; j <= hi; ++j) {
        double v = grid_length(o, j);
        if (v < best) {
          best = v;
          arg  = j;
        }
      }
      bool extend_lo = arg == lo && lo > _cfg.k_min * g;
      bool extend_hi = arg == hi && hi < (_cfg.k_max - 1) * g;
      if (extend_lo || extend_hi) {
        if (extend_lo) {
          lo = std::max(_cfg.k_min * g, lo - 2 * g);
        }
        if (extend_hi) {
          hi = std::min((_cfg.k_max - 1) * g, hi + 2 * g);
        }
        continue;
      }
      ThetaResult r;
      r.min_length = best;
      for (int j = lo; j <= hi; ++j) {
        if (grid_length(o, j) <= best * (1 + 1e-9)) {
          r.minimizers.push_back(j * delta());
        }
      }
      r.diameter = r.minimizers.back() - r.minimizers.front();
      return r;
    }
  }

  namespace {

    double tree_value(Axis const& ax, TreeData& td, int j) {
      double best = -std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < td.orbits.size(); ++i) {
        double l = ax.grid_length(td.orbits[i], j);
        if (l <= 0) {
          throw DomainError("candidate is elliptic on the axis");
        }
        best = std::max(best, std::log(l / td.own_lengths[i]));
      }
      return best + td.log_vol;
    }

    TreeData tree_data(Axis const& ax, MarkedGraph const& x) {
      CandidateSet cs = enumerate_candidates(x);
      TreeData     td;
      td.log_vol = std::log(x.graph().volume());
      for (auto const& c : cs.candidates) {
        td.orbits.push_back(ax.orbit(c.reference));
        td.own_lengths.push_back(c.length);
      }
      if (td.orbits.empty()) {
        throw DomainError("tree has no candidates");
      }
      return td;
    }

    struct Profile {
      int                 lo;
      std::vector<double> values;
      int                 arg;
    };

    Profile project(Axis const& ax, TreeData& td) {
      AxisConfig const& cfg = ax.config();
      int               g   = cfg.grid_per_step;
      // Centre the first window on the shortest candidate.
      size_t s = 0;
      for (size_t i = 1; i < td.own_lengths.size(); ++i) {
        if (td.own_lengths[i] < td.own_lengths[s]) {
          s = i;
        }
      }
      int centre = 0;
      if (cfg.epsilon0) {
        try {
          centre = ax.legality_exponents(td.orbits[s]).k_plus;
        } catch (DomainError const&) {
          centre = 0;
        }
      }
      int lo = std::max(cfg.k_min, centre - 3) * g;
      int hi = std::min(cfg.k_max - 1, centre + 3) * g;
      std::map<int, double> cache;
      auto value = [&](int j) {
        auto it = cache.find(j);
        if (it == cache.end()) {
          it = cache.emplace(j, tree_value(ax, td, j)).first;
        }
        return it->second;
      };
      while (true) {
        double best = std::numeric_limits<double>::infinity();
        int    arg  = lo;
        for (int j = lo; j <= hi; ++j) {
          double v = value(j);
          if (v < best) {
            best = v;
            arg  = j;
          }
        }
        bool extend_lo = arg == lo && lo > cfg.k_min * g;
        bool extend_hi = arg == hi && hi < (cfg.k_max - 1) * g;
        if (!extend_lo && !extend_hi) {
          Profile p{lo, {}, arg};
          for (int j = lo; j <= hi; ++j) {
            p.values.push_back(value(j));
          }
          return p;
        }
        if (extend_lo) {
          lo = std::max(cfg.k_min * g, lo - 2 * g);
        }
        if (extend_hi) {
          hi = std::min((cfg.k_max - 1) * g, hi + 2 * g);
        }
      }
    }

    ProjectionResult to_result(Axis const& ax, Profile const& p) {
      ProjectionResult r;
      double           best = p.values[static_cast<size_t>(p.arg - p.lo)];
      r.distance            = best;
      for (size_t i = 0; i < p.values.size(); ++i) {
        if (p.values[i] <= best + 1e-9) {
          r.minimizers.push_back((p.lo + static_cast<int>(i)) * ax.delta());
        }
      }
      r.t        = r.minimizers.front();
      r.diameter = r.minimizers.back() - r.minimizers.front();
      return r;
    }

  }  // namespace

  ProjectionResult Axis::project_tree(MarkedGraph const& x) const {
    TreeData td = tree_data(*this, x);
    return to_result(*this, project(*this, td));
  }

  double Axis::axis_distance(int js, int jt) const {
    // phi-invariance moves s into the first step.
    int g     = _cfg.grid_per_step;
    int shift = floor_div(js, g) * g;
    js -= shift;
    jt -= shift;
    double best = -std::numeric_limits<double>::infinity();
    for (auto const& c : _t_candidates.candidates) {
      Orbit o = orbit(c.reference);
      best    = std::max(best, std::log(grid_length(o, jt) / grid_length(o, js)));
    }
    return best;
  }

  std::vector<GroupWord> Axis::sample_elements(size_t n, uint64_t seed) const {
    std::mt19937_64        rng(seed);
    std::vector<GroupWord> out;
    std::set<std::vector<Int>> seen;
    size_t                 tries = 0;
    while (out.size() < n) {
      if (++tries > 1000 * (n + 1)) {
        throw DomainError("could not sample enough loxodromic elements");
      }
      GroupWord w = random_reference_word(*_f.domain.reference, rng, 8);
      auto      c = cyclic_reduce(_f.graph(), _f.domain.from_reference(w)).first;
      if (c.is_elliptic()) {
        continue;
      }
      if (!seen.insert(conjugacy_key(_f.graph(), c)).second) {
        continue;
      }
      out.push_back(std::move(w));
    }
    return out;
  }

  Epsilon0Estimate Axis::estimate_epsilon0(std::vector<GroupWord> const& sample) const {
    constexpr int N = 6;
    std::vector<std::vector<double>> per(sample.size());
    parallel_for(sample.size(), _cfg.workers, [&](size_t i) {
      Orbit o = orbit(sample[i]);
      for (int n = 0; n <= N; ++n) {
        per[i].push_back(std::max(leg_plus(o, n), leg_minus(o, -n)));
      }
    });
    Epsilon0Estimate e{0, 0, std::vector<double>(N + 1, 1.0)};
    for (auto const& p : per) {
      for (int n = 0; n <= N; ++n) {
        e.by_n[static_cast<size_t>(n)] = std::min(e.by_n[static_cast<size_t>(n)], p[static_cast<size_t>(n)]);
      }
    }
    for (int n = 0; n <= N; ++n) {
      if (e.by_n[static_cast<size_t>(n)] > e.epsilon0) {
        e.epsilon0 = e.by_n[static_cast<size_t>(n)];
        e.n        = n;
      }
    }
    return e;
  }

  SandwichFit Axis::sandwich_fit(std::vector<GroupWord> const& sample,
                                 int                           half_width_steps) const {
    int                 g = _cfg.grid_per_step;
    std::vector<double> res(sample.size(), 0);
    parallel_for(sample.size(), _cfg.workers, [&](size_t i) {
      Orbit  o  = orbit(sample[i]);
      int    k  = legality_exponents(o).k_plus;
      int    j0 = k * g;
      double l0 = grid_length(o, j0);
      int    lo = std::max(_cfg.k_min, k - half_width_steps) * g;
      int    hi = std::min(_cfg.k_max - 1, k + half_width_steps) * g;
      double worst = 0;
      for (int j = lo; j <= hi; ++j) {
        double pred = j >= j0
                          ? std::pow(_plus.lambda, floor_div(j - j0, g)) * l0
                          : std::pow(_minus.lambda, floor_div(j0 - j, g)) * l0;
        worst = std::max(worst, std::abs(std::log(grid_length(o, j) / pred)));
      }
      res[i] = worst;
    });
    SandwichFit fit{1, res};
    for (double r : res) {
      fit.c = std::max(fit.c, std::exp(r));
    }
    return fit;
  }

  ContractionReport Axis::contraction_experiment(size_t balls, size_t per_ball) const {
    static constexpr double fractions[] = {0.25, 0.5, 0.75, 0.9};
    int                     g           = _cfg.grid_per_step;

    struct BallOut {
      BallRecord rec;
      double     c1 = -std::numeric_limits<double>::infinity();
      double     c2 = -std::numeric_limits<double>::infinity();
      bool       ok = false;
    };
    std::vector<BallOut> out(balls);

    parallel_for(balls, _cfg.workers, [&](size_t b) {
      std::mt19937_64 rng(mix(_cfg.seed, b));
      for (int attempt = 0; attempt < 8 && !out[b].ok; ++attempt) {
        int         j    = std::uniform_int_distribution<int>(-2, 2)(rng);
        MarkedGraph base = _f.domain;
        for (int i = 0; i < std::abs(j); ++i) {
          base = j > 0 ? base.twisted(_f.phi, _fm.phi) : base.twisted(_fm.phi, _f.phi);
        }
        MarkedGraph y   = random_deform(base, 6, rng());
        TreeData    tdy = tree_data(*this, y);
        Profile     py  = project(*this, tdy);
        double      dy  = py.values[static_cast<size_t>(py.arg - py.lo)];
        if (dy < 1e-3) {
          continue;
        }
        double r = fractions[b % 4] * dy;

        std::vector<int> proj{py.arg};
        BallOut          bo;
        bo.rec = {b, r, dy, py.arg * delta(), 1, 0};
        CandidateSet ycand = enumerate_candidates(y);
        for (size_t tries = 0; tries < 8 * per_ball && proj.size() < per_ball + 1;
             ++tries) {
          size_t steps = 1 + rng() % 3;
          MarkedGraph x = random_deform(y, steps, rng());
          double dyx = lipschitz_distance(
                           ycand, y.graph().volume(),
                           [&](GroupWord const& w) { return translation_length_ref(x, w); },
                           x.graph().volume())
                           .d_lip;
          if (!(dyx < r)) {
            continue;
          }
          TreeData tdx = tree_data(*this, x);
          Profile  px  = project(*this, tdx);
          int      jx  = px.arg;
          double   dx  = px.values[static_cast<size_t>(jx - px.lo)];
          proj.push_back(jx);
          // d(Y, pi X) - d(Y, X)
          bo.c2 = std::max(bo.c2, tree_value(*this, tdy, jx) - dyx);
          for (int dj = -2 * g; dj <= 2 * g; dj += g / 2 > 0 ? g / 2 : 1) {
            int jt = jx + dj;
            if (jt < _cfg.k_min * g || jt > (_cfg.k_max - 1) * g) {
              continue;
            }
            double dxt = tree_value(*this, tdx, jt);
            bo.c1      = std::max(bo.c1, dx + axis_distance(jx, jt) - dxt);
          }
        }
        auto [mn, mx]    = std::minmax_element(proj.begin(), proj.end());
        bo.rec.points    = proj.size();
        bo.rec.diameter  = (*mx - *mn) * delta();
        bo.ok            = true;
        out[b]           = bo;
      }
    });

    ContractionReport rep;
    rep.c1       = 0;
    rep.c2       = 0;
    rep.epsilon0 = epsilon0();
    for (auto const& bo : out) {
      if (!bo.ok) {
        continue;
      }
      rep.balls.push_back(bo.rec);
      rep.c1 = std::max(rep.c1, bo.c1);
      rep.c2 = std::max(rep.c2, bo.c2);
    }
    rep.sandwich = sandwich_fit(sample_elements(_cfg.samples, mix(_cfg.seed, 0xabc)));
    return rep;
  }

}  // namespace gbs
