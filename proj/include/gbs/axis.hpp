// The axis of phi in the deformation space: legality exponents, projections
// of elements and trees, and the contraction experiment.

#ifndef GBS_AXIS_HPP_
#define GBS_AXIS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "lipschitz.hpp"
#include "traintrack.hpp"

namespace gbs {

  struct AxisConfig {
    std::optional<double> epsilon0;        // estimated when unset
    int                   grid_per_step = 8;  // delta = log(lambda) / 8
    int                   k_min         = -24;
    int                   k_max         = 24;
    size_t                samples       = 50;
    uint64_t              seed          = 1;
    size_t                max_edges     = 4000000;
    unsigned              workers       = 0;  // 0: hardware concurrency
  };

  //! phi^n(g) for an element g, computed lazily: forward by iterating f in
  //! T, backward by iterating f_minus in T_minus. Words in the other tree
  //! are obtained by transport.
  class Orbit {
   public:
    bool loxodromic() const {
      return !_fwd.front().is_elliptic();
    }

   private:
    friend class Axis;
    std::vector<CyclicWord>         _fwd;        // T coordinates, n >= 0
    std::vector<CyclicWord>         _bwd;        // T_minus coordinates, n <= 0
    std::map<int, CyclicWord>       _in_t;       // n < 0 in T coordinates
    std::map<int, CyclicWord>       _in_tminus;  // n > 0 in T_minus coordinates
  };

  struct LegalityExponents {
    int    k_plus;
    int    k_minus;
    double t0;
  };

  struct ThetaResult {
    std::vector<double> minimizers;
    double              min_length;
    double              diameter;
  };

  struct ProjectionResult {
    double              t;  // smallest minimizer
    double              distance;
    std::vector<double> minimizers;
    double              diameter;
  };

  struct Epsilon0Estimate {
    double              epsilon0;
    int                 n;
    std::vector<double> by_n;  // min over the sample for N = 0..6
  };

  struct SandwichFit {
    double              c;
    std::vector<double> log_residuals;  // per element, max |log ratio|
  };

  struct BallRecord {
    size_t ball;
    double radius;
    double axis_distance;
    double t_center;
    size_t points;
    double diameter;
  };

  struct ContractionReport {
    std::vector<BallRecord> balls;
    double                  c1;  // d(X,T_t) >= d(X,pi X) + d(pi X,T_t) - c1
    double                  c2;  // d(Y,X) >= d(Y,pi X) - c2
    SandwichFit             sandwich;
    double                  epsilon0;
  };

  class Axis {
   public:
    Axis(TrainTrackMap f, TrainTrackMap f_minus, AxisConfig cfg);

    AxisConfig const& config() const noexcept {
      return _cfg;
    }
    double lambda() const noexcept {
      return _plus.lambda;
    }
    double lambda_minus() const noexcept {
      return _minus.lambda;
    }
    double log_lambda() const noexcept {
      return _log_lambda;
    }
    double delta() const noexcept {
      return _log_lambda / _cfg.grid_per_step;
    }
    Constants const& constants_plus() const noexcept {
      return _plus;
    }
    Constants const& constants_minus() const noexcept {
      return _minus;
    }
    TrainTrackMap const& f() const noexcept {
      return _f;
    }
    TrainTrackMap const& f_minus() const noexcept {
      return _fm;
    }

    Orbit orbit(GroupWord const& reference_word) const;

    //! |phi^n(g)|_T.
    double step_length(Orbit& o, int n) const;
    //! |g|_{T_t} at grid index j (t = j delta), log-linear inside a step.
    double grid_length(Orbit& o, int j) const;

    //! LEG_f(phi^k(g), T) and LEG_{f_-}(phi^k(g), T_-).
    double leg_plus(Orbit& o, int k) const;
    double leg_minus(Orbit& o, int k) const;

    //! phi^k(g) as a cyclic word of T.
    CyclicWord word_in_t(Orbit& o, int k) const;

    double epsilon0() const;
    void   set_epsilon0(double e) {
      _cfg.epsilon0 = e;
    }

    LegalityExponents legality_exponents(Orbit& o) const;
    ThetaResult       theta_of_element(Orbit& o) const;
    ProjectionResult  project_tree(MarkedGraph const& x) const;

    //! d(T_s, T_t) for grid points, through the candidates of T.
    double axis_distance(int js, int jt) const;

    Epsilon0Estimate estimate_epsilon0(std::vector<GroupWord> const& sample) const;

    SandwichFit sandwich_fit(std::vector<GroupWord> const& sample,
                             int                           half_width_steps = 6) const;

    //! balls: number of base points; per_ball: points sampled per ball.
    ContractionReport contraction_experiment(size_t balls,
                                             size_t per_ball) const;

    //! Loxodromic reference elements drawn from the seed.
    std::vector<GroupWord> sample_elements(size_t n, uint64_t seed) const;

   private:
    void check_size(CyclicWord const& c) const;

    TrainTrackMap    _f;
    TrainTrackMap    _fm;
    AxisConfig       _cfg;
    GateStructure    _gates_plus;
    GateStructure    _gates_minus;
    Constants        _plus;
    Constants        _minus;
    double           _log_lambda;
    GroupoidMorphism _to_t;       // T_minus -> T
    GroupoidMorphism _to_tminus;  // T -> T_minus
    CandidateSet     _t_candidates;
  };

  //! Runs fn(i) for i < n on a pool of workers; results must be written to
  //! per-index slots by fn.
  void parallel_for(size_t n, unsigned workers, std::function<void(size_t)> const& fn);

}  // namespace gbs

#endif  // GBS_AXIS_HPP_
