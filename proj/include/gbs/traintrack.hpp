// Train track representatives: validation, Perron-Frobenius metric, gates,
// legality and cancellation constants.

#ifndef GBS_TRAINTRACK_HPP_
#define GBS_TRAINTRACK_HPP_

#include <optional>
#include <string>
#include <vector>

#include "marked.hpp"
#include "turns.hpp"

namespace gbs {

  //! f: T -> T given as a groupoid morphism of the domain, together with a
  //! base path c from the base to the image of the base, so that the induced
  //! automorphism in T coordinates is g -> c f(g) c^-1. phi is the
  //! automorphism of the reference group that f represents.
  struct TrainTrackMap {
    MarkedGraph      domain;
    GroupoidMorphism map;
    GroupWord        base_path;
    Substitution     phi;

    GbsGraph const& graph() const {
      return domain.graph();
    }

    //! c f(w) c^-1 for a loop w at the base.
    GroupWord induced(GroupWord const& loop) const;

    //! [f(w)] for any path word.
    GroupWord image(GroupWord const& path) const;

    //! Cyclic reduction of f applied to a cyclic word.
    CyclicWord image(CyclicWord const& c) const;

    //! Same map, domain lengths replaced.
    TrainTrackMap with_lengths(GbsGraph const& g) const;
  };

  //! Itemized problems: morphism relations and endpoints, nondegeneracy,
  //! base path endpoints, agreement with phi through the marking.
  std::vector<std::string> validate_map(TrainTrackMap const& tt);

  //! c_v with phi(x_v) = c_v x_{w(v)}^{mu_v} c_v^-1 in domain coordinates.
  std::vector<GroupWord> vertex_conjugators(TrainTrackMap const& tt);

  using Matrix = std::vector<std::vector<int64_t>>;

  //! A_{ij} = number of occurrences of unoriented edge i in f(e_j).
  Matrix transition_matrix(TrainTrackMap const& tt);

  //! Some power is strictly positive, exponent at most (n-1)^2+1.
  bool is_primitive(Matrix const& a);

  struct PfResult {
    Matrix              matrix;
    double              lambda;
    std::vector<double> lengths;  // per unoriented edge, volume 1
    double              residual;
    size_t              iterations;
    bool                fallback;
  };

  //! Left eigenvector by power iteration; characteristic polynomial
  //! bisection and inverse iteration if it stalls.
  PfResult pf_metric(TrainTrackMap const& tt, double tol = 1e-12);

  //! The map with domain lengths set to the PF lengths.
  TrainTrackMap with_pf_metric(TrainTrackMap const& tt, PfResult const& pf);

  class GateStructure {
   public:
    explicit GateStructure(TrainTrackMap const& tt);

    size_t number_of_directions() const noexcept {
      return _dirs.size();
    }
    Direction const& direction(size_t i) const {
      return _dirs[i];
    }
    size_t index(Direction const& d) const {
      return _offset[d.edge] + static_cast<size_t>(d.residue);
    }

    Direction df(Direction const& d) const {
      return _dirs[_df[index(d)]];
    }
    TurnKey df(TurnKey const& t) const;

    //! Gates at v as lists of directions.
    std::vector<std::vector<Direction>> gates_at(VertexId v) const;

    size_t gate_of(Direction const& d) const {
      return _gate[index(d)];
    }

    bool is_legal(TurnKey const& t) const {
      return !t.is_degenerate() && gate_of(t.first) != gate_of(t.second);
    }

   private:
    GbsGraph const*        _graph;
    std::vector<Direction> _dirs;
    std::vector<size_t>    _offset;
    std::vector<size_t>    _df;
    std::vector<size_t>    _gate;
  };

  struct LegalityReport {
    //! Turn orbits crossed by some f^k(e), k >= 1.
    std::vector<TurnKey>  closure;
    std::vector<TurnKey>  illegal_in_closure;
    std::vector<VertexId> vertices_with_one_gate;
    bool                  train_track;
  };

  LegalityReport gates_and_legality(TrainTrackMap const&  tt,
                                    GateStructure const& gates);

  struct TurnTrace {
    std::vector<TurnKey> turns;
    size_t               reentry;  // turns.back() == turns[reentry]
  };

  //! Iterates Df on a turn orbit until a repetition.
  TurnTrace turn_orbit_trace(GateStructure const& gates, TurnKey const& t);

  size_t illegal_turn_count(GbsGraph const&      g,
                            GateStructure const& gates,
                            GroupWord const&     path);
  size_t illegal_turn_count(GbsGraph const&      g,
                            GateStructure const& gates,
                            CyclicWord const&    c);

  struct Constants {
    double lambda;
    double bcc;
    double c_f;
    double kappa;
    size_t depth;  // path depth at which bcc stabilized
  };

  //! bcc is the largest common prefix length of [f(p)] and [f(q)] over turns
  //! and outward reduced paths p, q of at most depth edges. The depth grows
  //! until the maximum is stable or max_depth is reached.
  Constants cancellation_constants(TrainTrackMap const&  tt,
                                   GateStructure const& gates,
                                   double                lambda,
                                   size_t                max_depth = 4,
                                   std::optional<double> bcc_override = {});

  //! Cancellation in [f(p^-1 q)] for two outward paths from a vertex.
  double measured_cancellation(TrainTrackMap const& tt,
                               GroupWord const&     p,
                               GroupWord const&     q);

  GroupWord  iterate_tighten(TrainTrackMap const& tt,
                             GroupWord const&     path,
                             size_t               n);
  CyclicWord iterate_tighten(TrainTrackMap const& tt,
                             CyclicWord const&    c,
                             size_t               n);

  //! Proportion of a fundamental domain in maximal legal segments of length
  //! at least kappa; 1 for legal axes. Throws on elliptic input.
  double legality_ratio(GbsGraph const&      g,
                        GateStructure const& gates,
                        double               kappa,
                        CyclicWord const&    c);

}  // namespace gbs

#endif  // GBS_TRAINTRACK_HPP_
