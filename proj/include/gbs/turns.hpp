// Directions and turns at vertices of the Bass-Serre tree, coded by residues.

#ifndef GBS_TURNS_HPP_
#define GBS_TURNS_HPP_

#include <compare>
#include <cstdint>
#include <vector>

#include "graph.hpp"
#include "word.hpp"

namespace gbs {

  //! The edge (v, r) e of the tree at the base lift of o(e); the residue is
  //! taken modulo |label(reverse(e))|. The vertex group acts by residue + 1.
  struct Direction {
    EdgeId  edge    = 0;
    int64_t residue = 0;

    auto operator<=>(Direction const&) const = default;
  };

  //! Unordered pair of directions at a vertex, up to the diagonal action of
  //! the vertex group.
  struct TurnKey {
    VertexId  vertex = 0;
    Direction first;
    Direction second;

    bool is_degenerate() const noexcept {
      return first == second;
    }
    auto operator<=>(TurnKey const&) const = default;
  };

  Direction make_direction(GbsGraph const& g, EdgeId e, Int const& residue);

  //! Canonical representative: lexicographic minimum over the shifts
  //! s in [0, lcm(m_1, m_2)) of the sorted pair.
  TurnKey make_turn(GbsGraph const& g, Direction a, Direction b);

  //! All directions at v, ordered by out-edge then residue.
  std::vector<Direction> directions_at(GbsGraph const& g, VertexId v);

  //! Turn between an incoming edge e, the syllable k and the next edge f.
  TurnKey turn_between(GbsGraph const& g, EdgeId e, Int const& k, EdgeId f);

  //! Interior turns of a path word, in order.
  std::vector<TurnKey> path_turns(GbsGraph const& g, GroupWord const& w);

  //! One turn per cyclically consecutive pair of edge letters; turn i sits
  //! after edge i. Sorted when sorted is true.
  std::vector<TurnKey> cyclic_turns(GbsGraph const&   g,
                                    CyclicWord const& c,
                                    bool              sorted = false);

}  // namespace gbs

#endif  // GBS_TURNS_HPP_
