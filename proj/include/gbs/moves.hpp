// Moves in the deformation space: subdivision, collapse, expansion and
// rescaling, with markings transported through the induced morphisms.

#ifndef GBS_MOVES_HPP_
#define GBS_MOVES_HPP_

#include <cstdint>
#include <vector>

#include "marked.hpp"

namespace gbs {

  //! Replaces e by e_1 e_2 through a new vertex; len(e_i) = l_i.
  MarkedGraph subdivide(MarkedGraph const& m, EdgeId e, double l1, double l2);

  //! Collapses a non-loop edge with a +-1 label, merging its endpoints.
  MarkedGraph collapse(MarkedGraph const& m, EdgeId e);

  //! Pulls the ends in dirs (oriented edges with origin v) to a new vertex w
  //! joined to v by an edge with labels d at v and 1 at w.
  MarkedGraph expand(MarkedGraph const&         m,
                     VertexId                   v,
                     std::vector<EdgeId> const& dirs,
                     int64_t                    d,
                     double                     length = 0.25);

  //! Multiplies the length of each geometric edge by its factor.
  MarkedGraph rescale(MarkedGraph const& m, std::vector<double> const& factors);

  //! Seeded random sequence of moves followed by volume normalization.
  //! Moves that do not apply are skipped; subdivisions and expansions stop
  //! once the graph has max_extra_vertices more vertices than m.
  MarkedGraph random_deform(MarkedGraph const& m,
                            size_t             steps,
                            uint64_t           seed,
                            size_t             max_extra_vertices = 2);

}  // namespace gbs

#endif  // GBS_MOVES_HPP_
