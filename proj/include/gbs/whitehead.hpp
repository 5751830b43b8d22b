// Whitehead graphs of lines at vertex orbits, cut vertex analysis and
// non-simplicity certificates.

#ifndef GBS_WHITEHEAD_HPP_
#define GBS_WHITEHEAD_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "marked.hpp"
#include "turns.hpp"

namespace gbs {

  //! Vertices are the directions at v; edges join the two directions of
  //! every residue translate of a turn crossed by the lines.
  struct WhiteheadGraph {
    VertexId                                vertex = 0;
    std::vector<Direction>                  nodes;
    std::vector<std::pair<size_t, size_t>>  edges;
  };

  WhiteheadGraph whitehead_graph(GbsGraph const&             g,
                                 std::vector<TurnKey> const& turns,
                                 VertexId                    v);

  //! Lines given as cyclic words of g.
  WhiteheadGraph whitehead_graph(GbsGraph const&                g,
                                 std::vector<CyclicWord> const& lines,
                                 VertexId                       v);

  struct CutAnalysis {
    bool                connected;
    std::vector<size_t> cut_vertices;  // node indices
  };

  CutAnalysis cut_analysis(WhiteheadGraph const& w);

  std::string to_dot(GbsGraph const& g, WhiteheadGraph const& w);

  std::string to_string(GbsGraph const& g, Direction const& d);

  struct Certificate {
    std::vector<WhiteheadGraph> graphs;  // one per vertex, all 2-connected
  };

  //! Certificate that the targets (own coordinates, loxodromic) do not lie
  //! in a proper free factor system: every Whitehead graph is connected
  //! without cut vertex. None means inconclusive in this tree.
  std::optional<Certificate> nonsimplicity_certificate(
      MarkedGraph const& m, std::vector<GroupWord> const& targets);

  //! Heuristic: searches random deformations of m for a tree in which some
  //! Whitehead graph of the reference targets is disconnected or has a cut
  //! vertex. Returns the first such tree.
  std::optional<MarkedGraph> search_disconnecting_tree(
      MarkedGraph const&            m,
      std::vector<GroupWord> const& reference_targets,
      size_t                        tries,
      uint64_t                      seed);

}  // namespace gbs

#endif  // GBS_WHITEHEAD_HPP_
