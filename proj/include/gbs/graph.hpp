// Labelled finite graphs of infinite cyclic groups.

#ifndef GBS_GRAPH_HPP_
#define GBS_GRAPH_HPP_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "types.hpp"

namespace gbs {

  //! A finite connected graph whose vertex and edge groups are all Z.
  //!
  //! Oriented edges come in pairs: the edge with index 2i is the positive
  //! orientation and 2i+1 its reverse. The label of an oriented edge e is the
  //! index of the edge group in the group of its terminus, so that
  //!
  //!   e * x_{t(e)}^{z label(e)} * reverse(e) = x_{o(e)}^{z label(reverse(e))}.
  //!
  //! Lengths are stored per oriented edge so that asymmetric input can be
  //! represented and reported by validate_graph.
  class GbsGraph {
   public:
    struct Edge {
      std::string name;
      VertexId    origin;
      VertexId    terminus;
      int64_t     label;
      double      length;
    };

    GbsGraph() = default;

    VertexId add_vertex(std::string const& name);

    //! Adds an edge from o to t and its reverse; returns the positive id.
    EdgeId add_edge(std::string const& name,
                    std::string const& reverse_name,
                    VertexId           o,
                    VertexId           t,
                    int64_t            label_at_t,
                    int64_t            label_at_o,
                    double             length);

    size_t number_of_vertices() const noexcept {
      return _vertices.size();
    }
    //! Number of oriented edges, twice the number of geometric edges.
    size_t number_of_edges() const noexcept {
      return _edges.size();
    }
    size_t number_of_unoriented_edges() const noexcept {
      return _edges.size() / 2;
    }

    std::string const& vertex_name(VertexId v) const {
      return _vertices.at(v);
    }
    std::string const& edge_name(EdgeId e) const {
      return _edges.at(e).name;
    }
    VertexId vertex_index(std::string const& name) const;
    EdgeId   edge_index(std::string const& name) const;
    bool     has_vertex(std::string const& name) const {
      return _vertex_index.count(name) != 0;
    }
    bool has_edge(std::string const& name) const {
      return _edge_index.count(name) != 0;
    }

    static EdgeId reverse(EdgeId e) noexcept {
      return e ^ 1;
    }
    static bool is_positive(EdgeId e) noexcept {
      return (e & 1) == 0;
    }
    VertexId origin(EdgeId e) const {
      return _edges[e].origin;
    }
    VertexId terminus(EdgeId e) const {
      return _edges[e].terminus;
    }
    //! Label at the terminus of e.
    int64_t label(EdgeId e) const {
      return _edges[e].label;
    }
    double length(EdgeId e) const {
      return _edges[e].length;
    }
    bool is_loop(EdgeId e) const {
      return origin(e) == terminus(e);
    }

    void set_length(EdgeId e, double len);
    void set_label(EdgeId e, int64_t label) {
      _edges[e].label = label;
    }
    //! Only for building invalid graphs in tests and validation.
    void set_oriented_length(EdgeId e, double len) {
      _edges[e].length = len;
    }

    Edge const& edge(EdgeId e) const {
      return _edges[e];
    }

    //! Oriented edges with origin v (each loop contributes both orientations).
    std::vector<EdgeId> const& out_edges(VertexId v) const {
      return _out[v];
    }

    //! Sum of the lengths of geometric edges.
    double volume() const;

    void scale_lengths(double factor);

    bool operator==(GbsGraph const& that) const;

   private:
    std::vector<std::string>                _vertices;
    std::vector<Edge>                       _edges;
    std::vector<std::vector<EdgeId>>        _out;
    std::unordered_map<std::string, int>    _vertex_index;
    std::unordered_map<std::string, EdgeId> _edge_index;
  };

  struct Violation {
    std::string kind;
    std::string where;
  };

  struct ValidityReport {
    std::vector<Violation> violations;
    std::vector<std::string> warnings;
    bool valid() const noexcept {
      return violations.empty();
    }
  };

  ValidityReport validate_graph(GbsGraph const& g);

  bool is_connected(GbsGraph const& g);

  //! b_1 = #E - #V + 1 with unoriented edges; throws if g is disconnected.
  int64_t betti_number(GbsGraph const& g);

  struct GraphStats {
    double              volume;
    size_t              big_vertex_count;
    std::vector<EdgeId> collapsible_edges;  // positive ids
  };

  GraphStats graph_stats(GbsGraph const& g);

  //! Non-loop with a label equal to +-1 at one of its ends.
  bool is_collapsible(GbsGraph const& g, EdgeId e);

  //! Every label is +-1 and the graph is a circle.
  bool possibly_solvable(GbsGraph const& g);

  //! Number of directions at the origin of e: |label(reverse(e))|.
  inline int64_t direction_modulus(GbsGraph const& g, EdgeId e) {
    int64_t l = g.label(GbsGraph::reverse(e));
    return l < 0 ? -l : l;
  }

}  // namespace gbs

#endif  // GBS_GRAPH_HPP_
