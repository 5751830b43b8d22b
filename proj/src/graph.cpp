#include "gbs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace gbs {

  VertexId GbsGraph::add_vertex(std::string const& name) {
    if (_vertex_index.count(name) != 0 || _edge_index.count(name) != 0) {
      throw DomainError("duplicate identifier", {name});
    }
    VertexId v = static_cast<VertexId>(_vertices.size());
    _vertices.push_back(name);
    _out.emplace_back();
    _vertex_index.emplace(name, v);
    return v;
  }

  EdgeId GbsGraph::add_edge(std::string const& name,
                            std::string const& reverse_name,
                            VertexId           o,
                            VertexId           t,
                            int64_t            label_at_t,
                            int64_t            label_at_o,
                            double             length) {
    for (auto const& n : {name, reverse_name}) {
      if (_vertex_index.count(n) != 0 || _edge_index.count(n) != 0) {
        throw DomainError("duplicate identifier", {n});
      }
    }
    if (name == reverse_name) {
      throw DomainError("edge equal to its reverse", {name});
    }
    if (o < 0 || t < 0 || static_cast<size_t>(o) >= _vertices.size()
        || static_cast<size_t>(t) >= _vertices.size()) {
      throw DomainError("edge endpoint out of range", {name});
    }
    EdgeId e = static_cast<EdgeId>(_edges.size());
    _edges.push_back({name, o, t, label_at_t, length});
    _edges.push_back({reverse_name, t, o, label_at_o, length});
    _edge_index.emplace(name, e);
    _edge_index.emplace(reverse_name, e + 1);
    _out[o].push_back(e);
    _out[t].push_back(e + 1);
    return e;
  }

  VertexId GbsGraph::vertex_index(std::string const& name) const {
    auto it = _vertex_index.find(name);
    if (it == _vertex_index.end()) {
      throw DomainError("unknown vertex", {name});
    }
    return it->second;
  }

  EdgeId GbsGraph::edge_index(std::string const& name) const {
    auto it = _edge_index.find(name);
    if (it == _edge_index.end()) {
      throw DomainError("unknown edge", {name});
    }
    return it->second;
  }

  void GbsGraph::set_length(EdgeId e, double len) {
    _edges[e].length           = len;
    _edges[reverse(e)].length = len;
  }

  double GbsGraph::volume() const {
    double v = 0;
    for (size_t e = 0; e < _edges.size(); e += 2) {
      v += _edges[e].length;
    }
    return v;
  }

  void GbsGraph::scale_lengths(double factor) {
    for (auto& e : _edges) {
      e.length *= factor;
    }
  }

  bool GbsGraph::operator==(GbsGraph const& that) const {
    if (_vertices != that._vertices || _edges.size() != that._edges.size()) {
      return false;
    }
    for (size_t i = 0; i < _edges.size(); ++i) {
      auto const& a = _edges[i];
      auto const& b = that._edges[i];
      if (a.name != b.name || a.origin != b.origin || a.terminus != b.terminus
          || a.label != b.label || a.length != b.length) {
        return false;
      }
    }
    return true;
  }

  bool is_connected(GbsGraph const& g) {
    size_t n = g.number_of_vertices();
    if (n == 0) {
      return false;
    }
    std::vector<bool>     seen(n, false);
    std::queue<VertexId> q;
    q.push(0);
    seen[0]      = true;
    size_t count = 1;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (EdgeId e : g.out_edges(v)) {
        VertexId w = g.terminus(e);
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          q.push(w);
        }
      }
    }
    return count == n;
  }

  ValidityReport validate_graph(GbsGraph const& g) {
    ValidityReport r;
    if (g.number_of_vertices() == 0) {
      r.violations.push_back({"empty graph", ""});
      return r;
    }
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); ++e) {
      if (g.label(e) == 0) {
        r.violations.push_back({"zero label", g.edge_name(e)});
      }
      if (!(g.length(e) > 0) || !std::isfinite(g.length(e))) {
        r.violations.push_back({"nonpositive length", g.edge_name(e)});
      }
      if (GbsGraph::is_positive(e)
          && g.length(e) != g.length(GbsGraph::reverse(e))) {
        r.violations.push_back({"asymmetric length", g.edge_name(e)});
      }
      if (g.origin(e) != g.terminus(GbsGraph::reverse(e))) {
        r.violations.push_back({"incidence", g.edge_name(e)});
      }
    }
    if (!is_connected(g)) {
      r.violations.push_back({"disconnected", ""});
    }
    if (r.valid() && possibly_solvable(g)) {
      r.warnings.push_back("possibly solvable: all labels are +-1 on a circle");
    }
    return r;
  }

  int64_t betti_number(GbsGraph const& g) {
    if (!is_connected(g)) {
      throw DomainError("betti_number: disconnected graph");
    }
    return static_cast<int64_t>(g.number_of_unoriented_edges())
           - static_cast<int64_t>(g.number_of_vertices()) + 1;
  }

  bool is_collapsible(GbsGraph const& g, EdgeId e) {
    if (g.is_loop(e)) {
      return false;
    }
    auto unit = [](int64_t l) { return l == 1 || l == -1; };
    return unit(g.label(e)) || unit(g.label(GbsGraph::reverse(e)));
  }

  GraphStats graph_stats(GbsGraph const& g) {
    GraphStats s;
    s.volume           = g.volume();
    s.big_vertex_count = 0;
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices());
         ++v) {
      bool big = true;
      for (EdgeId e : g.out_edges(v)) {
        if (direction_modulus(g, e) <= 1) {
          big = false;
          break;
        }
      }
      if (big) {
        ++s.big_vertex_count;
      }
    }
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); e += 2) {
      if (is_collapsible(g, e)) {
        s.collapsible_edges.push_back(e);
      }
    }
    return s;
  }

  bool possibly_solvable(GbsGraph const& g) {
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); ++e) {
      if (g.label(e) != 1 && g.label(e) != -1) {
        return false;
      }
    }
    if (!is_connected(g) || betti_number(g) != 1) {
      return false;
    }
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices());
         ++v) {
      if (g.out_edges(v).size() != 2) {
        return false;
      }
    }
    return true;
  }

}  // namespace gbs
