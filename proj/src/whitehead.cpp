#include "gbs/whitehead.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/biconnected_components.hpp>
#include <boost/graph/connected_components.hpp>

#include "gbs/moves.hpp"

namespace gbs {

  std::string to_string(GbsGraph const& g, Direction const& d) {
    return g.edge_name(d.edge) + ":" + std::to_string(d.residue);
  }

  WhiteheadGraph whitehead_graph(GbsGraph const&             g,
                                 std::vector<TurnKey> const& turns,
                                 VertexId                    v) {
    WhiteheadGraph w;
    w.vertex = v;
    w.nodes  = directions_at(g, v);
    std::map<Direction, size_t> index;
    for (size_t i = 0; i < w.nodes.size(); ++i) {
      index[w.nodes[i]] = i;
    }
    std::set<std::pair<size_t, size_t>> edges;
    for (auto const& t : turns) {
      if (t.vertex != v || t.is_degenerate()) {
        continue;
      }
      int64_t m1 = direction_modulus(g, t.first.edge);
      int64_t m2 = direction_modulus(g, t.second.edge);
      int64_t l  = std::lcm(m1, m2);
      for (int64_t s = 0; s < l; ++s) {
        size_t a = index.at({t.first.edge, (t.first.residue + s) % m1});
        size_t b = index.at({t.second.edge, (t.second.residue + s) % m2});
        edges.insert({std::min(a, b), std::max(a, b)});
      }
    }
    w.edges.assign(edges.begin(), edges.end());
    return w;
  }

  WhiteheadGraph whitehead_graph(GbsGraph const&                g,
                                 std::vector<CyclicWord> const& lines,
                                 VertexId                       v) {
    std::vector<TurnKey> turns;
    for (auto const& c : lines) {
      if (c.is_elliptic()) {
        continue;
      }
      auto ts = cyclic_turns(g, c);
      turns.insert(turns.end(), ts.begin(), ts.end());
    }
    return whitehead_graph(g, turns, v);
  }

  CutAnalysis cut_analysis(WhiteheadGraph const& w) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS,
                                        boost::undirectedS>;
    Graph bg(w.nodes.size());
    for (auto const& [a, b] : w.edges) {
      boost::add_edge(a, b, bg);
    }
    CutAnalysis res;
    if (w.nodes.empty()) {
      res.connected = true;
      return res;
    }
    std::vector<int> comp(w.nodes.size());
    res.connected = boost::connected_components(bg, comp.data()) == 1;
    std::vector<Graph::vertex_descriptor> cuts;
    boost::articulation_points(bg, std::back_inserter(cuts));
    for (auto c : cuts) {
      res.cut_vertices.push_back(c);
    }
    std::sort(res.cut_vertices.begin(), res.cut_vertices.end());
    return res;
  }

  std::string to_dot(GbsGraph const& g, WhiteheadGraph const& w) {
    std::ostringstream out;
    out << "graph \"Wh_" << g.vertex_name(w.vertex) << "\" {\n";
    for (size_t i = 0; i < w.nodes.size(); ++i) {
      out << "  n" << i << " [label=\"" << to_string(g, w.nodes[i]) << "\"];\n";
    }
    for (auto const& [a, b] : w.edges) {
      out << "  n" << a << " -- n" << b << ";\n";
    }
    out << "}\n";
    return out.str();
  }

  namespace {
    std::vector<CyclicWord> axes(MarkedGraph const&            m,
                                 std::vector<GroupWord> const& targets) {
      std::vector<CyclicWord> lines;
      for (auto const& t : targets) {
        auto c = cyclic_reduce(m.graph(), t).first;
        if (c.is_elliptic()) {
          throw DomainError("Whitehead graph of an elliptic element");
        }
        lines.push_back(c);
      }
      return lines;
    }
  }  // namespace

  std::optional<Certificate> nonsimplicity_certificate(
      MarkedGraph const& m, std::vector<GroupWord> const& targets) {
    auto        lines = axes(m, targets);
    Certificate cert;
    for (VertexId v = 0;
         v < static_cast<VertexId>(m.graph().number_of_vertices()); ++v) {
      auto w   = whitehead_graph(m.graph(), lines, v);
      auto cut = cut_analysis(w);
      if (!cut.connected || !cut.cut_vertices.empty()) {
        return std::nullopt;
      }
      cert.graphs.push_back(std::move(w));
    }
    return cert;
  }

  std::optional<MarkedGraph> search_disconnecting_tree(
      MarkedGraph const&            m,
      std::vector<GroupWord> const& reference_targets,
      size_t                        tries,
      uint64_t                      seed) {
    for (size_t i = 0; i < tries; ++i) {
      MarkedGraph x = i == 0 ? m : random_deform(m, 6, seed + i);
      std::vector<GroupWord> own;
      for (auto const& t : reference_targets) {
        own.push_back(x.from_reference(t));
      }
      if (!nonsimplicity_certificate(x, own)) {
        return x;
      }
    }
    return std::nullopt;
  }

}  // namespace gbs
