#include "gbs/turns.hpp"

#include <algorithm>
#include <numeric>

namespace gbs {

  Direction make_direction(GbsGraph const& g, EdgeId e, Int const& residue) {
    int64_t m = direction_modulus(g, e);
    return {e, static_cast<int64_t>(floor_mod(residue, m))};
  }

  TurnKey make_turn(GbsGraph const& g, Direction a, Direction b) {
    int64_t m1 = direction_modulus(g, a.edge);
    int64_t m2 = direction_modulus(g, b.edge);
    int64_t l  = std::lcm(m1, m2);
    TurnKey best;
    best.vertex = g.origin(a.edge);
    bool first  = true;
    for (int64_t s = 0; s < l; ++s) {
      Direction x{a.edge, (a.residue + s) % m1};
      Direction y{b.edge, (b.residue + s) % m2};
      if (y < x) {
        std::swap(x, y);
      }
      if (first || std::tie(x, y) < std::tie(best.first, best.second)) {
        best.first  = x;
        best.second = y;
        first       = false;
      }
    }
    return best;
  }

  std::vector<Direction> directions_at(GbsGraph const& g, VertexId v) {
    std::vector<Direction> out;
    for (EdgeId e : g.out_edges(v)) {
      int64_t m = direction_modulus(g, e);
      for (int64_t r = 0; r < m; ++r) {
        out.push_back({e, r});
      }
    }
    return out;
  }

  TurnKey turn_between(GbsGraph const& g, EdgeId e, Int const& k, EdgeId f) {
    return make_turn(g,
                     Direction{GbsGraph::reverse(e), 0},
                     make_direction(g, f, k));
  }

  std::vector<TurnKey> path_turns(GbsGraph const& g, GroupWord const& w) {
    std::vector<TurnKey> out;
    for (size_t i = 0; i + 1 < w.edges.size(); ++i) {
      out.push_back(turn_between(g, w.edges[i], w.syllables[i + 1],
                                 w.edges[i + 1]));
    }
    return out;
  }

  std::vector<TurnKey> cyclic_turns(GbsGraph const&   g,
                                    CyclicWord const& c,
                                    bool              sorted) {
    std::vector<TurnKey> out;
    size_t               k = c.edges.size();
    for (size_t i = 0; i < k; ++i) {
      out.push_back(
          turn_between(g, c.edges[i], c.syllables[i], c.edges[(i + 1) % k]));
    }
    if (sorted) {
      std::sort(out.begin(), out.end());
    }
    return out;
  }

}  // namespace gbs
