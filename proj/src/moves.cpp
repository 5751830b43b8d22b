#include "gbs/moves.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gbs {

  namespace {
    std::string fresh(std::string const& stem,
                      GbsGraph const&    a,
                      GbsGraph const&    b,
                      bool               vertex) {
      auto taken = [&](std::string const& s) {
        return vertex ? (a.has_vertex(s) || b.has_vertex(s))
                      : (a.has_edge(s) || b.has_edge(s));
      };
      if (!taken(stem)) {
        return stem;
      }
      for (int i = 1;; ++i) {
        std::string s = stem + std::to_string(i);
        if (!taken(s)) {
          return s;
        }
      }
    }

    GroupoidMorphism blank(GbsGraph const& src) {
      GroupoidMorphism f;
      f.vertex_target.resize(src.number_of_vertices());
      f.vertex_multiplier.assign(src.number_of_vertices(), 1);
      f.edge_image.resize(src.number_of_edges());
      return f;
    }

    GroupWord path(GbsGraph const& g, VertexId start, std::vector<EdgeId> es) {
      GroupWord w(start);
      for (EdgeId e : es) {
        w.edges.push_back(e);
        w.syllables.emplace_back(0);
      }
      if (!is_well_formed(g, w)) {
        throw std::logic_error("moves: ill-formed edge image");
      }
      return w;
    }

    // Builds the marked graph on g_new from the morphisms old -> new (fwd)
    // and new -> old (bwd). c_fwd is a path in g_new from the new base to
    // fwd(old base); c_bwd a path in the old graph from the old base to
    // bwd(new base).
    MarkedGraph transport_marking(MarkedGraph const&      m,
                                  GbsGraph                g_new,
                                  VertexId                base_new,
                                  GroupoidMorphism const& fwd,
                                  GroupWord const&        c_fwd,
                                  GroupoidMorphism const& bwd,
                                  GroupWord const&        c_bwd) {
      auto p = std::make_shared<Presentation const>(
          Presentation::with_bfs_tree(std::move(g_new), base_new));
      Substitution s_fwd
          = substitution_from_morphism(m.presentation, p, fwd, c_fwd);
      Substitution s_bwd
          = substitution_from_morphism(p, m.presentation, bwd, c_bwd);
      MarkedGraph out;
      out.reference    = m.reference;
      out.presentation = p;
      out.marking      = compose(m.marking, s_fwd);
      out.comarking    = compose(s_bwd, m.comarking);
      auto bad         = validate_marking(out);
      if (!bad.empty()) {
        throw std::logic_error("moves: marking transport failed: "
                               + bad.front());
      }
      return out;
    }
  }  // namespace

  MarkedGraph subdivide(MarkedGraph const& m, EdgeId e, double l1, double l2) {
    GbsGraph const& g = m.graph();
    if (e < 0 || static_cast<size_t>(e) >= g.number_of_edges()) {
      throw DomainError("subdivide: unknown edge");
    }
    if (!(l1 > 0) || !(l2 > 0)
        || std::abs(l1 + l2 - g.length(e)) > 1e-9 * std::max(1.0, g.length(e))) {
      throw DomainError("subdivide: bad split",
                        {std::to_string(l1), std::to_string(l2)});
    }
    if (!GbsGraph::is_positive(e)) {
      e = GbsGraph::reverse(e);
      std::swap(l1, l2);
    }
    VertexId a = g.origin(e), b = g.terminus(e);
    GbsGraph h;
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices()); ++v) {
      h.add_vertex(g.vertex_name(v));
    }
    VertexId w = h.add_vertex(fresh(g.edge_name(e) + "_m", g, h, true));
    EdgeId   e2 = -1;
    for (EdgeId f = 0; f < static_cast<EdgeId>(g.number_of_edges()); f += 2) {
      std::string const& n  = g.edge_name(f);
      std::string const& rn = g.edge_name(GbsGraph::reverse(f));
      if (f == e) {
        h.add_edge(fresh(n + "_1", g, h, false), fresh(rn + "_1", g, h, false),
                   a, w, 1, g.label(GbsGraph::reverse(e)), l1);
      } else {
        h.add_edge(n, rn, g.origin(f), g.terminus(f), g.label(f),
                   g.label(GbsGraph::reverse(f)), g.length(f));
      }
    }
    e2 = h.add_edge(fresh(g.edge_name(e) + "_2", g, h, false),
                    fresh(g.edge_name(GbsGraph::reverse(e)) + "_2", g, h, false),
                    w, b, g.label(e), 1, l2);

    GroupoidMorphism fwd = blank(g);
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices()); ++v) {
      fwd.vertex_target[v] = v;
    }
    for (EdgeId f = 0; f < static_cast<EdgeId>(g.number_of_edges()); f += 2) {
      fwd.set_edge_image(h, f,
                         f == e ? path(h, a, {e, e2}) : path(h, g.origin(f), {f}));
    }
    GroupoidMorphism bwd = blank(h);
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices()); ++v) {
      bwd.vertex_target[v] = v;
    }
    bwd.vertex_target[w]     = b;
    bwd.vertex_multiplier[w] = g.label(e);
    for (EdgeId f = 0; f < static_cast<EdgeId>(h.number_of_edges()); f += 2) {
      if (f == e2) {
        bwd.set_edge_image(g, f, GroupWord(b));
      } else {
        bwd.set_edge_image(g, f, path(g, g.origin(f), {f}));
      }
    }
    VertexId base = m.presentation->base();
    return transport_marking(m, std::move(h), base, fwd, GroupWord(base), bwd,
                             GroupWord(base));
  }

  MarkedGraph collapse(MarkedGraph const& m, EdgeId e) {
    GbsGraph const& g = m.graph();
    if (e < 0 || static_cast<size_t>(e) >= g.number_of_edges()) {
      throw DomainError("collapse: unknown edge");
    }
    if (!is_collapsible(g, e)) {
      throw DomainError("collapse: edge is not collapsible",
                        {g.edge_name(e)});
    }
    // orient E so that the label at its origin is +-1; merge a into b
    EdgeId E = e;
    if (std::abs(g.label(GbsGraph::reverse(E))) != 1) {
      E = GbsGraph::reverse(E);
    }
    VertexId a = g.origin(E), b = g.terminus(E);
    int64_t  eps  = g.label(GbsGraph::reverse(E));
    int64_t  mult = eps * g.label(E);

    std::vector<VertexId> vnew(g.number_of_vertices(), -1);
    GbsGraph              h;
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices()); ++v) {
      if (v != a) {
        vnew[v] = h.add_vertex(g.vertex_name(v));
      }
    }
    vnew[a] = vnew[b];
    std::vector<EdgeId> enew(g.number_of_edges(), -1);
    for (EdgeId f = 0; f < static_cast<EdgeId>(g.number_of_edges()); f += 2) {
      if (f == E || f == GbsGraph::reverse(E)) {
        continue;
      }
      EdgeId  fr = GbsGraph::reverse(f);
      int64_t lt = g.label(f) * (g.terminus(f) == a ? mult : 1);
      int64_t lo = g.label(fr) * (g.origin(f) == a ? mult : 1);
      enew[f]  = h.add_edge(g.edge_name(f), g.edge_name(fr), vnew[g.origin(f)],
                            vnew[g.terminus(f)], lt, lo, g.length(f));
      enew[fr] = GbsGraph::reverse(enew[f]);
    }

    GroupoidMorphism fwd = blank(g);
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices()); ++v) {
      fwd.vertex_target[v] = vnew[v];
    }
    fwd.vertex_multiplier[a] = mult;
    for (EdgeId f = 0; f < static_cast<EdgeId>(g.number_of_edges()); f += 2) {
      if (enew[f] < 0) {
        fwd.set_edge_image(h, f, GroupWord(vnew[b]));
      } else {
        fwd.set_edge_image(h, f, path(h, vnew[g.origin(f)], {enew[f]}));
      }
    }
    GroupoidMorphism      bwd = blank(h);
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices()); ++v) {
      if (v != a) {
        bwd.vertex_target[vnew[v]] = v;
      }
    }
    for (EdgeId f = 0; f < static_cast<EdgeId>(g.number_of_edges()); f += 2) {
      if (enew[f] < 0) {
        continue;
      }
      std::vector<EdgeId> es;
      if (g.origin(f) == a) {
        es.push_back(GbsGraph::reverse(E));
      }
      es.push_back(f);
      if (g.terminus(f) == a) {
        es.push_back(E);
      }
      VertexId start = g.origin(f) == a ? b : g.origin(f);
      bwd.set_edge_image(g, enew[f], path(g, start, es));
    }
    VertexId  base = m.presentation->base();
    GroupWord c_bwd(base);
    if (base == a) {
      c_bwd = path(g, a, {E});
    }
    return transport_marking(m, std::move(h), vnew[base], fwd,
                             GroupWord(vnew[base]), bwd, c_bwd);
  }

  MarkedGraph expand(MarkedGraph const&         m,
                     VertexId                   v,
                     std::vector<EdgeId> const& dirs,
                     int64_t                    d,
                     double                     length) {
    GbsGraph const& g = m.graph();
    if (v < 0 || static_cast<size_t>(v) >= g.number_of_vertices()) {
      throw DomainError("expand: unknown vertex");
    }
    if (d < 2) {
      throw DomainError("expand: d must be at least 2");
    }
    if (!(length > 0)) {
      throw DomainError("expand: nonpositive length");
    }
    std::vector<bool> moved(g.number_of_edges(), false);
    for (EdgeId e : dirs) {
      if (e < 0 || static_cast<size_t>(e) >= g.number_of_edges()
          || g.origin(e) != v) {
        throw DomainError("expand: end is not incident to the vertex");
      }
      if (g.label(GbsGraph::reverse(e)) % d != 0) {
        throw DomainError("expand: label not divisible", {g.edge_name(e)});
      }
      moved[e] = true;
    }
    size_t count = static_cast<size_t>(std::count(moved.begin(), moved.end(), true));
    if (count == 0 || count == g.out_edges(v).size()) {
      throw DomainError("expand: dirs must be a nonempty proper subset of "
                        "the ends at the vertex");
    }
    GbsGraph h;
    for (VertexId u = 0; u < static_cast<VertexId>(g.number_of_vertices()); ++u) {
      h.add_vertex(g.vertex_name(u));
    }
    VertexId w = h.add_vertex(fresh(g.vertex_name(v) + "_x", g, h, true));
    for (EdgeId f = 0; f < static_cast<EdgeId>(g.number_of_edges()); f += 2) {
      EdgeId  fr = GbsGraph::reverse(f);
      bool    mo = moved[f], mt = moved[fr];
      h.add_edge(g.edge_name(f), g.edge_name(fr), mo ? w : g.origin(f),
                 mt ? w : g.terminus(f), mt ? g.label(f) / d : g.label(f),
                 mo ? g.label(fr) / d : g.label(fr), g.length(f));
    }
    EdgeId eps = h.add_edge(fresh("d", g, h, false), fresh("d'", g, h, false),
                            v, w, 1, d, length);

    GroupoidMorphism fwd = blank(g);
    for (VertexId u = 0; u < static_cast<VertexId>(g.number_of_vertices()); ++u) {
      fwd.vertex_target[u] = u;
    }
    for (EdgeId f = 0; f < static_cast<EdgeId>(g.number_of_edges()); f += 2) {
      std::vector<EdgeId> es;
      if (moved[f]) {
        es.push_back(eps);
      }
      es.push_back(f);
      if (moved[GbsGraph::reverse(f)]) {
        es.push_back(GbsGraph::reverse(eps));
      }
      fwd.set_edge_image(h, f, path(h, g.origin(f), es));
    }
    GroupoidMorphism bwd = blank(h);
    for (VertexId u = 0; u < static_cast<VertexId>(g.number_of_vertices()); ++u) {
      bwd.vertex_target[u] = u;
    }
    bwd.vertex_target[w]     = v;
    bwd.vertex_multiplier[w] = d;
    for (EdgeId f = 0; f < static_cast<EdgeId>(g.number_of_edges()); f += 2) {
      bwd.set_edge_image(g, f, path(g, g.origin(f), {f}));
    }
    bwd.set_edge_image(g, eps, GroupWord(v));
    VertexId base = m.presentation->base();
    return transport_marking(m, std::move(h), base, fwd, GroupWord(base), bwd,
                             GroupWord(base));
  }

  MarkedGraph rescale(MarkedGraph const& m, std::vector<double> const& factors) {
    GbsGraph g = m.graph();
    if (factors.size() != g.number_of_unoriented_edges()) {
      throw DomainError("rescale: one factor per edge expected");
    }
    for (size_t i = 0; i < factors.size(); ++i) {
      if (!(factors[i] > 0)) {
        throw DomainError("rescale: nonpositive factor");
      }
      EdgeId e = static_cast<EdgeId>(2 * i);
      g.set_length(e, g.length(e) * factors[i]);
    }
    return m.with_lengths(g);
  }

  MarkedGraph random_deform(MarkedGraph const& m,
                            size_t             steps,
                            uint64_t           seed,
                            size_t             max_extra_vertices) {
    std::mt19937_64 rng(seed);
    auto            uniform = [&](size_t n) {
      return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
    };
    size_t      vmax = m.graph().number_of_vertices() + max_extra_vertices;
    MarkedGraph cur  = m;
    for (size_t step = 0; step < steps; ++step) {
      GbsGraph const& g    = cur.graph();
      size_t          move = uniform(4);
      if (move == 0 && g.number_of_vertices() < vmax) {
        EdgeId e = static_cast<EdgeId>(2 * uniform(g.number_of_unoriented_edges()));
        double x = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
        cur      = subdivide(cur, e, x * g.length(e), (1 - x) * g.length(e));
      } else if (move == 1) {
        auto cs = graph_stats(g).collapsible_edges;
        if (!cs.empty()) {
          cur = collapse(cur, cs[uniform(cs.size())]);
        }
      } else if (move == 2 && g.number_of_vertices() < vmax) {
        struct Option {
          VertexId            v;
          int64_t             d;
          std::vector<EdgeId> ends;
        };
        std::vector<Option> opts;
        for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices());
             ++v) {
          auto const& out = g.out_edges(v);
          for (EdgeId e : out) {
            int64_t l = std::abs(g.label(GbsGraph::reverse(e)));
            for (int64_t d = 2; d <= l; ++d) {
              if (l % d != 0) {
                continue;
              }
              std::vector<EdgeId> ends;
              for (EdgeId f : out) {
                if (g.label(GbsGraph::reverse(f)) % d == 0) {
                  ends.push_back(f);
                }
              }
              opts.push_back({v, d, ends});
            }
          }
        }
        if (!opts.empty()) {
          Option const&       o = opts[uniform(opts.size())];
          std::vector<EdgeId> dirs;
          for (EdgeId f : o.ends) {
            if (uniform(2) == 0) {
              dirs.push_back(f);
            }
          }
          if (dirs.empty()) {
            dirs.push_back(o.ends[uniform(o.ends.size())]);
          }
          if (dirs.size() < g.out_edges(o.v).size()) {
            double len = std::uniform_real_distribution<double>(0.1, 0.5)(rng)
                         * g.volume() / static_cast<double>(
                             g.number_of_unoriented_edges());
            cur = expand(cur, o.v, dirs, o.d, len);
          }
        }
      } else if (move == 3) {
        std::vector<double> f(g.number_of_unoriented_edges());
        std::uniform_real_distribution<double> u(std::log(0.5), std::log(2.0));
        for (auto& x : f) {
          x = std::exp(u(rng));
        }
        cur = rescale(cur, f);
      }
    }
    return normalize_volume(cur);
  }

}  // namespace gbs
