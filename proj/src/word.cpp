#include "gbs/word.hpp"

#include <algorithm>
#include <sstream>

namespace gbs {

  void Reducer::push_edge(EdgeId e) {
    GbsGraph const& g = *_graph;
    if (g.origin(e) != current()) {
      throw DomainError("malformed adjacency",
                        {"edge " + g.edge_name(e) + " does not start at "
                         + g.vertex_name(current())});
    }
    auto& E = _word.edges;
    auto& S = _word.syllables;
    if (!E.empty() && E.back() == GbsGraph::reverse(e)) {
      EdgeId  p   = E.back();
      int64_t lam = g.label(p);
      if (S.back() % lam == 0) {
        Int z = S.back() / lam;
        S.pop_back();
        E.pop_back();
        S.back() += z * g.label(GbsGraph::reverse(p));
        return;
      }
    }
    int64_t lr = g.label(GbsGraph::reverse(e));
    Int     r  = floor_mod(S.back(), lr);
    Int     q  = (S.back() - r) / lr;
    S.back()   = r;
    E.push_back(e);
    S.push_back(q * g.label(e));
  }

  void Reducer::push_word(GroupWord const& w) {
    if (w.start != current()) {
      throw DomainError("malformed adjacency",
                        {"word starts at " + _graph->vertex_name(w.start)
                         + ", expected " + _graph->vertex_name(current())});
    }
    push_syllable(w.syllables[0]);
    for (size_t i = 0; i < w.edges.size(); ++i) {
      push_edge(w.edges[i]);
      push_syllable(w.syllables[i + 1]);
    }
  }

  void Reducer::push_inverse(GroupWord const& w) {
    if (w.end(*_graph) != current()) {
      throw DomainError("malformed adjacency", {"inverse word"});
    }
    size_t k = w.edges.size();
    push_syllable(-w.syllables[k]);
    for (size_t i = k; i-- > 0;) {
      push_edge(GbsGraph::reverse(w.edges[i]));
      push_syllable(-w.syllables[i]);
    }
  }

  GroupWord britton_reduce(GbsGraph const& g, GroupWord const& w) {
    Reducer r(g, w.start);
    r.push_word(w);
    return r.take();
  }

  GroupWord inverse(GbsGraph const& g, GroupWord const& w) {
    GroupWord out(w.end(g));
    size_t    k = w.edges.size();
    out.syllables[0] = -w.syllables[k];
    for (size_t i = k; i-- > 0;) {
      out.edges.push_back(GbsGraph::reverse(w.edges[i]));
      out.syllables.push_back(-w.syllables[i]);
    }
    return out;
  }

  GroupWord multiply(GbsGraph const&  g,
                     GroupWord const& a,
                     GroupWord const& b) {
    Reducer r(g, a.start);
    r.push_word(a);
    r.push_word(b);
    return r.take();
  }

  bool is_well_formed(GbsGraph const& g, GroupWord const& w) {
    if (w.syllables.size() != w.edges.size() + 1) {
      return false;
    }
    if (w.start < 0
        || static_cast<size_t>(w.start) >= g.number_of_vertices()) {
      return false;
    }
    VertexId v = w.start;
    for (EdgeId e : w.edges) {
      if (e < 0 || static_cast<size_t>(e) >= g.number_of_edges()
          || g.origin(e) != v) {
        return false;
      }
      v = g.terminus(e);
    }
    return true;
  }

  bool is_reduced(GbsGraph const& g, GroupWord const& w) {
    return is_well_formed(g, w) && britton_reduce(g, w) == w;
  }

  std::pair<CyclicWord, GroupWord> cyclic_reduce(GbsGraph const&  g,
                                                 GroupWord const& w0) {
    GroupWord w = britton_reduce(g, w0);
    GroupWord conj(w.start);
    while (true) {
      size_t k = w.edges.size();
      if (k == 0) {
        CyclicWord c;
        c.vertex    = w.start;
        c.syllables = {w.syllables[0]};
        return {c, conj};
      }
      EdgeId first = w.edges.front();
      EdgeId last  = w.edges.back();
      Int    wrap  = w.syllables[k] + w.syllables[0];
      if (k >= 2 && first == GbsGraph::reverse(last)
          && wrap % g.label(last) == 0) {
        GroupWord c(w.start);
        c.syllables[0] = w.syllables[0];
        c.edges.push_back(first);
        c.syllables.emplace_back(0);
        Reducer r(g, c.end(g));
        r.push_inverse(c);
        r.push_word(w);
        r.push_word(c);
        w    = r.take();
        conj = multiply(g, conj, c);
        continue;
      }
      conj = multiply(g, conj, GroupWord::syllable(w.start, w.syllables[0]));
      CyclicWord c;
      c.vertex = g.origin(first);
      c.edges  = w.edges;
      c.syllables.assign(w.syllables.begin() + 1, w.syllables.end());
      c.syllables.back() = wrap;
      return {c, conj};
    }
  }

  GroupWord to_loop(GbsGraph const& g, CyclicWord const& c) {
    if (c.is_elliptic()) {
      return GroupWord::syllable(c.vertex, c.syllables[0]);
    }
    GroupWord w(g.origin(c.edges[0]));
    w.edges = c.edges;
    w.syllables.insert(w.syllables.end(), c.syllables.begin(),
                       c.syllables.end());
    return w;
  }

  std::vector<Int> conjugacy_key(GbsGraph const& g, CyclicWord const& c) {
    if (c.is_elliptic()) {
      return {Int(-1), Int(c.vertex), c.syllables[0]};
    }
    size_t           k = c.edges.size();
    std::vector<Int> best;
    for (size_t i = 0; i < k; ++i) {
      EdgeId  ei = c.edges[i];
      int64_t m  = direction_modulus(g, ei);
      for (int64_t j = 0; j < m; ++j) {
        Reducer r(g, g.origin(ei));
        r.push_syllable(Int(j));
        for (size_t s = 0; s < k; ++s) {
          size_t idx = (i + s) % k;
          r.push_edge(c.edges[idx]);
          r.push_syllable(c.syllables[idx]);
        }
        r.push_syllable(Int(-j));
        GroupWord const& w = r.word();
        if (w.edges.size() != k) {
          throw DomainError("conjugacy_key: word is not cyclically reduced");
        }
        std::vector<Int> key;
        key.reserve(2 * k);
        for (size_t s = 0; s < k; ++s) {
          key.emplace_back(w.edges[s]);
          key.push_back(s + 1 == k ? w.syllables[k] + w.syllables[0]
                                   : w.syllables[s + 1]);
        }
        if (best.empty() || key < best) {
          best = std::move(key);
        }
      }
    }
    return best;
  }

  double cyclic_length(GbsGraph const& g, CyclicWord const& c) {
    double len = 0;
    for (EdgeId e : c.edges) {
      len += g.length(e);
    }
    return len;
  }

  double path_length(GbsGraph const& g, GroupWord const& w) {
    double len = 0;
    for (EdgeId e : w.edges) {
      len += g.length(e);
    }
    return len;
  }

  CyclicWord cyclic_power(GbsGraph const& g, CyclicWord const& c, unsigned k) {
    GroupWord loop = to_loop(g, c);
    Reducer   r(g, loop.start);
    for (unsigned i = 0; i < k; ++i) {
      r.push_word(loop);
    }
    return cyclic_reduce(g, r.word()).first;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text syntax
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct Token {
      bool        is_vertex;
      int         index;
      Int         exponent;
    };

    Token parse_token(GbsGraph const& g, std::string const& tok) {
      std::string name = tok;
      std::string exp;
      auto        caret = tok.find('^');
      if (caret != std::string::npos) {
        name = tok.substr(0, caret);
        exp  = tok.substr(caret + 1);
      }
      Int k(1);
      if (!exp.empty()) {
        try {
          k = Int(exp);
        } catch (std::exception const&) {
          throw DomainError("bad exponent", {tok});
        }
      }
      if (g.has_vertex(name)) {
        return {true, g.vertex_index(name), k};
      }
      if (g.has_edge(name)) {
        EdgeId e = g.edge_index(name);
        if (k == -1) {
          e = GbsGraph::reverse(e);
        } else if (k != 1) {
          throw DomainError("edge letters take exponent +-1", {tok});
        }
        return {false, e, Int(1)};
      }
      throw DomainError("unknown token", {tok});
    }
  }  // namespace

  GroupWord parse_word(GbsGraph const&                 g,
                       std::vector<std::string> const& tokens,
                       std::optional<VertexId>         base) {
    std::vector<Token> toks;
    toks.reserve(tokens.size());
    for (auto const& t : tokens) {
      toks.push_back(parse_token(g, t));
    }
    VertexId start;
    if (base) {
      start = *base;
    } else if (!toks.empty()) {
      start = toks[0].is_vertex ? toks[0].index : g.origin(toks[0].index);
    } else {
      throw DomainError("empty word needs an explicit base vertex");
    }
    GroupWord w(start);
    VertexId  cur = start;
    for (auto const& t : toks) {
      if (t.is_vertex) {
        if (t.index != cur) {
          throw DomainError("malformed adjacency",
                            {"syllable at " + g.vertex_name(t.index)
                             + " while at " + g.vertex_name(cur)});
        }
        w.syllables.back() += t.exponent;
      } else {
        if (g.origin(t.index) != cur) {
          throw DomainError("malformed adjacency",
                            {"edge " + g.edge_name(t.index)
                             + " does not start at " + g.vertex_name(cur)});
        }
        w.edges.push_back(t.index);
        w.syllables.emplace_back(0);
        cur = g.terminus(t.index);
      }
    }
    return w;
  }

  GroupWord parse_word(GbsGraph const&         g,
                       std::string const&      text,
                       std::optional<VertexId> base) {
    std::istringstream       in(text);
    std::vector<std::string> tokens;
    std::string              tok;
    while (in >> tok) {
      tokens.push_back(tok);
    }
    return parse_word(g, tokens, base);
  }

  std::vector<std::string> format_word(GbsGraph const& g, GroupWord const& w) {
    std::vector<std::string> out;
    VertexId                 cur = w.start;
    for (size_t i = 0; i <= w.edges.size(); ++i) {
      if (w.syllables[i] != 0) {
        out.push_back(g.vertex_name(cur) + "^" + w.syllables[i].str());
      }
      if (i < w.edges.size()) {
        out.push_back(g.edge_name(w.edges[i]));
        cur = g.terminus(w.edges[i]);
      }
    }
    return out;
  }

  std::string to_string(GbsGraph const& g, GroupWord const& w) {
    auto toks = format_word(g, w);
    if (toks.empty()) {
      return "1@" + g.vertex_name(w.start);
    }
    std::string s;
    for (auto const& t : toks) {
      if (!s.empty()) {
        s += ' ';
      }
      s += t;
    }
    return s;
  }

  std::string to_string(GbsGraph const& g, CyclicWord const& c) {
    return "(" + to_string(g, to_loop(g, c)) + ")";
  }

}  // namespace gbs
