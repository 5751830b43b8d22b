#include "gbs/marked.hpp"

#include <queue>

namespace gbs {

  ////////////////////////////////////////////////////////////////////////
  // Presentation
  ////////////////////////////////////////////////////////////////////////

  bool same_combinatorics(Presentation const& a, Presentation const& b) {
    GbsGraph const& g = a.graph();
    GbsGraph const& h = b.graph();
    if (a.base() != b.base()
        || g.number_of_vertices() != h.number_of_vertices()
        || g.number_of_edges() != h.number_of_edges()) {
      return false;
    }
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices());
         ++v) {
      if (g.vertex_name(v) != h.vertex_name(v)) {
        return false;
      }
    }
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); ++e) {
      if (g.edge_name(e) != h.edge_name(e) || g.origin(e) != h.origin(e)
          || g.terminus(e) != h.terminus(e) || g.label(e) != h.label(e)
          || a.in_tree(e) != b.in_tree(e)) {
        return false;
      }
    }
    return true;
  }

  Presentation::Presentation(GbsGraph            graph,
                             VertexId            base,
                             std::vector<EdgeId> tree)
      : _graph(std::move(graph)), _base(base) {
    size_t nv = _graph.number_of_vertices();
    size_t ne = _graph.number_of_edges();
    if (base < 0 || static_cast<size_t>(base) >= nv) {
      throw DomainError("base vertex out of range");
    }
    _tree.assign(ne, false);
    for (EdgeId e : tree) {
      if (e < 0 || static_cast<size_t>(e) >= ne) {
        throw DomainError("spanning tree edge out of range");
      }
      if (_tree[e]) {
        throw DomainError("spanning tree edge repeated", {_graph.edge_name(e)});
      }
      _tree[e]                    = true;
      _tree[GbsGraph::reverse(e)] = true;
    }
    if (tree.size() + 1 != nv) {
      throw DomainError("spanning tree has the wrong number of edges");
    }
    _tree_path.assign(nv, GroupWord(base));
    std::vector<bool>    seen(nv, false);
    std::queue<VertexId> q;
    q.push(base);
    seen[base] = true;
    size_t count = 1;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (EdgeId e : _graph.out_edges(v)) {
        VertexId w = _graph.terminus(e);
        if (_tree[e] && !seen[w]) {
          seen[w]       = true;
          _tree_path[w] = _tree_path[v];
          _tree_path[w].edges.push_back(e);
          _tree_path[w].syllables.emplace_back(0);
          ++count;
          q.push(w);
        }
      }
    }
    if (count != nv) {
      throw DomainError("spanning tree does not span");
    }
    _gen_of_edge.assign(ne, -1);
    for (EdgeId e = 0; e < static_cast<EdgeId>(ne); e += 2) {
      if (!_tree[e]) {
        _gen_of_edge[e] = static_cast<int>(nv + _edge_gens.size());
        _edge_gens.push_back(e);
      }
    }
  }

  Presentation Presentation::with_bfs_tree(GbsGraph graph, VertexId base) {
    size_t               nv = graph.number_of_vertices();
    std::vector<bool>    seen(nv, false);
    std::vector<EdgeId>  tree;
    std::queue<VertexId> q;
    q.push(base);
    seen[base] = true;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (EdgeId e : graph.out_edges(v)) {
        VertexId w = graph.terminus(e);
        if (!seen[w]) {
          seen[w] = true;
          tree.push_back(GbsGraph::is_positive(e) ? e : GbsGraph::reverse(e));
          q.push(w);
        }
      }
    }
    return Presentation(std::move(graph), base, std::move(tree));
  }

  std::vector<EdgeId> Presentation::tree_edges() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < static_cast<EdgeId>(_tree.size()); e += 2) {
      if (_tree[e]) {
        out.push_back(e);
      }
    }
    return out;
  }

  std::string Presentation::generator_name(size_t gen) const {
    if (is_vertex_generator(gen)) {
      return _graph.vertex_name(static_cast<VertexId>(gen));
    }
    return _graph.edge_name(generator_edge(gen));
  }

  size_t Presentation::generator_index(std::string const& name) const {
    if (_graph.has_vertex(name)) {
      return vertex_generator(_graph.vertex_index(name));
    }
    if (_graph.has_edge(name)) {
      int gen = _gen_of_edge[_graph.edge_index(name)];
      if (gen >= 0) {
        return static_cast<size_t>(gen);
      }
    }
    throw DomainError("unknown generator", {name});
  }

  GroupWord Presentation::generator_loop(size_t gen) const {
    Reducer r(_graph, _base);
    if (is_vertex_generator(gen)) {
      VertexId v = static_cast<VertexId>(gen);
      r.push_word(_tree_path[v]);
      r.push_syllable(Int(1));
      r.push_inverse(_tree_path[v]);
    } else {
      EdgeId e = generator_edge(gen);
      r.push_word(_tree_path[_graph.origin(e)]);
      r.push_edge(e);
      r.push_inverse(_tree_path[_graph.terminus(e)]);
    }
    return r.take();
  }

  Presentation Presentation::scaled(double factor) const {
    Presentation p = *this;
    p._graph.scale_lengths(factor);
    return p;
  }

  Presentation Presentation::with_graph_lengths(GbsGraph const& g) const {
    Presentation p = *this;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); ++e) {
      p._graph.set_oriented_length(e, g.length(e));
    }
    return p;
  }

  ////////////////////////////////////////////////////////////////////////
  // Substitution
  ////////////////////////////////////////////////////////////////////////

  Substitution::Substitution(PresentationPtr        source,
                             PresentationPtr        target,
                             std::vector<GroupWord> images)
      : _source(std::move(source)),
        _target(std::move(target)),
        _images(std::move(images)) {
    if (_images.size() != _source->number_of_generators()) {
      throw DomainError("substitution: wrong number of generator images");
    }
    GbsGraph const& dst = _target->graph();
    for (auto& w : _images) {
      if (!is_well_formed(dst, w) || w.start != _target->base()
          || w.end(dst) != _target->base()) {
        throw DomainError("substitution: image is not a loop at the base");
      }
      w = britton_reduce(dst, w);
    }
    size_t nv = _source->graph().number_of_vertices();
    _conj.resize(nv);
    _ell_vertex.resize(nv);
    _ell_exp.resize(nv);
    for (size_t v = 0; v < nv; ++v) {
      auto [c, p] = cyclic_reduce(dst, _images[v]);
      if (!c.is_elliptic()) {
        throw DomainError("substitution: vertex generator image is not "
                          "elliptic",
                          {_source->generator_name(v)});
      }
      _conj[v]       = p;
      _ell_vertex[v] = c.vertex;
      _ell_exp[v]    = c.syllables[0];
    }
  }

  Substitution Substitution::identity(PresentationPtr p) {
    std::vector<GroupWord> images;
    for (size_t i = 0; i < p->number_of_generators(); ++i) {
      images.push_back(p->generator_loop(i));
    }
    return Substitution(p, p, std::move(images));
  }

  void Substitution::apply_into(Reducer& r, GroupWord const& loop) const {
    GbsGraph const& src = _source->graph();
    VertexId        cur = loop.start;
    auto            syl = [&](VertexId v, Int const& k) {
      if (k == 0) {
        return;
      }
      r.push_word(_conj[v]);
      r.push_syllable(_ell_exp[v] * k);
      r.push_inverse(_conj[v]);
    };
    for (size_t i = 0; i < loop.edges.size(); ++i) {
      syl(cur, loop.syllables[i]);
      EdgeId e = loop.edges[i];
      if (!_source->in_tree(e)) {
        if (GbsGraph::is_positive(e)) {
          r.push_word(_images[_source->edge_generator(e)]);
        } else {
          r.push_inverse(
              _images[_source->edge_generator(GbsGraph::reverse(e))]);
        }
      }
      cur = src.terminus(e);
    }
    syl(cur, loop.syllables.back());
  }

  GroupWord Substitution::apply(GroupWord const& loop) const {
    GbsGraph const& src = _source->graph();
    if (!is_well_formed(src, loop) || loop.start != _source->base()
        || loop.end(src) != _source->base()) {
      throw DomainError("substitution applies to loops at the base");
    }
    Reducer r(_target->graph(), _target->base());
    apply_into(r, loop);
    return r.take();
  }

  std::vector<std::string> Substitution::violations() const {
    std::vector<std::string> out;
    GbsGraph const&          src = _source->graph();
    GbsGraph const&          dst = _target->graph();
    for (EdgeId e = 0; e < static_cast<EdgeId>(src.number_of_edges());
         e += 2) {
      // t_e x_b^{label(e)} t_e^-1 x_a^{-label(reverse(e))}
      VertexId a = src.origin(e);
      VertexId b = src.terminus(e);
      Reducer  r(dst, _target->base());
      auto     power = [&](VertexId v, Int k) {
        r.push_word(_conj[v]);
        r.push_syllable(_ell_exp[v] * k);
        r.push_inverse(_conj[v]);
      };
      int gen = _source->edge_generator(e);
      if (gen >= 0) {
        r.push_word(_images[gen]);
      }
      power(b, Int(src.label(e)));
      if (gen >= 0) {
        r.push_inverse(_images[gen]);
      }
      power(a, Int(-src.label(GbsGraph::reverse(e))));
      if (!r.word().is_trivial()) {
        out.push_back("relation of edge " + src.edge_name(e));
      }
    }
    (void) dst;
    return out;
  }

  Substitution compose(Substitution const& sigma, Substitution const& tau) {
    if (sigma.target() != tau.source()
        && !same_combinatorics(*sigma.target(), *tau.source())) {
      throw DomainError("compose: presentations do not match");
    }
    std::vector<GroupWord> images;
    for (auto const& w : sigma.images()) {
      images.push_back(tau.apply(w));
    }
    return Substitution(sigma.source(), tau.target(), std::move(images));
  }

  GroupWord apply_substitution(Substitution const& s, GroupWord const& w) {
    return s.apply(w);
  }

  ////////////////////////////////////////////////////////////////////////
  // GroupoidMorphism
  ////////////////////////////////////////////////////////////////////////

  void GroupoidMorphism::set_edge_image(GbsGraph const& dst,
                                        EdgeId          e,
                                        GroupWord       w) {
    w                                   = britton_reduce(dst, w);
    edge_image[GbsGraph::reverse(e)] = inverse(dst, w);
    edge_image[e]                       = std::move(w);
  }

  void GroupoidMorphism::apply_into(GbsGraph const&  src,
                                    Reducer&         r,
                                    GroupWord const& w) const {
    r.push_syllable(w.syllables[0] * vertex_multiplier[w.start]);
    for (size_t i = 0; i < w.edges.size(); ++i) {
      EdgeId e = w.edges[i];
      r.push_word(edge_image[e]);
      r.push_syllable(w.syllables[i + 1]
                      * vertex_multiplier[src.terminus(e)]);
    }
  }

  GroupWord GroupoidMorphism::apply(GbsGraph const&  src,
                                    GbsGraph const&  dst,
                                    GroupWord const& w) const {
    Reducer r(dst, vertex_target[w.start]);
    apply_into(src, r, w);
    return r.take();
  }

  CyclicWord GroupoidMorphism::apply_cyclic(GbsGraph const&   src,
                                            GbsGraph const&   dst,
                                            CyclicWord const& c) const {
    return cyclic_reduce(dst, apply(src, dst, to_loop(src, c))).first;
  }

  std::vector<std::string>
  GroupoidMorphism::violations(GbsGraph const& src, GbsGraph const& dst) const {
    std::vector<std::string> out;
    if (vertex_target.size() != src.number_of_vertices()
        || vertex_multiplier.size() != src.number_of_vertices()
        || edge_image.size() != src.number_of_edges()) {
      out.push_back("morphism tables have the wrong size");
      return out;
    }
    for (VertexId v = 0; v < static_cast<VertexId>(src.number_of_vertices());
         ++v) {
      if (vertex_multiplier[v] == 0) {
        out.push_back("zero multiplier at vertex " + src.vertex_name(v));
      }
    }
    if (!out.empty()) {
      return out;
    }
    for (EdgeId e = 0; e < static_cast<EdgeId>(src.number_of_edges()); ++e) {
      GroupWord const& w = edge_image[e];
      VertexId         a = src.origin(e);
      VertexId         b = src.terminus(e);
      if (!is_well_formed(dst, w) || w.start != vertex_target[a]
          || w.end(dst) != vertex_target[b]) {
        out.push_back("edge image endpoints of " + src.edge_name(e));
        continue;
      }
      if (!GbsGraph::is_positive(e)) {
        continue;
      }
      // F(e) x_{w(b)}^{mu_b label(e)} F(e)^-1 = x_{w(a)}^{mu_a label(rev e)}
      Reducer r(dst, w.start);
      r.push_word(w);
      r.push_syllable(Int(vertex_multiplier[b]) * src.label(e));
      r.push_inverse(w);
      r.push_syllable(-Int(vertex_multiplier[a])
                      * src.label(GbsGraph::reverse(e)));
      if (!r.word().is_trivial()) {
        out.push_back("edge relation of " + src.edge_name(e));
      }
      if (w.edges.empty()) {
        out.push_back("degenerate edge image of " + src.edge_name(e));
      }
    }
    return out;
  }

  GroupoidMorphism morphism_from_substitution(Substitution const& s) {
    Presentation const& P   = *s.source();
    Presentation const& Q   = *s.target();
    GbsGraph const&     src = P.graph();
    GbsGraph const&     dst = Q.graph();
    GroupoidMorphism    h;
    size_t              nv = src.number_of_vertices();
    std::vector<GroupWord> frame(nv);
    h.vertex_target.resize(nv);
    h.vertex_multiplier.resize(nv);
    h.edge_image.resize(src.number_of_edges());
    for (size_t v = 0; v < nv; ++v) {
      auto [c, p] = cyclic_reduce(dst, s.image(v));
      if (!c.is_elliptic()) {
        throw DomainError("vertex generator image is not elliptic");
      }
      if (c.syllables[0] > Int(INT64_MAX / 4) || c.syllables[0] < -Int(INT64_MAX / 4)) {
        throw DomainError("vertex multiplier too large");
      }
      h.vertex_target[v]     = c.vertex;
      h.vertex_multiplier[v] = static_cast<int64_t>(c.syllables[0]);
      frame[v]               = p;
    }
    for (EdgeId e = 0; e < static_cast<EdgeId>(src.number_of_edges());
         e += 2) {
      VertexId a = src.origin(e);
      VertexId b = src.terminus(e);
      Reducer  r(dst, h.vertex_target[a]);
      r.push_inverse(frame[a]);
      int gen = P.edge_generator(e);
      if (gen >= 0) {
        r.push_word(s.image(gen));
      }
      r.push_word(frame[b]);
      h.set_edge_image(dst, e, r.take());
    }
    return h;
  }

  Substitution substitution_from_morphism(PresentationPtr         src,
                                          PresentationPtr         dst,
                                          GroupoidMorphism const& f,
                                          GroupWord const&        c) {
    std::vector<GroupWord> images;
    for (size_t i = 0; i < src->number_of_generators(); ++i) {
      Reducer r(dst->graph(), dst->base());
      r.push_word(c);
      f.apply_into(src->graph(), r, src->generator_loop(i));
      r.push_inverse(c);
      images.push_back(r.take());
    }
    return Substitution(std::move(src), std::move(dst), std::move(images));
  }

  ////////////////////////////////////////////////////////////////////////
  // MarkedGraph
  ////////////////////////////////////////////////////////////////////////

  MarkedGraph MarkedGraph::reference_point(PresentationPtr ref) {
    MarkedGraph m;
    m.reference    = ref;
    m.presentation = ref;
    m.marking      = Substitution::identity(ref);
    m.comarking    = m.marking;
    return m;
  }

  MarkedGraph MarkedGraph::twisted(Substitution const& phi,
                                   Substitution const& phi_inverse) const {
    MarkedGraph m = *this;
    m.marking     = compose(phi, marking);
    m.comarking   = compose(comarking, phi_inverse);
    return m;
  }

  MarkedGraph MarkedGraph::with_lengths(GbsGraph const& g) const {
    auto        p = std::make_shared<Presentation const>(
        presentation->with_graph_lengths(g));
    MarkedGraph m;
    m.reference    = reference;
    m.presentation = p;
    m.marking   = Substitution(reference, p, marking.images());
    m.comarking = Substitution(p, reference, comarking.images());
    return m;
  }

  std::vector<std::string> validate_marking(MarkedGraph const& m) {
    std::vector<std::string> out;
    for (auto const& v : m.marking.violations()) {
      out.push_back("marking: " + v);
    }
    for (auto const& v : m.comarking.violations()) {
      out.push_back("comarking: " + v);
    }
    Presentation const& R = *m.reference;
    Presentation const& P = *m.presentation;
    for (size_t i = 0; i < R.number_of_generators(); ++i) {
      GroupWord back = m.comarking.apply(m.marking.image(i));
      if (!(back == R.generator_loop(i))) {
        out.push_back("comarking o marking differs from identity on "
                      + R.generator_name(i));
      }
    }
    for (size_t i = 0; i < P.number_of_generators(); ++i) {
      GroupWord back = m.marking.apply(m.comarking.image(i));
      if (!(back == P.generator_loop(i))) {
        out.push_back("marking o comarking differs from identity on "
                      + P.generator_name(i));
      }
    }
    return out;
  }

  MarkedGraph normalize_volume(MarkedGraph const& m) {
    double vol = m.graph().volume();
    if (vol == 1.0) {
      return m;
    }
    GbsGraph g = m.graph();
    g.scale_lengths(1.0 / vol);
    return m.with_lengths(g);
  }

  double translation_length(MarkedGraph const& m, GroupWord const& w) {
    return cyclic_length(m.graph(), cyclic_reduce(m.graph(), w).first);
  }

  double translation_length_ref(MarkedGraph const& m, GroupWord const& ref) {
    return translation_length(m, m.from_reference(ref));
  }

  std::vector<TurnKey> axis_turns(MarkedGraph const& m, GroupWord const& w) {
    auto c = cyclic_reduce(m.graph(), w).first;
    if (c.is_elliptic()) {
      throw DomainError("axis_turns: elliptic element");
    }
    return cyclic_turns(m.graph(), c, true);
  }

  Substitution transport(MarkedGraph const& a, MarkedGraph const& b) {
    return compose(a.comarking, b.marking);
  }

  Substitution conjugate_automorphism(MarkedGraph const&  m,
                                      Substitution const& phi) {
    return compose(compose(m.comarking, phi), m.marking);
  }

}  // namespace gbs
