#include "gbs/examples.hpp"

#include "gbs/io.hpp"

namespace gbs {

  PresentationPtr bs24() {
    GbsGraph g;
    VertexId a = g.add_vertex("a");
    g.add_edge("t", "t'", a, a, 2, 4, 1.0);
    return std::make_shared<Presentation const>(
        Presentation::with_bfs_tree(std::move(g), a));
  }

  PresentationPtr rose(int64_t n) {
    GbsGraph g;
    VertexId u = g.add_vertex("u");
    g.add_edge("r", "r'", u, u, n, 1, 1.0);
    g.add_edge("s", "s'", u, u, n, 1, 1.0);
    g.add_edge("t", "t'", u, u, n, 1, 1.0);
    return std::make_shared<Presentation const>(
        Presentation::with_bfs_tree(std::move(g), u));
  }

  namespace {
    PresentationPtr example_tree(int64_t n) {
      GbsGraph g;
      VertexId v = g.add_vertex("v");
      VertexId x = g.add_vertex("x");
      g.add_edge("ea", "ea'", v, v, n, 1, 1.0);
      g.add_edge("eb", "eb'", v, x, n, 1, 1.0);
      EdgeId ee = g.add_edge("ee", "ee'", v, x, 1, 1, 1.0);
      g.add_edge("ef", "ef'", v, x, 1, n, 1.0);
      return std::make_shared<Presentation const>(
          Presentation(std::move(g), v, {ee}));
    }

    GroupoidMorphism example_map(GbsGraph const& g, int64_t n) {
      GroupoidMorphism f;
      f.vertex_target     = {g.vertex_index("v"), g.vertex_index("x")};
      f.vertex_multiplier = {1, n};
      f.edge_image.resize(g.number_of_edges());
      auto set = [&](char const* e, char const* w) {
        f.set_edge_image(g, g.edge_index(e), parse_word(g, std::string(w)));
      };
      set("ea", "ee ef'");
      set("eb", "ea ee ef' eb ee' ef");
      set("ee", "eb");
      set("ef", "ee");
      return f;
    }

    TrainTrackMap checked(TrainTrackMap tt) {
      auto bad = validate_map(tt);
      if (!bad.empty()) {
        throw DomainError("bundled train track map is invalid", bad);
      }
      return with_pf_metric(tt, pf_metric(tt));
    }
  }  // namespace

  TrainTrackExample traintrack_example(int64_t n) {
    TrainTrackExample ex;
    ex.reference = rose(n);
    PresentationPtr const& R = ex.reference;
    ex.phi = substitution_from_json(
        R, R,
        json{{"u", "u^1"}, {"r", "s"}, {"s", "t"}, {"t", "r s t s' t'"}});
    ex.phi_inverse = substitution_from_json(
        R, R,
        json{{"u", "u^1"}, {"r", "t s r s' r'"}, {"s", "r"}, {"t", "s"}});
    Substitution swap = substitution_from_json(
        R, R, json{{"u", "u^1"}, {"r", "t"}, {"s", "s"}, {"t", "r"}});

    PresentationPtr T = example_tree(n);
    MarkedGraph     m;
    m.reference    = R;
    m.presentation = T;
    m.marking      = substitution_from_json(
        R, T,
        json{{"u", "v^1"}, {"r", "ea"}, {"s", "ee ef'"}, {"t", "eb ee'"}});
    m.comarking = substitution_from_json(
        T, R,
        json{{"v", "u^1"},
             {"x", "u^1"},
             {"ea", "r"},
             {"eb", "t"},
             {"ef", "s'"}});

    GbsGraph const& g = T->graph();
    ex.f.domain       = m;
    ex.f.map          = example_map(g, n);
    ex.f.base_path    = GroupWord(T->base());
    ex.f.phi          = ex.phi;
    ex.f              = checked(ex.f);

    MarkedGraph mm;
    mm.reference    = R;
    mm.presentation = T;
    mm.marking      = compose(swap, m.marking);
    mm.comarking    = compose(m.comarking, swap);
    ex.f_minus.domain    = mm;
    ex.f_minus.map       = ex.f.map;
    ex.f_minus.base_path = GroupWord(T->base());
    ex.f_minus.phi       = ex.phi_inverse;
    ex.f_minus           = checked(ex.f_minus);
    return ex;
  }

}  // namespace gbs
