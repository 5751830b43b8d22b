// gbs: command line front end.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gbs/axis.hpp"
#include "gbs/examples.hpp"
#include "gbs/io.hpp"
#include "gbs/lamination.hpp"
#include "gbs/lipschitz.hpp"
#include "gbs/moves.hpp"
#include "gbs/whitehead.hpp"

using namespace gbs;
namespace fs = std::filesystem;

namespace {

  std::string dir_of(std::string const& path) {
    auto p = fs::path(path).parent_path();
    return p.empty() ? "." : p.string();
  }

  TrainTrackMap load_tt(std::string const& path) {
    return tt_from_json(read_json_file(path), dir_of(path));
  }

  void emit(json const& j, std::string const& out) {
    if (out.empty() || out == "-") {
      std::cout << j.dump(2) << "\n";
    } else {
      write_json_file(out, j);
    }
  }

  json report(std::string const& kind, json body) {
    body["schema"] = "report.v1";
    body["kind"]   = kind;
    return body;
  }

  json turns_json(GbsGraph const& g, std::vector<TurnKey> const& ts) {
    json a = json::array();
    for (auto const& t : ts) {
      a.push_back({g.vertex_name(t.vertex), to_string(g, t.first),
                   to_string(g, t.second)});
    }
    return a;
  }

  // Words given on the command line are own coordinates unless --reference
  // is set.
  GroupWord own_word(MarkedGraph const& m, std::string const& text, bool reference) {
    if (reference) {
      return m.from_reference(
          parse_word(m.reference->graph(), text, m.reference->base()));
    }
    return parse_word(m.graph(), text, m.presentation->base());
  }

  CyclicWord own_cyclic(MarkedGraph const& m, std::string const& text, bool reference) {
    return cyclic_reduce(m.graph(), own_word(m, text, reference)).first;
  }

  AxisConfig axis_config(json const& c) {
    AxisConfig cfg;
    if (c.contains("epsilon0")) {
      cfg.epsilon0 = c["epsilon0"].get<double>();
    }
    cfg.grid_per_step = c.value("grid_per_step", cfg.grid_per_step);
    cfg.k_min         = c.value("k_min", cfg.k_min);
    cfg.k_max         = c.value("k_max", cfg.k_max);
    cfg.samples       = c.value("samples", cfg.samples);
    cfg.seed          = c.value("seed", cfg.seed);
    cfg.max_edges     = c.value("max_edges", cfg.max_edges);
    cfg.workers       = c.value("workers", cfg.workers);
    return cfg;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graphs of cyclic groups, Lipschitz metric and train track axes"};
  app.require_subcommand(1);
  app.fallthrough();
  uint64_t    seed    = 1;
  unsigned    workers = 0;
  std::string out;
  app.add_option("--seed", seed, "random seed");
  app.add_option("--workers", workers, "worker threads (0: all cores)");
  app.add_option("-o,--out", out, "output file (default stdout)");

  std::function<void()> action;

  // graph
  auto*       graph_cmd = app.add_subcommand("graph", "validate a gbs-graph.v1 file");
  std::string graph_file;
  graph_cmd->add_option("file", graph_file)->required();
  graph_cmd->callback([&] {
    action = [&] {
      json           j   = read_json_file(graph_file);
      ValidityReport rep = validate_graph_json(j);
      json           r;
      r["valid"] = rep.valid();
      r["violations"] = json::array();
      for (auto const& v : rep.violations) {
        r["violations"].push_back({{"kind", v.kind}, {"where", v.where}});
      }
      r["warnings"] = rep.warnings;
      if (rep.valid()) {
        MarkedGraph     m  = marked_from_json(j);
        GbsGraph const& g  = m.graph();
        GraphStats      st = graph_stats(g);
        r["vertices"]         = g.number_of_vertices();
        r["edges"]            = g.number_of_unoriented_edges();
        r["betti"]            = betti_number(g);
        r["volume"]           = st.volume;
        r["big_vertex_count"] = st.big_vertex_count;
        r["collapsible"]      = json::array();
        for (EdgeId e : st.collapsible_edges) {
          r["collapsible"].push_back(g.edge_name(e));
        }
        r["marking_violations"] = validate_marking(m);
      }
      emit(report("graph", r), out);
      if (!rep.valid()) {
        throw DomainError("invalid graph");
      }
    };
  });

  // word
  auto*       word_cmd = app.add_subcommand("word", "normal form and translation length");
  std::string word_file, word_text;
  bool        word_ref = false;
  word_cmd->add_option("file", word_file)->required();
  word_cmd->add_option("word", word_text)->required();
  word_cmd->add_flag("--reference", word_ref, "word is in reference coordinates");
  word_cmd->callback([&] {
    action = [&] {
      MarkedGraph     m = marked_from_json(read_json_file(word_file));
      GbsGraph const& g = m.graph();
      GroupWord       w = britton_reduce(g, own_word(m, word_text, word_ref));
      auto [c, p]       = cyclic_reduce(g, w);
      json r;
      r["normal_form"] = word_to_json(g, w);
      r["cyclic"]      = to_string(g, c);
      r["conjugator"]  = word_to_json(g, p);
      r["elliptic"]    = c.is_elliptic();
      r["length"]      = cyclic_length(g, c);
      emit(report("word", r), out);
    };
  });

  // move
  auto*       move_cmd = app.add_subcommand("move", "elementary deformations");
  move_cmd->require_subcommand(1);
  std::string move_file, move_edge, move_vertex;
  double      l1 = 0.5, l2 = 0.5, elen = 0.25;
  int64_t     dlabel = 1;
  size_t      steps  = 5;
  std::vector<std::string> dirs;
  auto load_move = [&] { return marked_from_json(read_json_file(move_file)); };
  auto* sub_cmd = move_cmd->add_subcommand("subdivide", "split an edge");
  sub_cmd->add_option("file", move_file)->required();
  sub_cmd->add_option("--edge", move_edge)->required();
  sub_cmd->add_option("--l1", l1);
  sub_cmd->add_option("--l2", l2);
  sub_cmd->callback([&] {
    action = [&] {
      MarkedGraph m = load_move();
      emit(marked_to_json(subdivide(m, m.graph().edge_index(move_edge), l1, l2)), out);
    };
  });
  auto* col_cmd = move_cmd->add_subcommand("collapse", "collapse an edge");
  col_cmd->add_option("file", move_file)->required();
  col_cmd->add_option("--edge", move_edge)->required();
  col_cmd->callback([&] {
    action = [&] {
      MarkedGraph m = load_move();
      emit(marked_to_json(collapse(m, m.graph().edge_index(move_edge))), out);
    };
  });
  auto* exp_cmd = move_cmd->add_subcommand("expand", "pull ends to a new vertex");
  exp_cmd->add_option("file", move_file)->required();
  exp_cmd->add_option("--vertex", move_vertex)->required();
  exp_cmd->add_option("--dirs", dirs, "oriented edges leaving the vertex")->required();
  exp_cmd->add_option("--label", dlabel);
  exp_cmd->add_option("--length", elen);
  exp_cmd->callback([&] {
    action = [&] {
      MarkedGraph         m = load_move();
      std::vector<EdgeId> ds;
      for (auto const& d : dirs) {
        ds.push_back(m.graph().edge_index(d));
      }
      emit(marked_to_json(
               expand(m, m.graph().vertex_index(move_vertex), ds, dlabel, elen)),
           out);
    };
  });
  auto* rnd_cmd = move_cmd->add_subcommand("random", "seeded random deformation");
  rnd_cmd->add_option("file", move_file)->required();
  rnd_cmd->add_option("--steps", steps);
  rnd_cmd->callback([&] {
    action = [&] { emit(marked_to_json(random_deform(load_move(), steps, seed)), out); };
  });

  // dist
  auto*       dist_cmd = app.add_subcommand("dist", "Lipschitz distance d(A, B)");
  std::string dist_a, dist_b, dist_report;
  int64_t     free_bound = 2;
  dist_cmd->add_option("a", dist_a)->required();
  dist_cmd->add_option("b", dist_b)->required();
  dist_cmd->add_option("--report", dist_report, "witness");
  dist_cmd->add_option("--free-bound", free_bound);
  dist_cmd->callback([&] {
    action = [&] {
      MarkedGraph a = marked_from_json(read_json_file(dist_a));
      MarkedGraph b = marked_from_json(read_json_file(dist_b));
      LipResult   l = lipschitz_distance(a, b, CandidateOptions{free_bound, 4096});
      json        r{{"lip", l.lip}, {"d_lip", l.d_lip}};
      if (dist_report == "witness") {
        r["witness_word"]  = word_to_json(a.reference->graph(), l.witness.reference);
        r["witness_cycle"] = to_string(a.graph(), l.witness.word);
        r["witness_shape"] = to_string(l.witness.shape);
      }
      emit(report("dist", r), out);
    };
  });

  // tt
  auto*       tt_cmd = app.add_subcommand("tt", "train track maps");
  tt_cmd->require_subcommand(1);
  std::string tt_file, tt_word;
  size_t      tt_n = 1;
  auto*       ttc  = tt_cmd->add_subcommand("check", "validate, PF metric, gates");
  ttc->add_option("file", tt_file)->required();
  ttc->callback([&] {
    action = [&] {
      TrainTrackMap tt   = load_tt(tt_file);
      PfResult      pf   = pf_metric(tt);
      GbsGraph const& g  = tt.graph();
      GateStructure gs(tt);
      LegalityReport lr = gates_and_legality(tt, gs);
      json           r;
      r["verdict"]   = lr.train_track ? "train track" : "not a train track";
      r["lambda"]    = pf.lambda;
      r["primitive"] = is_primitive(pf.matrix);
      r["residual"]  = pf.residual;
      r["matrix"]    = pf.matrix;
      r["lengths"]   = json::object();
      for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); e += 2) {
        r["lengths"][g.edge_name(e)] = pf.lengths[static_cast<size_t>(e / 2)];
      }
      r["gates"] = json::object();
      for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices()); ++v) {
        json gv = json::array();
        for (auto const& gate : gs.gates_at(v)) {
          json a = json::array();
          for (auto const& d : gate) {
            a.push_back(to_string(g, d));
          }
          gv.push_back(a);
        }
        r["gates"][g.vertex_name(v)] = gv;
      }
      r["closure"]            = turns_json(g, lr.closure);
      r["illegal_in_closure"] = turns_json(g, lr.illegal_in_closure);
      emit(report("tt-check", r), out);
      std::cerr << r["verdict"].get<std::string>() << ", lambda = " << pf.lambda << "\n";
    };
  });
  auto* ttk = tt_cmd->add_subcommand("constants", "bcc, c_f, kappa");
  ttk->add_option("file", tt_file)->required();
  ttk->callback([&] {
    action = [&] {
      TrainTrackMap tt = load_tt(tt_file);
      GateStructure gs(tt);
      Constants     c = cancellation_constants(tt, gs, pf_metric(tt).lambda);
      emit(report("tt-constants", {{"lambda", c.lambda},
                                   {"bcc", c.bcc},
                                   {"c_f", c.c_f},
                                   {"kappa", c.kappa},
                                   {"depth", c.depth}}),
           out);
    };
  });
  bool  tt_ref = false;
  auto* tti    = tt_cmd->add_subcommand("iterate", "tightened images of a cyclic word");
  tti->add_option("file", tt_file)->required();
  tti->add_option("--word", tt_word)->required();
  tti->add_option("-n", tt_n);
  tti->add_flag("--reference", tt_ref);
  tti->callback([&] {
    action = [&] {
      TrainTrackMap   tt = load_tt(tt_file);
      GbsGraph const& g  = tt.graph();
      GateStructure   gs(tt);
      CyclicWord      c  = own_cyclic(tt.domain, tt_word, tt_ref);
      json            rows = json::array();
      for (size_t i = 0; i <= tt_n; ++i) {
        rows.push_back({{"n", i},
                        {"edges", c.size()},
                        {"length", cyclic_length(g, c)},
                        {"illegal_turns", illegal_turn_count(g, gs, c)}});
        if (i < tt_n) {
          c = tt.image(c);
        }
      }
      emit(report("tt-iterate", {{"rows", rows}, {"final", to_string(g, c)}}), out);
    };
  });

  // lam
  auto*       lam_cmd = app.add_subcommand("lam", "leaf libraries");
  lam_cmd->require_subcommand(1);
  std::string lam_file, lam_word, lam_cache;
  size_t      lam_k = 8;
  double      lam_l = 0;
  bool        lam_ref = false;
  auto library = [&](TrainTrackMap const& tt) {
    uint64_t key = map_hash(tt);
    if (!lam_cache.empty() && fs::exists(lam_cache)) {
      try {
        return LeafLibrary::load(lam_cache, tt.graph(), key);
      } catch (DomainError const&) {
      }
    }
    LeafLibrary lib(tt, lam_k);
    if (!lam_cache.empty()) {
      lib.save(lam_cache, key);
    }
    return lib;
  };
  auto* lb = lam_cmd->add_subcommand("build", "build and cache the library");
  lb->add_option("file", lam_file)->required();
  lb->add_option("-k", lam_k);
  lb->add_option("--cache", lam_cache);
  lb->callback([&] {
    action = [&] {
      TrainTrackMap tt  = load_tt(lam_file);
      LeafLibrary   lib = library(tt);
      json          gens = json::array();
      for (size_t k = 0; k <= lib.k_max(); ++k) {
        size_t n = 0;
        for (auto const& w : lib.generation(k)) {
          n = std::max(n, w.number_of_edges());
        }
        gens.push_back(n);
      }
      emit(report("lam-build",
                  {{"k_max", lib.k_max()},
                   {"states", lib.automaton().number_of_states()},
                   {"longest_leaf_by_generation", gens},
                   {"quasi_periodic", lib.quasi_periodic(lib.k_max(), 1)},
                   {"turns", turns_json(tt.graph(), lib.turns())},
                   {"key", std::to_string(map_hash(tt))}}),
           out);
    };
  });
  for (std::string verb : {"pieces", "ratio"}) {
    auto* lc = lam_cmd->add_subcommand(verb, verb == "pieces" ? "leaf segments on an axis"
                                                              : "lamination ratio of an axis");
    lc->add_option("file", lam_file)->required();
    lc->add_option("--word", lam_word)->required();
    lc->add_option("-L", lam_l, "minimal piece length");
    lc->add_option("-k", lam_k);
    lc->add_option("--cache", lam_cache);
    lc->add_flag("--reference", lam_ref);
    lc->callback([&, verb] {
      action = [&, verb] {
        TrainTrackMap   tt  = load_tt(lam_file);
        GbsGraph const& g   = tt.graph();
        LeafLibrary     lib = library(tt);
        CyclicWord      c   = own_cyclic(tt.domain, lam_word, lam_ref);
        if (verb == "ratio") {
          emit(report("lam-ratio", {{"ratio", lamination_ratio(c, lib, lam_l)}}), out);
          return;
        }
        json ps = json::array();
        for (auto const& p : detect_pieces(c, lib, lam_l)) {
          ps.push_back({{"first_edge", p.first_edge}, {"edges", p.edges}, {"length", p.length}});
        }
        emit(report("lam-pieces", {{"axis_length", cyclic_length(g, c)}, {"pieces", ps}}), out);
      };
    });
  }

  // wh
  auto*                    wh_cmd = app.add_subcommand("wh", "Whitehead graphs");
  wh_cmd->require_subcommand(1);
  std::string              wh_file, wh_vertex;
  std::vector<std::string> wh_words;
  bool                     wh_ref = false;
  auto* whg = wh_cmd->add_subcommand("graph", "Whitehead graph of cyclic words (DOT)");
  whg->add_option("file", wh_file)->required();
  whg->add_option("--word", wh_words)->required();
  whg->add_option("--vertex", wh_vertex);
  whg->add_flag("--reference", wh_ref);
  whg->callback([&] {
    action = [&] {
      MarkedGraph             m = marked_from_json(read_json_file(wh_file));
      GbsGraph const&         g = m.graph();
      std::vector<CyclicWord> lines;
      for (auto const& w : wh_words) {
        lines.push_back(own_cyclic(m, w, wh_ref));
      }
      std::ostringstream os;
      for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices()); ++v) {
        if (!wh_vertex.empty() && g.vertex_name(v) != wh_vertex) {
          continue;
        }
        WhiteheadGraph w  = whitehead_graph(g, lines, v);
        CutAnalysis    ca = cut_analysis(w);
        os << "// vertex " << g.vertex_name(v) << ": "
           << (ca.connected ? "connected" : "disconnected") << ", "
           << ca.cut_vertices.size() << " cut vertices\n"
           << to_dot(g, w);
      }
      if (out.empty() || out == "-") {
        std::cout << os.str();
      } else {
        std::ofstream(out) << os.str();
      }
    };
  });
  auto* whc = wh_cmd->add_subcommand("certify", "certificate that words are not simple");
  whc->add_option("file", wh_file)->required();
  whc->add_option("--word", wh_words)->required();
  whc->add_flag("--reference", wh_ref);
  whc->callback([&] {
    action = [&] {
      MarkedGraph            m = marked_from_json(read_json_file(wh_file));
      std::vector<GroupWord> ws;
      for (auto const& w : wh_words) {
        ws.push_back(own_word(m, w, wh_ref));
      }
      auto cert = nonsimplicity_certificate(m, ws);
      json r{{"certified", cert.has_value()}};
      if (cert) {
        json dots = json::array();
        for (auto const& w : cert->graphs) {
          dots.push_back(to_dot(m.graph(), w));
        }
        r["graphs"] = dots;
      }
      emit(report("wh-certify", r), out);
    };
  });

  // axis
  auto*       axis_cmd = app.add_subcommand("axis", "projection to the axis of phi");
  axis_cmd->require_subcommand(1);
  std::string axis_config_file;
  auto load_axis = [&](json& cfgj) {
    cfgj         = read_json_file(axis_config_file);
    std::string d = dir_of(axis_config_file);
    auto        resolve = [&](std::string p) {
      return (p.empty() || p[0] == '/') ? p : d + "/" + p;
    };
    AxisConfig cfg = axis_config(cfgj);
    if (!cfgj.contains("seed")) {
      cfg.seed = seed;
    }
    if (!cfgj.contains("workers")) {
      cfg.workers = workers;
    }
    Axis ax(load_tt(resolve(cfgj.at("map"))), load_tt(resolve(cfgj.at("inverse"))), cfg);
    if (!cfg.epsilon0) {
      auto e = ax.estimate_epsilon0(ax.sample_elements(cfgj.value("epsilon_samples", 200), cfg.seed));
      if (e.epsilon0 <= 0) {
        throw DomainError("epsilon0 estimate is zero");
      }
      ax.set_epsilon0(e.epsilon0);
    }
    if (cfgj.contains("tree")) {
      cfgj["tree"] = resolve(cfgj["tree"]);
    }
    return ax;
  };
  auto* axp = axis_cmd->add_subcommand("project", "projection of a tree");
  axp->add_option("--config", axis_config_file)->required();
  axp->callback([&] {
    action = [&] {
      json             cfgj;
      Axis             ax = load_axis(cfgj);
      MarkedGraph      x  = marked_from_json(read_json_file(cfgj.at("tree")));
      ProjectionResult p  = ax.project_tree(x);
      emit(report("axis-project", {{"t", p.t},
                                   {"distance", p.distance},
                                   {"minimizers", p.minimizers},
                                   {"diameter", p.diameter},
                                   {"epsilon0", ax.epsilon0()}}),
           out);
    };
  });
  auto* axt = axis_cmd->add_subcommand("theta", "t0 and Theta of elements");
  axt->add_option("--config", axis_config_file)->required();
  axt->callback([&] {
    action = [&] {
      json                   cfgj;
      Axis                   ax = load_axis(cfgj);
      PresentationPtr        ref = ax.f().domain.reference;
      std::vector<GroupWord> ws;
      if (cfgj.contains("words")) {
        for (auto const& w : cfgj["words"]) {
          ws.push_back(word_from_json(ref->graph(), w, ref->base()));
        }
      } else {
        ws = ax.sample_elements(ax.config().samples, ax.config().seed);
      }
      std::ostringstream csv;
      csv << "word,k_plus,k_minus,t0,theta_min,theta_max,min_length\n";
      for (auto const& w : ws) {
        Orbit             o  = ax.orbit(w);
        LegalityExponents le = ax.legality_exponents(o);
        ThetaResult       th = ax.theta_of_element(o);
        csv << '"' << to_string(ref->graph(), w) << "\"," << le.k_plus << ','
            << le.k_minus << ',' << le.t0 << ',' << th.minimizers.front() << ','
            << th.minimizers.back() << ',' << th.min_length << "\n";
      }
      if (out.empty() || out == "-") {
        std::cout << csv.str();
      } else {
        std::ofstream(out) << csv.str();
      }
    };
  });
  auto* axe = axis_cmd->add_subcommand("experiment", "contraction experiment");
  axe->add_option("--config", axis_config_file)->required();
  axe->callback([&] {
    action = [&] {
      json              cfgj;
      Axis              ax  = load_axis(cfgj);
      ContractionReport rep = ax.contraction_experiment(cfgj.value("balls", 200),
                                                        cfgj.value("per_ball", 4));
      std::ostringstream csv;
      csv << "ball,radius,axis_distance,t_center,points,diameter\n";
      for (auto const& b : rep.balls) {
        csv << b.ball << ',' << b.radius << ',' << b.axis_distance << ','
            << b.t_center << ',' << b.points << ',' << b.diameter << "\n";
      }
      if (out.empty() || out == "-") {
        std::cout << csv.str();
      } else {
        std::ofstream(out) << csv.str();
      }
      json summary = report("axis-experiment",
                            {{"balls", rep.balls.size()},
                             {"c1", rep.c1},
                             {"c2", rep.c2},
                             {"sandwich_c", rep.sandwich.c},
                             {"sandwich_log_residuals", rep.sandwich.log_residuals},
                             {"epsilon0", rep.epsilon0}});
      if (!out.empty() && out != "-") {
        write_json_file(out + ".json", summary);
      } else {
        std::cerr << summary.dump(2) << "\n";
      }
    };
  });

  // examples
  auto*       ex_cmd = app.add_subcommand("examples", "write the bundled corpus");
  std::string ex_name = "all", ex_dir = ".";
  ex_cmd->add_option("--name", ex_name)
      ->check(CLI::IsMember({"all", "bs24", "rose", "traintrack"}));
  ex_cmd->add_option("--dir", ex_dir);
  ex_cmd->callback([&] {
    action = [&] {
      fs::create_directories(ex_dir);
      auto put = [&](std::string const& f, json const& j) {
        write_json_file(ex_dir + "/" + f, j);
        std::cout << ex_dir + "/" + f << "\n";
      };
      if (ex_name == "all" || ex_name == "bs24") {
        put("bs24.json", marked_to_json(MarkedGraph::reference_point(bs24())));
      }
      if (ex_name == "all" || ex_name == "rose") {
        put("rose.json", marked_to_json(MarkedGraph::reference_point(rose())));
      }
      if (ex_name == "all" || ex_name == "traintrack") {
        TrainTrackExample ex = traintrack_example();
        put("traintrack-ex.json", tt_to_json(ex.f));
        put("traintrack-ex-inv.json", tt_to_json(ex.f_minus));
        put("traintrack-ex-tree.json", marked_to_json(ex.f.domain));
        put("axis.json", {{"map", "traintrack-ex.json"},
                          {"inverse", "traintrack-ex-inv.json"},
                          {"tree", "traintrack-ex-tree.json"},
                          {"balls", 200},
                          {"per_ball", 4},
                          {"samples", 50},
                          {"seed", 1}});
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : 2;
  }
  try {
    action();
  } catch (DomainError const& e) {
    std::cerr << json{{"error", e.what()}, {"details", e.details()}}.dump(2) << "\n";
    return 1;
  } catch (std::exception const& e) {
    std::cerr << json{{"error", e.what()}}.dump(2) << "\n";
    return 1;
  }
  return 0;
}
