#include "gbs/io.hpp"

#include <fstream>
#include <map>
#include <set>

namespace gbs {

  json word_to_json(GbsGraph const& g, GroupWord const& w) {
    return json{{"base", g.vertex_name(w.start)},
                {"letters", format_word(g, w)}};
  }

  GroupWord word_from_json(GbsGraph const&         g,
                           json const&             j,
                           std::optional<VertexId> default_base) {
    if (j.is_string()) {
      GroupWord w = parse_word(g, j.get<std::string>(), default_base);
      return w;
    }
    if (j.is_array()) {
      auto toks = j.get<std::vector<std::string>>();
      if (toks.empty()) {
        return parse_word(g, toks, default_base);
      }
      return parse_word(g, toks, std::nullopt);
    }
    if (j.is_object()) {
      VertexId base = g.vertex_index(j.at("base").get<std::string>());
      return parse_word(g, j.at("letters").get<std::vector<std::string>>(),
                        base);
    }
    throw DomainError("bad word value");
  }

  json presentation_to_json(Presentation const& p) {
    GbsGraph const& g = p.graph();
    json            j;
    j["vertices"]     = json::array();
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices());
         ++v) {
      j["vertices"].push_back(g.vertex_name(v));
    }
    j["edges"] = json::array();
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); ++e) {
      j["edges"].push_back({{"id", g.edge_name(e)},
                            {"rev", g.edge_name(GbsGraph::reverse(e))},
                            {"o", g.vertex_name(g.origin(e))},
                            {"t", g.vertex_name(g.terminus(e))},
                            {"label_at_t", g.label(e)},
                            {"len", g.length(e)}});
    }
    j["spanning_tree"] = json::array();
    for (EdgeId e : p.tree_edges()) {
      j["spanning_tree"].push_back(g.edge_name(e));
    }
    j["base"] = g.vertex_name(p.base());
    return j;
  }

  namespace {
    struct RawEdge {
      std::string id, rev, o, t;
      int64_t     label;
      double      len;
    };

    std::vector<RawEdge> raw_edges(json const& j, ValidityReport& r) {
      std::vector<RawEdge> out;
      for (auto const& e : j.at("edges")) {
        try {
          out.push_back({e.at("id").get<std::string>(),
                         e.at("rev").get<std::string>(),
                         e.at("o").get<std::string>(),
                         e.at("t").get<std::string>(),
                         e.at("label_at_t").get<int64_t>(),
                         e.at("len").get<double>()});
        } catch (json::exception const& ex) {
          r.violations.push_back({"malformed edge record", ex.what()});
        }
      }
      return out;
    }
  }  // namespace

  ValidityReport validate_graph_json(json const& j) {
    ValidityReport r;
    if (!j.contains("vertices") || !j.contains("edges")) {
      r.violations.push_back({"missing vertices or edges", ""});
      return r;
    }
    std::set<std::string> vertices;
    for (auto const& v : j.at("vertices")) {
      if (!vertices.insert(v.get<std::string>()).second) {
        r.violations.push_back({"duplicate vertex", v.get<std::string>()});
      }
    }
    auto                           edges = raw_edges(j, r);
    std::map<std::string, RawEdge> by_id;
    for (auto const& e : edges) {
      if (!by_id.emplace(e.id, e).second || vertices.count(e.id) != 0) {
        r.violations.push_back({"duplicate identifier", e.id});
      }
    }
    for (auto const& e : edges) {
      if (vertices.count(e.o) == 0 || vertices.count(e.t) == 0) {
        r.violations.push_back({"unknown endpoint", e.id});
      }
      auto it = by_id.find(e.rev);
      if (it == by_id.end()) {
        r.violations.push_back({"missing reverse", e.id});
        continue;
      }
      RawEdge const& f = it->second;
      if (e.rev == e.id || f.rev != e.id) {
        r.violations.push_back({"reverse is not a fixed point free "
                                "involution",
                                e.id});
      }
      if (e.o != f.t || e.t != f.o) {
        r.violations.push_back({"incidence", e.id});
      }
      if (e.len != f.len) {
        r.violations.push_back({"asymmetric length", e.id});
      }
      if (e.label == 0) {
        r.violations.push_back({"zero label", e.id});
      }
      if (!(e.len > 0)) {
        r.violations.push_back({"nonpositive length", e.id});
      }
    }
    if (!r.valid()) {
      return r;
    }
    try {
      Presentation p = presentation_from_json(j);
      auto         q = validate_graph(p.graph());
      r.violations.insert(r.violations.end(), q.violations.begin(),
                          q.violations.end());
      r.warnings = q.warnings;
    } catch (DomainError const& ex) {
      r.violations.push_back({ex.what(), ex.details().empty()
                                             ? std::string()
                                             : ex.details()[0]});
    }
    return r;
  }

  Presentation presentation_from_json(json const& j) {
    ValidityReport r;
    auto           edges = raw_edges(j, r);
    if (!r.valid()) {
      throw DomainError("invalid graph", {r.violations[0].where});
    }
    GbsGraph g;
    for (auto const& v : j.at("vertices")) {
      g.add_vertex(v.get<std::string>());
    }
    std::map<std::string, RawEdge> by_id;
    for (auto const& e : edges) {
      by_id.emplace(e.id, e);
    }
    std::set<std::string> done;
    for (auto const& e : edges) {
      if (done.count(e.id) != 0) {
        continue;
      }
      auto it = by_id.find(e.rev);
      if (it == by_id.end() || it->second.rev != e.id || e.rev == e.id) {
        throw DomainError("reverse is not a fixed point free involution",
                          {e.id});
      }
      RawEdge const& f = it->second;
      if (e.o != f.t || e.t != f.o) {
        throw DomainError("incidence", {e.id});
      }
      EdgeId id = g.add_edge(e.id, e.rev, g.vertex_index(e.o),
                             g.vertex_index(e.t), e.label, f.label, e.len);
      g.set_oriented_length(GbsGraph::reverse(id), f.len);
      done.insert(e.id);
      done.insert(e.rev);
    }
    auto report = validate_graph(g);
    if (!report.valid()) {
      std::vector<std::string> details;
      for (auto const& v : report.violations) {
        details.push_back(v.kind + ": " + v.where);
      }
      throw DomainError("invalid graph", details);
    }
    VertexId base = j.contains("base")
                        ? g.vertex_index(j.at("base").get<std::string>())
                        : 0;
    if (!j.contains("spanning_tree")) {
      return Presentation::with_bfs_tree(std::move(g), base);
    }
    std::vector<EdgeId> tree;
    for (auto const& e : j.at("spanning_tree")) {
      EdgeId id = g.edge_index(e.get<std::string>());
      tree.push_back(GbsGraph::is_positive(id) ? id : GbsGraph::reverse(id));
    }
    return Presentation(std::move(g), base, std::move(tree));
  }

  json substitution_to_json(Substitution const& s) {
    json                j     = json::object();
    Presentation const& src   = *s.source();
    GbsGraph const&     dst_g = s.target()->graph();
    for (size_t i = 0; i < src.number_of_generators(); ++i) {
      j[src.generator_name(i)] = word_to_json(dst_g, s.image(i));
    }
    return j;
  }

  Substitution substitution_from_json(PresentationPtr source,
                                      PresentationPtr target,
                                      json const&     j) {
    std::vector<GroupWord> images(source->number_of_generators());
    std::vector<bool>      seen(images.size(), false);
    for (auto const& [name, value] : j.items()) {
      size_t gen   = source->generator_index(name);
      images[gen]  = word_from_json(target->graph(), value, target->base());
      seen[gen]    = true;
    }
    for (size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) {
        throw DomainError("substitution: missing generator image",
                          {source->generator_name(i)});
      }
    }
    Substitution s(source, target, std::move(images));
    auto         bad = s.violations();
    if (!bad.empty()) {
      throw DomainError("substitution violates relations", bad);
    }
    return s;
  }

  json marked_to_json(MarkedGraph const& m) {
    json j      = presentation_to_json(*m.presentation);
    j["schema"] = "gbs-graph.v1";
    if (m.reference != m.presentation) {
      j["reference"] = presentation_to_json(*m.reference);
      j["marking"]   = substitution_to_json(m.marking);
      j["comarking"] = substitution_to_json(m.comarking);
    } else {
      j["marking"] = substitution_to_json(m.marking);
    }
    return j;
  }

  MarkedGraph marked_from_json(json const& j) {
    auto p = std::make_shared<Presentation const>(presentation_from_json(j));
    if (!j.contains("reference")) {
      MarkedGraph m = MarkedGraph::reference_point(p);
      if (j.contains("marking")) {
        Substitution s = substitution_from_json(p, p, j.at("marking"));
        if (!(s == m.marking)) {
          throw DomainError("a self-referenced graph must carry the "
                            "identity marking");
        }
      }
      return m;
    }
    auto ref = std::make_shared<Presentation const>(
        presentation_from_json(j.at("reference")));
    MarkedGraph m;
    m.reference    = ref;
    m.presentation = p;
    m.marking      = substitution_from_json(ref, p, j.at("marking"));
    m.comarking    = substitution_from_json(p, ref, j.at("comarking"));
    auto bad       = validate_marking(m);
    if (!bad.empty()) {
      throw DomainError("inconsistent marking", bad);
    }
    return m;
  }

  json tt_to_json(TrainTrackMap const& tt) {
    GbsGraph const& g = tt.graph();
    json            j;
    j["schema"]    = "tt-map.v1";
    j["graph_ref"] = marked_to_json(tt.domain);
    j["edge_images"] = json::object();
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); e += 2) {
      j["edge_images"][g.edge_name(e)]
          = word_to_json(g, tt.map.edge_image[e]);
    }
    j["vertex_rules"] = json::object();
    auto conj         = vertex_conjugators(tt);
    j["vertex_conjugators"] = json::object();
    for (VertexId v = 0; v < static_cast<VertexId>(g.number_of_vertices());
         ++v) {
      j["vertex_rules"][g.vertex_name(v)]
          = {{"target", g.vertex_name(tt.map.vertex_target[v])},
             {"mult", tt.map.vertex_multiplier[v]}};
      j["vertex_conjugators"][g.vertex_name(v)] = word_to_json(g, conj[v]);
    }
    j["base_path"] = word_to_json(g, tt.base_path);
    j["phi"]       = substitution_to_json(tt.phi);
    return j;
  }

  TrainTrackMap tt_from_json(json const& j, std::string const& base_dir) {
    if (j.value("schema", "tt-map.v1") != "tt-map.v1") {
      throw DomainError("unexpected schema", {j.value("schema", "")});
    }
    TrainTrackMap tt;
    json const&   ref = j.at("graph_ref");
    if (ref.is_string()) {
      std::string path = ref.get<std::string>();
      if (!path.empty() && path[0] != '/') {
        path = base_dir + "/" + path;
      }
      tt.domain = marked_from_json(read_json_file(path));
    } else {
      tt.domain = marked_from_json(ref);
    }
    GbsGraph const& g = tt.graph();
    size_t          nv = g.number_of_vertices();
    tt.map.vertex_target.assign(nv, -1);
    tt.map.vertex_multiplier.assign(nv, 0);
    tt.map.edge_image.resize(g.number_of_edges());
    for (auto const& [name, rule] : j.at("vertex_rules").items()) {
      VertexId v = g.vertex_index(name);
      tt.map.vertex_target[v]
          = g.vertex_index(rule.at("target").get<std::string>());
      tt.map.vertex_multiplier[v] = rule.at("mult").get<int64_t>();
    }
    for (VertexId v = 0; v < static_cast<VertexId>(nv); ++v) {
      if (tt.map.vertex_target[v] < 0) {
        throw DomainError("missing vertex rule", {g.vertex_name(v)});
      }
    }
    std::vector<bool> seen(g.number_of_edges(), false);
    for (auto const& [name, value] : j.at("edge_images").items()) {
      EdgeId e = g.edge_index(name);
      GroupWord w = word_from_json(g, value, tt.map.vertex_target[g.origin(e)]);
      tt.map.set_edge_image(g, e, std::move(w));
      seen[e] = seen[GbsGraph::reverse(e)] = true;
    }
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.number_of_edges()); e += 2) {
      if (!seen[e]) {
        throw DomainError("missing edge image", {g.edge_name(e)});
      }
    }
    VertexId base = tt.domain.presentation->base();
    tt.base_path  = j.contains("base_path")
                        ? word_from_json(g, j.at("base_path"), base)
                        : GroupWord(base);
    tt.phi = substitution_from_json(
        tt.domain.reference, tt.domain.reference, j.at("phi"));
    auto bad = validate_map(tt);
    if (!bad.empty()) {
      throw DomainError("invalid train track map", bad);
    }
    return tt;
  }

  json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw DomainError("cannot open file", {path});
    }
    try {
      return json::parse(in);
    } catch (json::exception const& e) {
      throw DomainError("malformed JSON", {path, e.what()});
    }
  }

  void write_json_file(std::string const& path, json const& j) {
    std::ofstream out(path);
    if (!out) {
      throw DomainError("cannot write file", {path});
    }
    out << j.dump(2) << '\n';
  }

}  // namespace gbs
