// JSON serialization: gbs-graph.v1 and word syntax.

#ifndef GBS_IO_HPP_
#define GBS_IO_HPP_

#include <string>

#include "json.hpp"

#include "graph.hpp"
#include "marked.hpp"
#include "traintrack.hpp"
#include "word.hpp"

namespace gbs {

  using json = nlohmann::json;

  //! {"base": v, "letters": [...]}; the base is always written.
  json word_to_json(GbsGraph const& g, GroupWord const& w);

  //! Accepts the object form, a bare token array or a whitespace separated
  //! string. default_base is used when the base cannot be inferred.
  GroupWord word_from_json(GbsGraph const&         g,
                           json const&             j,
                           std::optional<VertexId> default_base = {});

  //! Graph part: vertices, edges, spanning_tree, base.
  json presentation_to_json(Presentation const& p);

  //! Checks the raw edge table (involution, incidence, labels, lengths)
  //! before building anything.
  ValidityReport validate_graph_json(json const& j);

  //! Throws DomainError listing every violation.
  Presentation presentation_from_json(json const& j);

  //! Schema gbs-graph.v1. The reference presentation is embedded under
  //! "reference" unless m is its own reference.
  json marked_to_json(MarkedGraph const& m);

  MarkedGraph marked_from_json(json const& j);

  //! Generator substitution as {gen: word}.
  json substitution_to_json(Substitution const& s);

  Substitution substitution_from_json(PresentationPtr source,
                                      PresentationPtr target,
                                      json const&     j);

  //! Schema tt-map.v1. graph_ref holds the embedded domain; conjugators
  //! are written for information only.
  json tt_to_json(TrainTrackMap const& tt);

  //! graph_ref may be an embedded gbs-graph.v1 object or a file name
  //! resolved against base_dir. Throws with the validation report.
  TrainTrackMap tt_from_json(json const& j, std::string const& base_dir = ".");

  json read_json_file(std::string const& path);
  void write_json_file(std::string const& path, json const& j);

}  // namespace gbs

#endif  // GBS_IO_HPP_
