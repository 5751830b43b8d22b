// Words in the fundamental groupoid of a graph of cyclic groups, Britton
// reduction, cyclic reduction and conjugacy keys.

#ifndef GBS_WORD_HPP_
#define GBS_WORD_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "types.hpp"

namespace gbs {

  //! A path word g_0 e_1 g_1 ... e_k g_k starting at a vertex. The syllable
  //! g_i is an exponent of the generator of the vertex group at the current
  //! vertex, so syllables.size() == edges.size() + 1 always holds.
  struct GroupWord {
    VertexId            start = 0;
    std::vector<EdgeId> edges;
    std::vector<Int>    syllables{Int(0)};

    GroupWord() = default;
    explicit GroupWord(VertexId v) : start(v) {}

    static GroupWord syllable(VertexId v, Int k) {
      GroupWord w(v);
      w.syllables[0] = std::move(k);
      return w;
    }

    static GroupWord letter(GbsGraph const& g, EdgeId e) {
      GroupWord w(g.origin(e));
      w.edges.push_back(e);
      w.syllables.emplace_back(0);
      return w;
    }

    size_t number_of_edges() const noexcept {
      return edges.size();
    }

    VertexId end(GbsGraph const& g) const {
      return edges.empty() ? start : g.terminus(edges.back());
    }

    bool is_trivial() const {
      return edges.empty() && syllables[0] == 0;
    }

    bool operator==(GroupWord const& that) const = default;
  };

  //! Stack-based left to right Britton reduction. Before each edge letter e
  //! the pending syllable is replaced by its remainder modulo
  //! |label(reverse(e))| and the quotient is pushed across e. A pinch
  //! e g reverse(e) is removed when label(e) divides g.
  class Reducer {
   public:
    Reducer(GbsGraph const& g, VertexId start) : _graph(&g), _word(start) {}

    VertexId current() const {
      return _word.end(*_graph);
    }

    void push_syllable(Int const& k) {
      _word.syllables.back() += k;
    }

    void push_edge(EdgeId e);

    //! Appends a word starting at the current vertex.
    void push_word(GroupWord const& w);

    //! Appends the inverse of w; w must end at the current vertex.
    void push_inverse(GroupWord const& w);

    GroupWord const& word() const noexcept {
      return _word;
    }
    GroupWord take() {
      return std::move(_word);
    }

   private:
    GbsGraph const* _graph;
    GroupWord       _word;
  };

  //! Canonical (Bass-Serre) normal form; throws on malformed adjacency.
  GroupWord britton_reduce(GbsGraph const& g, GroupWord const& w);

  GroupWord inverse(GbsGraph const& g, GroupWord const& w);

  //! Concatenation followed by reduction.
  GroupWord multiply(GbsGraph const& g, GroupWord const& a, GroupWord const& b);

  //! Checks the letter sequence is a path; does not reduce.
  bool is_well_formed(GbsGraph const& g, GroupWord const& w);

  bool is_reduced(GbsGraph const& g, GroupWord const& w);

  //! Cyclic word e_1 g_1 ... e_k g_k read cyclically; g_i sits between e_i
  //! and e_{i+1}. Elliptic classes have no edges and the single syllable is
  //! stored in syllables[0] at vertex.
  struct CyclicWord {
    VertexId            vertex = 0;
    std::vector<EdgeId> edges;
    std::vector<Int>    syllables;

    bool is_elliptic() const noexcept {
      return edges.empty();
    }
    size_t size() const noexcept {
      return edges.size();
    }
    bool operator==(CyclicWord const& that) const = default;
  };

  //! Returns (c, p) with w = p c p^-1 where c is cyclically reduced. The loop
  //! form of c starts with a zero syllable at the origin of its first edge.
  std::pair<CyclicWord, GroupWord> cyclic_reduce(GbsGraph const&  g,
                                                 GroupWord const& w);

  //! Loop word 0 e_1 g_1 ... e_k g_k based at the origin of e_1.
  GroupWord to_loop(GbsGraph const& g, CyclicWord const& c);

  //! Heuristic conjugacy key: minimum over rotations and residue shifts of
  //! the normal form read cyclically.
  std::vector<Int> conjugacy_key(GbsGraph const& g, CyclicWord const& c);

  double cyclic_length(GbsGraph const& g, CyclicWord const& c);

  //! Sum of lengths of the edge letters of a path word.
  double path_length(GbsGraph const& g, GroupWord const& w);

  //! Power of a cyclic word as a cyclic word (k >= 1).
  CyclicWord cyclic_power(GbsGraph const& g, CyclicWord const& c, unsigned k);

  ////////////////////////////////////////////////////////////////////////
  // Text syntax
  ////////////////////////////////////////////////////////////////////////

  //! Tokens are "v^k" for syllables, edge names for letters; "e^-1" is
  //! accepted for the reverse of e. The base is needed for words that do not
  //! start with a syllable or edge.
  GroupWord parse_word(GbsGraph const&                 g,
                       std::vector<std::string> const& tokens,
                       std::optional<VertexId>         base = std::nullopt);

  //! Whitespace separated tokens.
  GroupWord parse_word(GbsGraph const&         g,
                       std::string const&      text,
                       std::optional<VertexId> base = std::nullopt);

  std::vector<std::string> format_word(GbsGraph const& g, GroupWord const& w);

  std::string to_string(GbsGraph const& g, GroupWord const& w);
  std::string to_string(GbsGraph const& g, CyclicWord const& c);

}  // namespace gbs

#endif  // GBS_WORD_HPP_
