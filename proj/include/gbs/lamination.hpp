// Leaf segment libraries of the attracting lamination, piece detection and
// the lamination ratio.

#ifndef GBS_LAMINATION_HPP_
#define GBS_LAMINATION_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "traintrack.hpp"

namespace gbs {

  //! Interior coding of paths: edge letters alternate with canonical turn
  //! tokens, so that equal codes mean translates of the same path in the
  //! tree. Turn tokens are numbered on first use.
  class TurnAlphabet {
   public:
    int token(TurnKey const& t);
    //! -1 for turns never seen.
    int lookup(TurnKey const& t) const;
    size_t size() const noexcept {
      return _ids.size();
    }

   private:
    std::map<TurnKey, int> _ids;
  };

  using Code = std::vector<int>;

  //! Suffix automaton over several words.
  class SuffixAutomaton {
   public:
    SuffixAutomaton();
    void add(Code const& word);
    //! For each position i, length of the longest suffix of code[0..i]
    //! that occurs in some added word.
    std::vector<size_t> matching_statistics(Code const& code) const;
    bool contains(Code const& code) const;
    size_t number_of_states() const noexcept {
      return _len.size();
    }

   private:
    std::vector<size_t>                       _len;
    std::vector<int>                          _link;
    std::vector<std::unordered_map<int, int>> _next;
  };

  struct Piece {
    size_t first_edge;  // index into the fundamental domain
    size_t edges;       // number of edges (may wrap)
    double length;
  };

  class LeafLibrary {
   public:
    //! Generations 0..k_max of [f^k(e)] for every edge. Subwords of at most
    //! cap edge letters are indexed (longer words are cut in overlapping
    //! windows).
    LeafLibrary(TrainTrackMap const& tt, size_t k_max, size_t cap = 512);

    //! Library of arbitrary paths of g (used for transported leaves).
    LeafLibrary(GbsGraph const&                            g,
                std::vector<std::vector<GroupWord>> const& generations,
                size_t                                     cap = 512);

    GbsGraph const& graph() const noexcept {
      return _graph;
    }
    size_t k_max() const noexcept {
      return _gens.size() - 1;
    }
    //! generation(k)[i] = [f^k(e_i)] for the positive edge e_i.
    std::vector<GroupWord> const& generation(size_t k) const {
      return _gens.at(k);
    }

    Code path_code(GroupWord const& w) const;
    //! Code of p unrolled periods of a cyclic word.
    Code cyclic_code(CyclicWord const& c, size_t periods) const;

    //! Whether the interior of w is a leaf segment (either orientation).
    bool contains(GroupWord const& w) const;

    //! Every generation-k_big entry contains a translate of every
    //! generation-k_small entry.
    bool quasi_periodic(size_t k_big, size_t k_small) const;

    //! Turns crossed by generations 1..k_max.
    std::vector<TurnKey> turns() const;

    //! Longest leaf segment of another library (by PF length of this graph)
    //! that is also a segment of this one.
    double longest_common_segment(LeafLibrary const& other) const;

    SuffixAutomaton const& automaton() const noexcept {
      return _sam;
    }

    //! Binary serialization keyed by a map hash.
    void save(std::string const& path, uint64_t key) const;
    static LeafLibrary load(std::string const& path,
                            GbsGraph const&    g,
                            uint64_t           key);

   private:
    void index(size_t cap);

    GbsGraph                            _graph;
    std::vector<std::vector<GroupWord>> _gens;
    mutable TurnAlphabet                _alphabet;
    SuffixAutomaton                     _sam;
    size_t                              _cap;
  };

  //! Hash of the canonical JSON of a map, used as cache key.
  uint64_t map_hash(TrainTrackMap const& tt);

  //! Disjoint leaf segments of length at least L on one fundamental domain
  //! of the axis, chosen to maximize the covered length.
  std::vector<Piece> detect_pieces(CyclicWord const&  axis,
                                   LeafLibrary const& lib,
                                   double             L);

  //! Covered fraction of the fundamental domain.
  double lamination_ratio(CyclicWord const&  axis,
                          LeafLibrary const& lib,
                          double             L);

  //! Leaves of a library of another tree pushed through a morphism into g,
  //! tightened and trimmed by trim edges at both ends.
  std::vector<std::vector<GroupWord>> transport_leaves(
      LeafLibrary const&      lib,
      GroupoidMorphism const& h,
      GbsGraph const&         g,
      size_t                  trim);

}  // namespace gbs

#endif  // GBS_LAMINATION_HPP_
