// Presentations, generator substitutions, groupoid morphisms and marked
// graphs.

#ifndef GBS_MARKED_HPP_
#define GBS_MARKED_HPP_

#include <memory>
#include <string>
#include <vector>

#include "graph.hpp"
#include "turns.hpp"
#include "word.hpp"

namespace gbs {

  //! A graph together with a base vertex and a spanning tree. This fixes a
  //! generating set of the fundamental group: one generator x_v per vertex
  //! and one generator t_e per positive edge outside the tree.
  class Presentation {
   public:
    Presentation(GbsGraph graph, VertexId base, std::vector<EdgeId> tree);

    //! Spanning tree found by breadth first search from base.
    static Presentation with_bfs_tree(GbsGraph graph, VertexId base);

    GbsGraph const& graph() const noexcept {
      return _graph;
    }
    VertexId base() const noexcept {
      return _base;
    }
    bool in_tree(EdgeId e) const {
      return _tree[e];
    }
    //! Positive ids of tree edges.
    std::vector<EdgeId> tree_edges() const;

    size_t number_of_generators() const noexcept {
      return _graph.number_of_vertices() + _edge_gens.size();
    }
    //! Generator of vertex v has id v; edge generators follow.
    size_t vertex_generator(VertexId v) const {
      return static_cast<size_t>(v);
    }
    //! Generator id of a non-tree positive edge, or -1.
    int edge_generator(EdgeId e) const {
      return _gen_of_edge[e];
    }
    bool is_vertex_generator(size_t gen) const {
      return gen < _graph.number_of_vertices();
    }
    EdgeId generator_edge(size_t gen) const {
      return _edge_gens[gen - _graph.number_of_vertices()];
    }
    std::string generator_name(size_t gen) const;
    size_t      generator_index(std::string const& name) const;

    //! Tree path from base to v.
    GroupWord const& tree_path(VertexId v) const {
      return _tree_path[v];
    }

    //! The loop at base representing a generator.
    GroupWord generator_loop(size_t gen) const;

    //! Copy with edge lengths scaled.
    Presentation scaled(double factor) const;
    Presentation with_graph_lengths(GbsGraph const& g) const;

   private:
    GbsGraph               _graph;
    VertexId               _base;
    std::vector<bool>      _tree;
    std::vector<EdgeId>    _edge_gens;
    std::vector<int>       _gen_of_edge;
    std::vector<GroupWord> _tree_path;
  };

  using PresentationPtr = std::shared_ptr<Presentation const>;

  //! Same vertices, edges, labels, base and tree; lengths may differ.
  bool same_combinatorics(Presentation const& a, Presentation const& b);

  //! A homomorphism given by images of the generators of a presentation,
  //! as loops at the base of the target.
  class Substitution {
   public:
    Substitution() = default;
    Substitution(PresentationPtr        source,
                 PresentationPtr        target,
                 std::vector<GroupWord> images);

    static Substitution identity(PresentationPtr p);

    PresentationPtr const& source() const noexcept {
      return _source;
    }
    PresentationPtr const& target() const noexcept {
      return _target;
    }
    GroupWord const& image(size_t gen) const {
      return _images[gen];
    }
    std::vector<GroupWord> const& images() const noexcept {
      return _images;
    }

    //! Image of a loop at the source base, Britton reduced.
    GroupWord apply(GroupWord const& loop) const;

    //! Streams the image of a loop into r.
    void apply_into(Reducer& r, GroupWord const& loop) const;

    //! Defining relations map to the trivial word and vertex generators map
    //! to elliptic elements; returns the violated items.
    std::vector<std::string> violations() const;

    bool operator==(Substitution const& that) const {
      return _images == that._images;
    }

   private:
    PresentationPtr        _source;
    PresentationPtr        _target;
    std::vector<GroupWord> _images;
    // images of vertex generators as conj * (w, m) * conj^-1
    std::vector<GroupWord> _conj;
    std::vector<VertexId>  _ell_vertex;
    std::vector<Int>       _ell_exp;
  };

  //! tau after sigma.
  Substitution compose(Substitution const& sigma, Substitution const& tau);

  //! Applies the substitution to a word given as a loop at the base of the
  //! source.
  GroupWord apply_substitution(Substitution const& s, GroupWord const& w);

  //! A morphism of fundamental groupoids: vertex v goes to target(v) with
  //! the vertex generator raised to multiplier(v), and edge e goes to a path
  //! from target(o(e)) to target(t(e)). The image of reverse(e) is the
  //! inverse of the image of e.
  struct GroupoidMorphism {
    std::vector<VertexId>  vertex_target;
    std::vector<int64_t>   vertex_multiplier;
    std::vector<GroupWord> edge_image;  // indexed by oriented edge

    //! Sets the image of e and of its reverse.
    void set_edge_image(GbsGraph const& dst, EdgeId e, GroupWord w);

    void       apply_into(GbsGraph const&  src,
                          Reducer&         r,
                          GroupWord const& w) const;
    GroupWord  apply(GbsGraph const&  src,
                     GbsGraph const&  dst,
                     GroupWord const& w) const;
    CyclicWord apply_cyclic(GbsGraph const&   src,
                            GbsGraph const&   dst,
                            CyclicWord const& c) const;

    //! Endpoint consistency and edge relations.
    std::vector<std::string> violations(GbsGraph const& src,
                                        GbsGraph const& dst) const;
  };

  //! The equivariant map between the trees of two presentations induced by
  //! a substitution: vertex v goes to the vertex of the image of x_v.
  GroupoidMorphism morphism_from_substitution(Substitution const& s);

  //! The substitution g -> c F(g) c^-1 between two presentations, where c
  //! is a path in the target from its base to the image of the source base.
  Substitution substitution_from_morphism(PresentationPtr         src,
                                          PresentationPtr         dst,
                                          GroupoidMorphism const& f,
                                          GroupWord const&        c);

  //! A point of the deformation space: a presentation together with
  //! inverse isomorphisms from and to the reference presentation.
  struct MarkedGraph {
    PresentationPtr reference;
    PresentationPtr presentation;
    Substitution    marking;    // reference generators -> own loops
    Substitution    comarking;  // own generators -> reference loops

    GbsGraph const& graph() const {
      return presentation->graph();
    }

    //! The reference presentation itself, with identity markings.
    static MarkedGraph reference_point(PresentationPtr ref);

    //! Marked graph with the same presentation and marking precomposed
    //! with an automorphism phi of the reference (T . phi). phi_inverse
    //! must be its inverse.
    MarkedGraph twisted(Substitution const& phi,
                        Substitution const& phi_inverse) const;

    //! Reference word to own coordinates.
    GroupWord from_reference(GroupWord const& ref_word) const {
      return marking.apply(ref_word);
    }
    GroupWord to_reference(GroupWord const& own_word) const {
      return comarking.apply(own_word);
    }

    //! Same combinatorics and markings, lengths replaced.
    MarkedGraph with_lengths(GbsGraph const& g) const;
  };

  //! Problems with the markings: relations, and both composites equal to
  //! the identity.
  std::vector<std::string> validate_marking(MarkedGraph const& m);

  MarkedGraph normalize_volume(MarkedGraph const& m);

  //! Translation length of an element given in m's own coordinates.
  double translation_length(MarkedGraph const& m, GroupWord const& w);

  //! Translation length of a reference element.
  double translation_length_ref(MarkedGraph const& m, GroupWord const& ref);

  //! Turns crossed by one fundamental domain of the axis, sorted.
  std::vector<TurnKey> axis_turns(MarkedGraph const& m, GroupWord const& w);

  //! Substitution between own coordinates of a and b.
  Substitution transport(MarkedGraph const& a, MarkedGraph const& b);

  //! The automorphism phi of the reference written in m's coordinates.
  Substitution conjugate_automorphism(MarkedGraph const&  m,
                                      Substitution const& phi);

}  // namespace gbs

#endif  // GBS_MARKED_HPP_
