// Candidates and the Lipschitz metric between marked graphs.

#ifndef GBS_LIPSCHITZ_HPP_
#define GBS_LIPSCHITZ_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "marked.hpp"

namespace gbs {

  enum class Shape {
    loop,
    figure_eight,
    barbell,
    singly_degenerate_barbell,
    doubly_degenerate_barbell
  };

  std::string to_string(Shape s);

  struct Candidate {
    Shape               shape;
    CyclicWord          word;       // cyclically reduced, own coordinates
    std::vector<int>    crossings;  // per geometric edge
    GroupWord           reference;  // loop at the reference base
    double              length;     // translation length in the own graph
  };

  struct CandidateOptions {
    //! Range [-free_bound, free_bound] for syllables that are not bounded
    //! by the edge indices (cycles with unimodular holonomy).
    int64_t free_bound = 2;
    //! Cap on the number of decorations tried per edge sequence.
    size_t max_per_sequence = 4096;
  };

  struct CandidateSet {
    std::vector<Candidate> candidates;
    bool                   truncated = false;
  };

  //! Loops, figure eights, barbells and their degenerate forms over the
  //! quotient graph, with all vertex group decorations up to conjugacy.
  CandidateSet enumerate_candidates(MarkedGraph const&      m,
                                    CandidateOptions const& opts = {});

  //! Translation length of a reference element in some tree.
  using LengthFn = std::function<double(GroupWord const&)>;

  struct LipResult {
    double    lip;
    double    d_lip;
    Candidate witness;
  };

  //! Lip = max over candidates of a of |g|_b / |g|_a and
  //! d_lip = log(Lip vol(a) / vol(b)). Throws when a candidate is elliptic
  //! in b.
  LipResult lipschitz_distance(CandidateSet const& ca,
                               double              vol_a,
                               LengthFn const&     length_b,
                               double              vol_b);

  LipResult lipschitz_distance(MarkedGraph const&      a,
                               MarkedGraph const&      b,
                               CandidateOptions const& opts = {});

  //! Random reference element: product of up to max_letters generators or
  //! inverses, vertex generators with exponents in [-3, 3].
  GroupWord random_reference_word(Presentation const& ref,
                                  std::mt19937_64&    rng,
                                  size_t              max_letters = 12);

  //! Largest |g|_b / |g|_a over n random loxodromic classes; 0 when n = 0.
  double sup_check_random(MarkedGraph const& a,
                          MarkedGraph const& b,
                          size_t             n,
                          uint64_t           seed);

}  // namespace gbs

#endif  // GBS_LIPSCHITZ_HPP_
