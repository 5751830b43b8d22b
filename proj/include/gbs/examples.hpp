// Bundled example corpus.

#ifndef GBS_EXAMPLES_HPP_
#define GBS_EXAMPLES_HPP_

#include <cstdint>

#include "marked.hpp"
#include "traintrack.hpp"

namespace gbs {

  //! BS(2,4) = <a, t | t a^2 t^-1 = a^4>: one vertex a, one loop t.
  PresentationPtr bs24();

  //! <u, r, s, t | r u^n r^-1 = s u^n s^-1 = t u^n t^-1 = u>.
  PresentationPtr rose(int64_t n = 2);

  struct TrainTrackExample {
    PresentationPtr reference;    // rose(n)
    Substitution    phi;          // r -> s, s -> t, t -> r s t s^-1 t^-1
    Substitution    phi_inverse;  // r -> t s r s^-1 r^-1, s -> r, t -> s
    TrainTrackMap   f;            // represents phi, PF lengths
    TrainTrackMap   f_minus;      // represents phi_inverse, PF lengths
  };

  //! The two vertex train track example and its generator-swapped inverse.
  TrainTrackExample traintrack_example(int64_t n = 2);

}  // namespace gbs

#endif  // GBS_EXAMPLES_HPP_
