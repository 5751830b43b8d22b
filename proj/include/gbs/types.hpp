// Basic types shared by all gbs modules.

#ifndef GBS_TYPES_HPP_
#define GBS_TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gbs {

  //! Arbitrary precision exponents. Britton reduction multiplies exponents by
  //! label ratios, so fixed width is not enough.
  using Int = boost::multiprecision::cpp_int;

  using VertexId = int;
  using EdgeId   = int;

  //! Thrown on domain errors (bad input, violated preconditions). The details
  //! are the structured diagnostics the CLI reports as JSON.
  class DomainError : public std::runtime_error {
   public:
    explicit DomainError(std::string const& what,
                         std::vector<std::string> details = {})
        : std::runtime_error(what), _details(std::move(details)) {}

    std::vector<std::string> const& details() const noexcept {
      return _details;
    }

   private:
    std::vector<std::string> _details;
  };

  //! Nonnegative remainder of a modulo |m|.
  inline Int floor_mod(Int const& a, int64_t m) {
    Int mm = m < 0 ? Int(-m) : Int(m);
    Int r  = a % mm;
    if (r < 0) {
      r += mm;
    }
    return r;
  }

  inline int64_t floor_mod(int64_t a, int64_t m) {
    m         = m < 0 ? -m : m;
    int64_t r = a % m;
    return r < 0 ? r + m : r;
  }

}  // namespace gbs

#endif  // GBS_TYPES_HPP_
