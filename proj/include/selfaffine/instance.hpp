#pragma once

#include <cstddef>
#include <cstdint>

#include "selfaffine/exact_linalg.hpp"

namespace selfaffine {

/// (M, v, q) describing mu_{M,D} with D = {0, 1, ..., q-1} v.
///
/// Construction validates everything the theory assumes: square M, matching
/// v, v != 0, q >= 2, and M expanding. The digit set is never materialized.
class ProblemInstance {
 public:
  ProblemInstance(IntMatrix m, IntVector v, std::int64_t q);

  const IntMatrix& matrix() const noexcept { return m_; }
  const IntVector& digit_vector() const noexcept { return v_; }
  std::int64_t q() const noexcept { return q_; }
  std::size_t dim() const noexcept { return v_.size(); }

 private:
  IntMatrix m_;
  IntVector v_;
  std::int64_t q_;
};

}  // namespace selfaffine
