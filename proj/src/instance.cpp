#include "selfaffine/instance.hpp"

#include <string>
#include <utility>

namespace selfaffine {

ProblemInstance::ProblemInstance(IntMatrix m, IntVector v, std::int64_t q)
    : m_(std::move(m)), v_(std::move(v)), q_(q) {
  if (!m_.is_square() || m_.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, "matrix must be square and nonempty");
  if (v_.size() != m_.rows())
    throw Error(ErrorKind::DimensionMismatch,
                "v has length " + std::to_string(v_.size()) +
                    " but the matrix is " + std::to_string(m_.rows()) + "x" +
                    std::to_string(m_.rows()));
  if (is_zero(v_)) throw Error(ErrorKind::ZeroVector, "digit vector v is zero");
  if (q_ < 2)
    throw Error(ErrorKind::BadQ, "q must be at least 2 (got " +
                                     std::to_string(q_) + ")");
  if (!is_expanding(m_))
    throw Error(ErrorKind::NotExpanding, "matrix is not expanding");
}

}  // namespace selfaffine
