#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace aklv {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Dense integer matrices/vectors over the (co)character lattices.
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

// Error taxonomy, aligned with the CLI exit codes:
//   TheoremViolation -> exit 1, UnsupportedInput -> exit 2, SchemaError -> exit 3.
struct AklvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SchemaError : AklvError {
  using AklvError::AklvError;
};
struct UnsupportedInput : AklvError {
  using AklvError::AklvError;
};
struct TheoremViolation : AklvError {
  using AklvError::AklvError;
};
// Raised when an operation needs a neighbor above the graph truncation.
struct TruncationOverflow : AklvError {
  using AklvError::AklvError;
};

inline IntVec int_vec(std::initializer_list<Int> xs) {
  IntVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Int x : xs) v(i++) = x;
  return v;
}

inline bool is_zero(const IntVec& v) { return v.isZero(); }

// Lexicographic compare, used everywhere a deterministic order is needed.
inline int lex_cmp(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i) ? -1 : 1;
  }
  return 0;
}

inline int lex_cmp(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
  if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j) ? -1 : 1;
  return 0;
}

}  // namespace aklv
