#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfaffine {

enum class ErrorKind {
  ZeroVector,
  DimensionMismatch,
  RankDeficient,
  Singular,
  NotUnimodular,
  NotFullRank,
  FullRank,
  InternalRankError,
  NotExpanding,
  BadQ,
  NotDivisible,
  GcdOne,
  DuplicateFrequency,
  NonConvergent,
  TooLarge,
  Malformed,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace selfaffine
