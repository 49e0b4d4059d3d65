#pragma once

#include <stdexcept>
#include <string>

namespace ribbon {

enum class ErrorKind {
  FixedPointInvolution,
  DomainMismatch,
  EmptySides,
  Disconnected,
  LoopContraction,
  NoSuchEdge,
  BadMarking,
  InconsistentProfile,
  TooLarge,
  UnforgettableMonomial,
  NotReducible,
  WrongExponent,
  EvenInput,
  NegativeCount,
  ZeroPerimeter,
  VertexMark,
  HoleMark,
  OddDimension,
  ParityMismatch,
  NotTopCell,
  ConeViolation,
  UnivalentVertex,
  InconsistentLabels,
  EmptySubset,
  FullSubset,
  DisconnectedSubset,
  NotPermissible,
  BadMetric,
  ParseError,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind k, const std::string& what);
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind k, const std::string& what);

}  // namespace ribbon
