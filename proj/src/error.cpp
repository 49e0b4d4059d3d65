#include "ribbon/error.hpp"

namespace ribbon {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::FixedPointInvolution: return "FixedPointInvolution";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::EmptySides: return "EmptySides";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::LoopContraction: return "LoopContraction";
    case ErrorKind::NoSuchEdge: return "NoSuchEdge";
    case ErrorKind::BadMarking: return "BadMarking";
    case ErrorKind::InconsistentProfile: return "InconsistentProfile";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::UnforgettableMonomial: return "UnforgettableMonomial";
    case ErrorKind::NotReducible: return "NotReducible";
    case ErrorKind::WrongExponent: return "WrongExponent";
    case ErrorKind::EvenInput: return "EvenInput";
    case ErrorKind::NegativeCount: return "NegativeCount";
    case ErrorKind::ZeroPerimeter: return "ZeroPerimeter";
    case ErrorKind::VertexMark: return "VertexMark";
    case ErrorKind::HoleMark: return "HoleMark";
    case ErrorKind::OddDimension: return "OddDimension";
    case ErrorKind::ParityMismatch: return "ParityMismatch";
    case ErrorKind::NotTopCell: return "NotTopCell";
    case ErrorKind::ConeViolation: return "ConeViolation";
    case ErrorKind::UnivalentVertex: return "UnivalentVertex";
    case ErrorKind::InconsistentLabels: return "InconsistentLabels";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::FullSubset: return "FullSubset";
    case ErrorKind::DisconnectedSubset: return "DisconnectedSubset";
    case ErrorKind::NotPermissible: return "NotPermissible";
    case ErrorKind::BadMetric: return "BadMetric";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind k, const std::string& what)
    : std::runtime_error(what), kind_(k) {}

void fail(ErrorKind k, const std::string& what) { throw Error(k, what); }

}  // namespace ribbon
