#pragma once

#include <stdexcept>
#include <string>

namespace kgraph {

enum class Errc {
  missing_square,
  ambiguous_square,
  associativity_failure,
  out_of_range,
  not_composable,
  window_exceeded,
  range_mismatch,
  not_boundary,
  not_member,
  incoherent_family,
  no_witness_in_window,
  not_rank1,
  not_row_finite,
  range_outside_embedding,
  infinite_boundary,
  range_closure_violation,
  parse_error,
  invalid_argument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::missing_square: return "MissingSquare";
    case Errc::ambiguous_square: return "AmbiguousSquare";
    case Errc::associativity_failure: return "AssociativityFailure";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::not_composable: return "NotComposable";
    case Errc::window_exceeded: return "WindowExceeded";
    case Errc::range_mismatch: return "RangeMismatch";
    case Errc::not_boundary: return "NotBoundary";
    case Errc::not_member: return "NotMember";
    case Errc::incoherent_family: return "IncoherentFamily";
    case Errc::no_witness_in_window: return "NoWitnessInWindow";
    case Errc::not_rank1: return "NotRank1";
    case Errc::not_row_finite: return "NotRowFinite";
    case Errc::range_outside_embedding: return "RangeOutsideEmbedding";
    case Errc::infinite_boundary: return "InfiniteBoundary";
    case Errc::range_closure_violation: return "RangeClosureViolation";
    case Errc::parse_error: return "ParseError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace kgraph
