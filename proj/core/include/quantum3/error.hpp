#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quantum3 {

/// Category of a domain failure. The CLI prints the category name as the
/// machine-parsable prefix of its one-line error message.
enum class ErrorKind {
  kParse,          // malformed input text or JSON
  kTopology,       // triangulation is not a closed simplicial complex
  kPrecondition,   // argument outside an operation's domain
  kHypothesis,     // a closed-form theorem does not apply to the input
  kOutOfScope,     // no implemented route computes the requested value
  kNumerical,      // a numerical invariant (reality, integrality) failed
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kTopology: return "topology";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kHypothesis: return "hypothesis";
    case ErrorKind::kOutOfScope: return "out_of_scope";
    case ErrorKind::kNumerical: return "numerical";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::kPrecondition, what);
}

}  // namespace quantum3
